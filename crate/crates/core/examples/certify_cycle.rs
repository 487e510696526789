//! Certify cycles from itineraries, from a scouted orbit, and write one
//! certificate as JSON.

use brigade::cycle::{certificate_to_json, certify_cycle, find_certified_cycle, CellItinerary};
use brigade::three_worker::{AsymptoticBehavior, Cell, Point, ThreeWorkerParams};
use brigade::q;

fn main() -> brigade::Result<()> {
    let p = ThreeWorkerParams::new(q(2, 1), q(4, 3))?;
    for cells in [vec![Cell::C1, Cell::C2, Cell::C4], vec![Cell::C3, Cell::C2, Cell::C4], vec![Cell::C4]] {
        let cert = certify_cycle(&p, &CellItinerary::new(cells)?)?;
        println!("{}: {:?}", cert.itinerary, cert.states().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    match certify_cycle(&p, &CellItinerary::new(vec![Cell::C2, Cell::C2])?) {
        Ok(_) => println!("C2 C2 unexpectedly certified"),
        Err(e) => println!("C2 C2 rejected: {e}"),
    }

    for (r1, r2) in [(q(1, 2), q(2, 1)), (q(3, 1), q(1, 2)), (q(6, 5), q(3, 1))] {
        let p = ThreeWorkerParams::new(r1, r2)?;
        let s0 = Point::new(q(1, 10), q(3, 5));
        match find_certified_cycle(&p, &s0, 100_000) {
            AsymptoticBehavior::CertifiedCycle { period, transient, certificate } => {
                println!("{p} from {s0}: period {period} after ≤ {transient} steps");
                println!("{}", certificate_to_json(&certificate)?);
            }
            other => println!("{p} from {s0}: {other}"),
        }
    }
    Ok(())
}
