//! Search a grid of starts for the repelling cycle of period 63,667 at
//! speeds (6/5, 3, 1), certify it exactly and save the certificate.
//!
//! Run with `cargo run --release --example long_cycle -- [OUT.json]`.

use brigade::cycle::{search_cycle_of_period, write_certificate, PeriodSearchOptions};
use brigade::three_worker::ThreeWorkerParams;
use brigade::{q, Rational};

fn main() -> brigade::Result<()> {
    let p = ThreeWorkerParams::from_velocities(&Rational::parse("1.2")?, &q(3, 1), &q(1, 1))?;
    let out = search_cycle_of_period(&p, &PeriodSearchOptions::new(63_667));
    let Some(cert) = out.certificate else {
        println!("no cycle found after {} starts ({} windows rejected)", out.starts_visited, out.rejected.len());
        return Ok(());
    };
    cert.verify()?;
    let w = out.window.expect("window of the certified cycle");
    println!(
        "period {} from start {} (near-return gap {:.2e} at orbit step {}), seed denominators {} bits",
        cert.period,
        out.start.expect("start of the certified cycle"),
        w.gap,
        w.start,
        cert.seed_bits()
    );
    let runs = cert.itinerary.run_length();
    println!("itinerary has {} runs, first: {:?}", runs.len(), &runs[..runs.len().min(6)]);
    if let Some(path) = std::env::args().nth(1) {
        write_certificate(&cert, path.as_ref())?;
        println!("certificate written to {path}");
    }
    Ok(())
}
