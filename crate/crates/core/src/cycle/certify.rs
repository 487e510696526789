use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numerics::Rational;
use crate::three_worker::{step3, Cell, Point, ThreeWorkerParams};

use super::homogeneous::{solve_fixed, HomAffine, HomParams, HomState, Solve};

/// Certificates up to this period keep every state in memory and are also
/// replayed with canonical rationals when verified.
pub const FULL_STATES_LIMIT: usize = 1000;

/// Cell tags visited along one period. Serialized run-length encoded as
/// `[["C2", 3], ["C4", 1], …]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellItinerary(Vec<Cell>);

impl CellItinerary {
    pub fn new(cells: Vec<Cell>) -> Result<Self, CertifyError> {
        if cells.is_empty() {
            return Err(CertifyError::EmptyItinerary);
        }
        Ok(CellItinerary(cells))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_c1(&self) -> bool {
        self.0.contains(&Cell::C1)
    }

    pub fn run_length(&self) -> Vec<(Cell, usize)> {
        let mut runs: Vec<(Cell, usize)> = Vec::new();
        for &c in &self.0 {
            match runs.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => runs.push((c, 1)),
            }
        }
        runs
    }

    pub fn from_run_length(runs: &[(Cell, usize)]) -> Result<Self, CertifyError> {
        Self::new(runs.iter().flat_map(|&(c, n)| std::iter::repeat_n(c, n)).collect())
    }

    /// The same cycle entered `k` steps later.
    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(k % len);
        CellItinerary(v)
    }
}

impl fmt::Display for CellItinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, n)) in self.run_length().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *n == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{n}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CellItinerary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.run_length().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CellItinerary {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let runs = Vec::<(Cell, usize)>::deserialize(deserializer)?;
        CellItinerary::from_run_length(&runs).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("empty itinerary")]
    EmptyItinerary,
    #[error("no such cycle: the composed system is singular and inconsistent")]
    NoSuchCycle,
    #[error("the composed system is singular with a continuum of solutions; no isolated cycle")]
    NotIsolated,
    #[error("solved seed {0} lies outside the simplex")]
    SeedOutsideSimplex(String),
    #[error("state {index} lies in {found}, itinerary claims {expected}")]
    CellMismatch { index: usize, expected: Cell, found: Cell },
    #[error("orbit does not close after {period} steps")]
    NotClosed { period: usize },
    #[error("period {period} is not minimal: the orbit already closes after {divisor} steps")]
    NotMinimal { period: usize, divisor: usize },
}

/// Exact composition `M·s + c` of the pieces along an itinerary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedAffine {
    pub matrix: [[Rational; 2]; 2],
    pub offset: [Rational; 2],
    /// Some piece is C1, so the composition is the constant `offset`.
    pub collapses_to_constant: bool,
}

impl ComposedAffine {
    pub fn apply(&self, s: &Point) -> Point {
        let m = &self.matrix;
        Point::new(
            &m[0][0] * &s.x + &m[0][1] * &s.y + &self.offset[0],
            &m[1][0] * &s.x + &m[1][1] * &s.y + &self.offset[1],
        )
    }
}

pub fn compose_affine(p: &ThreeWorkerParams, it: &CellItinerary) -> ComposedAffine {
    let acc = HomAffine::compose(&HomParams::new(p), it.cells());
    let (matrix, offset) = acc.to_rational();
    ComposedAffine { matrix, offset, collapses_to_constant: it.contains_c1() }
}

/// Exact periodic orbit `seed → … → seed` following `itinerary`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    pub params: ThreeWorkerParams,
    pub period: usize,
    pub seed: Point,
    pub itinerary: CellItinerary,
    /// Steps from the classified start until the cycle is reached; `None`
    /// when the cycle was found by a near-return search and does not
    /// attract that start.
    pub transient_bound: Option<usize>,
    /// All states, kept only up to [`FULL_STATES_LIMIT`].
    pub states: Option<Vec<Point>>,
}

impl CycleCertificate {
    /// All cycle states in orbit order, regenerated from the seed when not
    /// stored. Each regenerated state is canonicalized, which is slow for
    /// long cycles with huge denominators.
    pub fn states(&self) -> Vec<Point> {
        if let Some(s) = &self.states {
            return s.clone();
        }
        let h = HomParams::new(&self.params);
        let mut hs = HomState::from_point(&self.seed);
        let mut out = Vec::with_capacity(self.period);
        for _ in 0..self.period {
            out.push(hs.to_point());
            hs.step(&h);
            hs = HomState::from_point(&hs.to_point());
        }
        out
    }

    /// Largest bit length among the seed's denominators.
    pub fn seed_bits(&self) -> u64 {
        self.seed.max_denominator_bits()
    }

    /// Independent replay: the homogeneous integer orbit must follow the
    /// itinerary, close, and not close early; short cycles are replayed a
    /// second time with canonical rationals.
    pub fn verify(&self) -> Result<(), CertifyError> {
        if self.itinerary.len() != self.period {
            return Err(CertifyError::NotClosed { period: self.period });
        }
        replay_homogeneous(&self.params, &self.seed, &self.itinerary)?;
        if self.period <= FULL_STATES_LIMIT {
            let states = replay_canonical(&self.params, &self.seed, &self.itinerary)?;
            if let Some(stored) = &self.states {
                if *stored != states {
                    return Err(CertifyError::NotClosed { period: self.period });
                }
            }
        }
        Ok(())
    }
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (1..n).filter(|d| n % d == 0).collect()
}

/// Replays `seed` along `it` in homogeneous coordinates, checking every
/// cell, closure after `p` steps, and no closure at proper divisors of `p`.
fn replay_homogeneous(p: &ThreeWorkerParams, seed: &Point, it: &CellItinerary) -> Result<(), CertifyError> {
    let period = it.len();
    let h = HomParams::new(p);
    let start = HomState::from_point(seed);
    let divisors = proper_divisors(period);
    let mut next_div = divisors.iter().peekable();
    let mut hs = start.clone();
    for (index, &expected) in it.cells().iter().enumerate() {
        if next_div.peek() == Some(&&index) {
            next_div.next();
            if hs.same_point(&start) {
                return Err(CertifyError::NotMinimal { period, divisor: index });
            }
        }
        let found = hs.step(&h);
        if found != expected {
            return Err(CertifyError::CellMismatch { index, expected, found });
        }
    }
    if !hs.same_point(&start) {
        return Err(CertifyError::NotClosed { period });
    }
    Ok(())
}

/// The same checks with canonical rationals and the cell-by-cell map.
fn replay_canonical(p: &ThreeWorkerParams, seed: &Point, it: &CellItinerary) -> Result<Vec<Point>, CertifyError> {
    let period = it.len();
    let mut states = Vec::with_capacity(period);
    let mut s = seed.clone();
    for (index, &expected) in it.cells().iter().enumerate() {
        if index > 0 && period % index == 0 && s == *seed {
            return Err(CertifyError::NotMinimal { period, divisor: index });
        }
        let (found, next) = step3(p, &s);
        if found != expected {
            return Err(CertifyError::CellMismatch { index, expected, found });
        }
        states.push(s);
        s = next;
    }
    if s != *seed {
        return Err(CertifyError::NotClosed { period });
    }
    Ok(states)
}

/// Solves for the cycle state of `it` and replays it exactly.
///
/// The seed is the state at position 0 of the itinerary. When the
/// itinerary contains C1 the composition is constant and the seed is
/// forced; the same Cramer solve returns it.
pub fn certify_cycle(p: &ThreeWorkerParams, it: &CellItinerary) -> Result<CycleCertificate, CertifyError> {
    let h = HomParams::new(p);
    let seed = match it.cells().iter().position(|&c| c == Cell::C1) {
        Some(k) => forced_seed(&h, it, k),
        None => match solve_fixed(&HomAffine::compose(&h, it.cells())) {
            Solve::Unique(s) => s,
            Solve::Singular { consistent: false } => return Err(CertifyError::NoSuchCycle),
            Solve::Singular { consistent: true } => return Err(CertifyError::NotIsolated),
        },
    };
    if !seed.in_simplex() {
        return Err(CertifyError::SeedOutsideSimplex(seed.to_string()));
    }
    replay_homogeneous(p, &seed, it)?;
    let states = if it.len() <= FULL_STATES_LIMIT { Some(replay_canonical(p, &seed, it)?) } else { None };
    Ok(CycleCertificate {
        params: p.clone(),
        period: it.len(),
        seed,
        itinerary: it.clone(),
        transient_bound: None,
        states,
    })
}

/// Past a C1 step the state is `(1, 1)`; following the remaining pieces
/// around to position 0 gives the seed.
fn forced_seed(h: &HomParams, it: &CellItinerary, c1_at: usize) -> Point {
    let rest: Vec<Cell> = it.cells()[c1_at + 1..].to_vec();
    let acc = HomAffine::compose(h, &rest);
    let x = &acc.xr[0] + &acc.xr[1] + &acc.xr[2];
    let y = &acc.yr[0] + &acc.yr[1] + &acc.yr[2];
    let w = acc.w;
    Point::new(
        Rational::from_integers(x, w.clone()).expect("w > 0"),
        Rational::from_integers(y, w).expect("w > 0"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;
    use Cell::*;

    fn fig1() -> ThreeWorkerParams {
        ThreeWorkerParams::new(q(2, 1), q(4, 3)).unwrap()
    }

    fn itin(c: &[Cell]) -> CellItinerary {
        CellItinerary::new(c.to_vec()).unwrap()
    }

    #[test]
    fn other_three_cycle() {
        let cert = certify_cycle(&fig1(), &itin(&[C3, C2, C4])).unwrap();
        assert_eq!(cert.period, 3);
        assert_eq!(
            cert.states.clone().unwrap(),
            vec![Point::new(q(0, 1), q(2, 5)), Point::new(q(4, 5), q(4, 5)), Point::new(q(2, 5), q(1, 1))]
        );
        cert.verify().unwrap();
    }

    #[test]
    fn standard_three_cycle_is_forced_by_c1() {
        let cert = certify_cycle(&fig1(), &itin(&[C1, C2, C4])).unwrap();
        assert_eq!(
            cert.states.clone().unwrap(),
            vec![Point::new(q(0, 1), q(0, 1)), Point::new(q(1, 1), q(1, 1)), Point::new(q(0, 1), q(1, 1))]
        );
        cert.verify().unwrap();
    }

    #[test]
    fn composition_examples() {
        let p = ThreeWorkerParams::new(q(1, 2), q(2, 1)).unwrap();
        let c = compose_affine(&p, &itin(&[C4]));
        assert_eq!(c.matrix, [[q(0, 1), q(-1, 2)], [q(1, 1), q(-2, 1)]]);
        assert_eq!(c.offset, [q(1, 2), q(2, 1)]);
        assert!(!c.collapses_to_constant);

        // [C2, C4]: the C4 matrix times the C2 matrix.
        let c = compose_affine(&p, &itin(&[C2, C4]));
        assert_eq!(c.matrix, [[q(0, 1), q(0, 1)], [q(0, 1), q(-1, 2)]]);

        // Along the x = 0 axis the 3-step map multiplies y − θ by r1·r2.
        let c = compose_affine(&fig1(), &itin(&[C3, C2, C4]));
        assert_eq!(c.matrix[0][1], q(0, 1));
        assert_eq!(c.matrix[1][1], q(8, 3));
        assert!(compose_affine(&fig1(), &itin(&[C1, C2, C4])).collapses_to_constant);
    }

    #[test]
    fn failures_are_reported() {
        let p = fig1();
        assert!(matches!(certify_cycle(&p, &itin(&[C1])), Err(CertifyError::CellMismatch { index: 0, .. })));
        assert!(matches!(
            certify_cycle(&p, &itin(&[C3, C2, C4, C3, C2, C4])),
            Err(CertifyError::NotMinimal { period: 6, divisor: 3 })
        ));
        assert!(CellItinerary::new(vec![]).is_err());
    }

    #[test]
    fn fixed_point_as_period_one() {
        let cert = certify_cycle(&fig1(), &itin(&[C4])).unwrap();
        assert_eq!(cert.seed, Point::new(q(6, 13), q(10, 13)));
    }

    #[test]
    fn run_length_round_trip() {
        let it = itin(&[C2, C2, C2, C4, C2]);
        assert_eq!(serde_json::to_string(&it).unwrap(), r#"[["C2",3],["C4",1],["C2",1]]"#);
        let back: CellItinerary = serde_json::from_str(r#"[["C2",3],["C4",1],["C2",1]]"#).unwrap();
        assert_eq!(back, it);
        assert_eq!(it.to_string(), "C2^3 C4 C2");
    }
}
