use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::line::{BrigadeConfig, ResetState};
use crate::numerics::Rational;

/// Normalized speeds `r1 = v1/v3`, `r2 = v2/v3`, both positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeWorkerParams {
    r1: Rational,
    r2: Rational,
}

impl ThreeWorkerParams {
    pub fn new(r1: Rational, r2: Rational) -> Result<Self> {
        if !r1.is_positive() || !r2.is_positive() {
            return Err(Error::Config(format!("speed ratios must be positive, got r1 = {r1}, r2 = {r2}")));
        }
        Ok(ThreeWorkerParams { r1, r2 })
    }

    pub fn from_velocities(v1: &Rational, v2: &Rational, v3: &Rational) -> Result<Self> {
        if !v3.is_positive() {
            return Err(Error::Config(format!("velocity {v3} is not positive")));
        }
        Self::new(v1 / v3, v2 / v3)
    }

    pub fn r1(&self) -> &Rational {
        &self.r1
    }

    pub fn r2(&self) -> &Rational {
        &self.r2
    }

    /// The line `(r1, r2, 1)` whose general reset map this is.
    pub fn to_config(&self) -> BrigadeConfig {
        BrigadeConfig::constant(&[self.r1.clone(), self.r2.clone(), Rational::one()])
            .expect("positive ratios form a valid line")
    }

    pub fn region(&self) -> Region {
        region_of(self)
    }
}

impl fmt::Display for ThreeWorkerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r1 = {}, r2 = {})", self.r1, self.r2)
    }
}

/// A point `(x, y)` of the plane; a state of Δ when `0 ≤ x ≤ y ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(from = "(Rational, Rational)")]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn in_simplex(&self) -> bool {
        !self.x.is_negative() && self.x <= self.y && self.y <= Rational::one()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn to_reset_state(&self) -> Result<ResetState> {
        ResetState::new(vec![self.x.clone(), self.y.clone()])
    }

    pub fn from_reset_state(s: &ResetState) -> Result<Self> {
        match s.coordinates() {
            [x, y] => Ok(Point::new(x.clone(), y.clone())),
            other => Err(Error::Precondition(format!("expected 2 coordinates, got {}", other.len()))),
        }
    }

    pub fn max_denominator_bits(&self) -> u64 {
        self.x.denominator_bits().max(self.y.denominator_bits())
    }
}

impl From<(Rational, Rational)> for Point {
    fn from((x, y): (Rational, Rational)) -> Self {
        Point { x, y }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The four cells partitioning Δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    C1,
    C2,
    C3,
    C4,
}

impl Cell {
    pub const ALL: [Cell; 4] = [Cell::C1, Cell::C2, Cell::C3, Cell::C4];

    pub fn index(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.index())
    }
}

impl std::str::FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C1" | "1" => Ok(Cell::C1),
            "C2" | "2" => Ok(Cell::C2),
            "C3" | "3" => Ok(Cell::C3),
            "C4" | "4" => Ok(Cell::C4),
            other => Err(Error::Config(format!("unknown cell {other:?}"))),
        }
    }
}

/// The two quantities every cell condition compares against 1 and each
/// other: `a = x + (1−y)·r2` and `b = (1−y)·r1`.
pub(crate) fn cell_quantities(p: &ThreeWorkerParams, s: &Point) -> (Rational, Rational) {
    let rest = Rational::one() - &s.y;
    let a = &s.x + &rest * &p.r2;
    let b = rest * &p.r1;
    (a, b)
}

/// Cell selection shared by every exact and floating evaluation of the map.
pub(crate) fn cell_from<T: PartialOrd>(a: &T, b: &T, one: &T) -> Cell {
    if a < one {
        if b <= a {
            Cell::C4
        } else {
            Cell::C3
        }
    } else if b < one {
        Cell::C2
    } else {
        Cell::C1
    }
}

/// C1 iff `1 ≤ min(a, b)`; C2 iff `b < 1 ≤ a`; C3 iff `a < min(1, b)`;
/// C4 iff `b ≤ a < 1`.
pub fn classify_cell(p: &ThreeWorkerParams, s: &Point) -> Cell {
    let (a, b) = cell_quantities(p, s);
    cell_from(&a, &b, &Rational::one())
}

fn image_of(cell: Cell, a: Rational, b: Rational) -> Point {
    match cell {
        Cell::C1 => Point::new(Rational::one(), Rational::one()),
        Cell::C2 => Point::new(b, Rational::one()),
        Cell::C3 => Point::new(a.clone(), a),
        Cell::C4 => Point::new(b, a),
    }
}

/// The explicit three-worker reset map.
pub fn reset_map3(p: &ThreeWorkerParams, s: &Point) -> Point {
    step3(p, s).1
}

/// Cell of `s` together with its image.
pub fn step3(p: &ThreeWorkerParams, s: &Point) -> (Cell, Point) {
    let (a, b) = cell_quantities(p, s);
    let cell = cell_from(&a, &b, &Rational::one());
    (cell, image_of(cell, a, b))
}

pub fn iterate3(p: &ThreeWorkerParams, s: &Point, k: usize) -> Point {
    (0..k).fold(s.clone(), |acc, _| reset_map3(p, &acc))
}

/// `s ↦ M·s + c` restricted to one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub cell: Cell,
    pub matrix: [[Rational; 2]; 2],
    pub offset: [Rational; 2],
}

impl AffinePiece {
    pub fn of(p: &ThreeWorkerParams, cell: Cell) -> Self {
        let z = Rational::zero;
        let (r1, r2) = (p.r1.clone(), p.r2.clone());
        let (matrix, offset) = match cell {
            Cell::C1 => ([[z(), z()], [z(), z()]], [Rational::one(), Rational::one()]),
            Cell::C2 => ([[z(), -&r1], [z(), z()]], [r1, Rational::one()]),
            Cell::C3 => ([[Rational::one(), -&r2], [Rational::one(), -&r2]], [r2.clone(), r2]),
            Cell::C4 => ([[z(), -&r1], [Rational::one(), -&r2]], [r1, r2]),
        };
        AffinePiece { cell, matrix, offset }
    }

    pub fn apply(&self, s: &Point) -> Point {
        let m = &self.matrix;
        Point::new(
            &m[0][0] * &s.x + &m[0][1] * &s.y + &self.offset[0],
            &m[1][0] * &s.x + &m[1][1] * &s.y + &self.offset[1],
        )
    }

    pub fn determinant(&self) -> Rational {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    pub fn trace(&self) -> Rational {
        &self.matrix[0][0] + &self.matrix[1][1]
    }
}

/// The paper's partition of `(r1, r2)` space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    R1,
    R2,
    R3,
    RK,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
            Region::RK => "RK",
        };
        f.write_str(s)
    }
}

/// R1: `r1 ≤ 1, r2 ≤ r1+1`; R2: `r1 ≤ 1, r2 > r1+1`; R3: `r1 > 1, r2 > 1`;
/// RK: `r1 > 1, r2 ≤ 1`.
pub fn region_of(p: &ThreeWorkerParams) -> Region {
    let one = Rational::one();
    if p.r1 <= one {
        if p.r2 <= &p.r1 + &one {
            Region::R1
        } else {
            Region::R2
        }
    } else if p.r2 > one {
        Region::R3
    } else {
        Region::RK
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn params(r1: Rational, r2: Rational) -> ThreeWorkerParams {
        ThreeWorkerParams::new(r1, r2).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn cell_examples() {
        let p = params(q(2, 1), q(4, 3));
        assert_eq!(classify_cell(&p, &pt(q(1, 10), q(1, 10))), Cell::C1);
        assert_eq!(classify_cell(&p, &pt(q(1, 1), q(1, 1))), Cell::C2);
        assert_eq!(classify_cell(&p, &pt(q(6, 13), q(10, 13))), Cell::C4);
    }

    #[test]
    fn map_examples() {
        let p = params(q(2, 1), q(4, 3));
        assert_eq!(reset_map3(&p, &pt(q(0, 1), q(2, 5))), pt(q(4, 5), q(4, 5)));
        assert_eq!(reset_map3(&p, &pt(q(4, 5), q(4, 5))), pt(q(2, 5), q(1, 1)));
        assert_eq!(reset_map3(&p, &pt(q(2, 5), q(1, 1))), pt(q(0, 1), q(2, 5)));
        assert_eq!(reset_map3(&p, &pt(q(0, 1), q(5, 8))), pt(q(1, 2), q(1, 2)));
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_of(&params(q(1, 2), q(1, 1))), Region::R1);
        assert_eq!(region_of(&params(q(1, 2), q(2, 1))), Region::R2);
        assert_eq!(region_of(&params(q(2, 1), q(1, 2))), Region::RK);
        assert_eq!(region_of(&params(q(2, 1), q(4, 3))), Region::R3);
        // Boundaries as displayed: r2 = r1 + 1 is R1, r1 = 1 is not R3.
        assert_eq!(region_of(&params(q(1, 2), q(3, 2))), Region::R1);
        assert_eq!(region_of(&params(q(1, 1), q(3, 1))), Region::R2);
        assert_eq!(region_of(&params(q(3, 1), q(1, 1))), Region::RK);
    }

    #[test]
    fn pieces_match_the_map() {
        let p = params(q(2, 1), q(4, 3));
        for (s, cell) in [
            (pt(q(1, 10), q(1, 10)), Cell::C1),
            (pt(q(1, 1), q(1, 1)), Cell::C2),
            (pt(q(0, 1), q(2, 5)), Cell::C3),
            (pt(q(6, 13), q(10, 13)), Cell::C4),
        ] {
            assert_eq!(classify_cell(&p, &s), cell);
            assert_eq!(AffinePiece::of(&p, cell).apply(&s), reset_map3(&p, &s));
        }
        assert_eq!(AffinePiece::of(&p, Cell::C4).determinant(), q(2, 1));
    }

    #[test]
    fn point_serializes_as_pair() {
        let s = serde_json::to_string(&pt(q(1, 3), q(1, 1))).unwrap();
        assert_eq!(s, r#"["1/3","1"]"#);
        assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), pt(q(1, 3), q(1, 1)));
    }
}
