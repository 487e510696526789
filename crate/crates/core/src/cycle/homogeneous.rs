//! Exact replay and composition in homogeneous integer coordinates.
//!
//! A state is `(X, Y, W)` with `W > 0` standing for `(X/W, Y/W)`. One map
//! step multiplies `W` by `b1·b2` (the denominators of `r1 = a1/b1`,
//! `r2 = a2/b2`) and never reduces, so a step costs a few multiplications
//! by small integers instead of two big gcds.

use malachite::base::num::arithmetic::traits::Lcm;
use malachite::base::num::basic::traits::{One, Zero};
use malachite::base::num::logic::traits::SignificantBits;
use malachite::{Integer, Natural};

use crate::numerics::Rational;
use crate::three_worker::{cell_from, Cell, Point, ThreeWorkerParams};

#[derive(Clone, Debug)]
pub(crate) struct HomParams {
    /// Coefficients of the `a = x + (1−y)·r2` row, scaled by `b1·b2`.
    a_row: [Integer; 3],
    /// Coefficients of the `b = (1−y)·r1` row, scaled by `b1·b2`.
    b_row: [Integer; 3],
    /// `b1·b2`, the factor applied to `W` each step.
    scale: Integer,
    a2b1: Integer,
    a1b2: Integer,
    b1b2: Integer,
}

impl HomParams {
    pub(crate) fn new(p: &ThreeWorkerParams) -> Self {
        let (a1, b1) = (p.r1().numerator(), Integer::from(p.r1().denominator().clone()));
        let (a2, b2) = (p.r2().numerator(), Integer::from(p.r2().denominator().clone()));
        let b1b2 = &b1 * &b2;
        let a2b1 = &a2 * &b1;
        let a1b2 = &a1 * &b2;
        HomParams {
            a_row: [b1b2.clone(), -a2b1.clone(), a2b1.clone()],
            b_row: [Integer::ZERO, -a1b2.clone(), a1b2.clone()],
            scale: b1b2.clone(),
            a2b1,
            a1b2,
            b1b2,
        }
    }

    fn row(&self, which: Row) -> [Integer; 3] {
        match which {
            Row::A => self.a_row.clone(),
            Row::B => self.b_row.clone(),
            Row::One => [Integer::ZERO, Integer::ZERO, self.scale.clone()],
        }
    }
}

#[derive(Clone, Copy)]
enum Row {
    A,
    B,
    One,
}

/// Output rows `(x', y')` of each cell in terms of `a`, `b`, `1`.
fn output_rows(cell: Cell) -> (Row, Row) {
    match cell {
        Cell::C1 => (Row::One, Row::One),
        Cell::C2 => (Row::B, Row::One),
        Cell::C3 => (Row::A, Row::A),
        Cell::C4 => (Row::B, Row::A),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct HomState {
    pub x: Integer,
    pub y: Integer,
    pub w: Integer,
}

impl HomState {
    pub(crate) fn from_point(s: &Point) -> Self {
        let (qx, qy) = (s.x.denominator(), s.y.denominator());
        let l: Natural = qx.lcm(qy);
        let w = Integer::from(l.clone());
        let x = s.x.numerator() * Integer::from(&l / qx);
        let y = s.y.numerator() * Integer::from(&l / qy);
        HomState { x, y, w }
    }

    pub(crate) fn to_point(&self) -> Point {
        let x = Rational::from_integers(self.x.clone(), self.w.clone()).expect("W > 0");
        let y = Rational::from_integers(self.y.clone(), self.w.clone()).expect("W > 0");
        Point::new(x, y)
    }

    /// Same projective point.
    pub(crate) fn same_point(&self, other: &HomState) -> bool {
        &self.x * &other.w == &other.x * &self.w && &self.y * &other.w == &other.y * &self.w
    }

    pub(crate) fn bits(&self) -> u64 {
        self.w.significant_bits()
    }

    /// One exact map step; returns the cell the state was in.
    pub(crate) fn step(&mut self, h: &HomParams) -> Cell {
        let u = &self.w - &self.y;
        let a = &self.x * &h.b1b2 + &u * &h.a2b1;
        let b = &u * &h.a1b2;
        let one = &self.w * &h.b1b2;
        let cell = cell_from(&a, &b, &one);
        let (nx, ny) = match cell {
            Cell::C1 => (one.clone(), one.clone()),
            Cell::C2 => (b, one.clone()),
            Cell::C3 => (a.clone(), a),
            Cell::C4 => (b, a),
        };
        self.x = nx;
        self.y = ny;
        self.w = one;
        cell
    }
}

/// Accumulated affine map in homogeneous form: rows for `X'` and `Y'` over
/// `(X, Y, W)`, and the scalar factor `w` of the `W'` row `(0, 0, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct HomAffine {
    pub xr: [Integer; 3],
    pub yr: [Integer; 3],
    pub w: Integer,
}

impl HomAffine {
    pub(crate) fn identity() -> Self {
        HomAffine {
            xr: [Integer::ONE, Integer::ZERO, Integer::ZERO],
            yr: [Integer::ZERO, Integer::ONE, Integer::ZERO],
            w: Integer::ONE,
        }
    }

    fn combine(&self, piece: &[Integer; 3]) -> [Integer; 3] {
        let mut out = [Integer::ZERO, Integer::ZERO, Integer::ZERO];
        for (k, o) in out.iter_mut().enumerate() {
            if piece[0] != 0u32 {
                *o += &piece[0] * &self.xr[k];
            }
            if piece[1] != 0u32 {
                *o += &piece[1] * &self.yr[k];
            }
        }
        if piece[2] != 0u32 {
            out[2] += &piece[2] * &self.w;
        }
        out
    }

    /// Post-composes the piece of `cell`.
    pub(crate) fn then(&mut self, h: &HomParams, cell: Cell) {
        let (rx, ry) = output_rows(cell);
        let nx = self.combine(&h.row(rx));
        let ny = self.combine(&h.row(ry));
        self.xr = nx;
        self.yr = ny;
        self.w *= &h.scale;
    }

    pub(crate) fn compose(h: &HomParams, cells: &[Cell]) -> Self {
        let mut acc = HomAffine::identity();
        for &c in cells {
            acc.then(h, c);
        }
        acc
    }

    /// Linear part and offset divided by `w`.
    pub(crate) fn to_rational(&self) -> ([[Rational; 2]; 2], [Rational; 2]) {
        let r = |v: &Integer| Rational::from_integers(v.clone(), self.w.clone()).expect("w > 0");
        ([[r(&self.xr[0]), r(&self.xr[1])], [r(&self.yr[0]), r(&self.yr[1])]], [r(&self.xr[2]), r(&self.yr[2])])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Solve {
    Unique(Point),
    /// `(I − M)` is singular; `consistent` tells whether `c` lies in its range.
    Singular { consistent: bool },
}

/// Solves `(w·I − M)·s = c` by Cramer's rule.
pub(crate) fn solve_fixed(acc: &HomAffine) -> Solve {
    let a00 = &acc.w - &acc.xr[0];
    let a01 = -acc.xr[1].clone();
    let a10 = -acc.yr[0].clone();
    let a11 = &acc.w - &acc.yr[1];
    let (c0, c1) = (&acc.xr[2], &acc.yr[2]);
    let det = &a00 * &a11 - &a01 * &a10;
    if det == 0u32 {
        let zero_matrix = a00 == 0u32 && a01 == 0u32 && a10 == 0u32 && a11 == 0u32;
        let consistent = if zero_matrix {
            *c0 == 0u32 && *c1 == 0u32
        } else if a00 != 0u32 || a10 != 0u32 {
            &a00 * c1 == &a10 * c0
        } else {
            &a01 * c1 == &a11 * c0
        };
        return Solve::Singular { consistent };
    }
    let nx = c0 * &a11 - &a01 * c1;
    let ny = &a00 * c1 - &a10 * c0;
    let x = Rational::from_integers(nx, det.clone()).expect("det ≠ 0");
    let y = Rational::from_integers(ny, det).expect("det ≠ 0");
    Solve::Unique(Point::new(x, y))
}
