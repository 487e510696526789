use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numerics::{QuadraticReal, Rational};

use super::map::{reset_map3, AffinePiece, Cell, Point, Region, ThreeWorkerParams};

/// θ, φ, α, the fixed point p* and the region tag for one parameter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedConstants {
    /// Absent exactly when `r1·r2 = 1`.
    pub theta: Option<Rational>,
    pub phi: Option<Rational>,
    /// Present only when `r1 > r2 > 1`.
    pub alpha: Option<Rational>,
    pub p_star: Point,
    pub region: Region,
}

impl DerivedConstants {
    pub fn theta(&self) -> Result<&Rational> {
        self.theta.as_ref().ok_or_else(|| Error::Precondition("theta is undefined when r1*r2 = 1".into()))
    }

    pub fn phi(&self) -> Result<&Rational> {
        self.phi.as_ref().ok_or_else(|| Error::Precondition("phi is undefined when r1*r2 = 1".into()))
    }
}

/// Theorem-3 hypothesis `v3 ≤ v2 < v1`.
pub fn region3_hypothesis(p: &ThreeWorkerParams) -> bool {
    p.r1() > p.r2() && *p.r2() >= Rational::one()
}

pub fn p_star(p: &ThreeWorkerParams) -> Point {
    let total = p.r1() + p.r2() + Rational::one();
    Point::new(p.r1() / &total, (p.r1() + p.r2()) / &total)
}

pub fn derived_constants(p: &ThreeWorkerParams) -> DerivedConstants {
    let (r1, r2) = (p.r1(), p.r2());
    let one = Rational::one();
    let denom = r1 * r2 - &one;
    let (theta, phi) = if denom.is_zero() {
        (None, None)
    } else {
        (Some(r1 * (r2 - &one) / &denom), Some(r2 * (r1 - &one) / &denom))
    };
    let alpha = (region3_hypothesis(p) && *r2 > one).then(|| {
        let alpha = &one - (&one - one.clone() / r1) / r2;
        let corner = &one - one.clone() / r1;
        debug_assert_eq!(reset_map3(p, &Point::new(Rational::zero(), alpha.clone())), Point::new(corner.clone(), corner));
        alpha
    });
    DerivedConstants { theta, phi, alpha, p_star: p_star(p), region: p.region() }
}

/// Eigenvalues of the C4 linear part `[[0, −r1], [1, −r2]]`, roots of
/// `λ² + r2·λ + r1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C4Eigenvalues {
    /// `lambda_plus = (−r2 + √D)/2 ≥ lambda_minus = (−r2 − √D)/2`.
    Real { lambda_plus: QuadraticReal, lambda_minus: QuadraticReal },
    /// Conjugate pair with real part `−r2/2` and squared modulus `r1`.
    Complex { real_part: Rational, modulus_squared: Rational },
}

pub fn c4_discriminant(p: &ThreeWorkerParams) -> Rational {
    p.r2() * p.r2() - Rational::from(4) * p.r1()
}

pub fn c4_eigenvalues(p: &ThreeWorkerParams) -> C4Eigenvalues {
    let d = c4_discriminant(p);
    let half = Rational::new(1, 2);
    if d.is_negative() {
        return C4Eigenvalues::Complex { real_part: -(p.r2() * &half), modulus_squared: p.r1().clone() };
    }
    let mk = |sign: i64| {
        QuadraticReal::new(-(p.r2() * &half), Rational::new(sign, 2), d.clone()).expect("d ≥ 0")
    };
    C4Eigenvalues::Real { lambda_plus: mk(1), lambda_minus: mk(-1) }
}

/// Both C4 eigenvalues have modulus above 1, decided exactly. For a
/// conjugate pair this is `r1 > 1`.
pub fn c4_eigenvalues_escape(p: &ThreeWorkerParams) -> bool {
    let one = Rational::one();
    match c4_eigenvalues(p) {
        C4Eigenvalues::Complex { modulus_squared, .. } => modulus_squared > one,
        C4Eigenvalues::Real { lambda_plus, lambda_minus } => {
            lambda_plus.abs().cmp_rational(&one) == Ordering::Greater
                && lambda_minus.abs().cmp_rational(&one) == Ordering::Greater
        }
    }
}

pub fn c4_piece(p: &ThreeWorkerParams) -> AffinePiece {
    AffinePiece::of(p, Cell::C4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn params(r1: Rational, r2: Rational) -> ThreeWorkerParams {
        ThreeWorkerParams::new(r1, r2).unwrap()
    }

    #[test]
    fn figure_one_constants() {
        let c = derived_constants(&params(q(2, 1), q(4, 3)));
        assert_eq!(c.theta, Some(q(2, 5)));
        assert_eq!(c.phi, Some(q(4, 5)));
        assert_eq!(c.alpha, Some(q(5, 8)));
        assert_eq!(c.p_star, Point::new(q(6, 13), q(10, 13)));
        assert_eq!(c.region, Region::R3);
    }

    #[test]
    fn figure_two_constants() {
        let c = derived_constants(&params(q(4, 3), q(2, 1)));
        assert_eq!(c.theta, Some(q(4, 5)));
        // Outside the Theorem-3 hypothesis (r1 < r2), so no α.
        assert_eq!(c.alpha, None);
    }

    #[test]
    fn unit_r2_degenerates() {
        let c = derived_constants(&params(q(3, 1), q(1, 1)));
        assert_eq!(c.theta, Some(q(0, 1)));
        assert_eq!(c.phi, Some(q(1, 1)));
        assert_eq!(c.alpha, None);
    }

    #[test]
    fn theta_undefined_on_hyperbola() {
        let c = derived_constants(&params(q(1, 2), q(2, 1)));
        assert!(c.theta().is_err());
        assert!(c.phi().is_err());
    }

    #[test]
    fn region3_eigenvalues_escape() {
        assert!(c4_eigenvalues_escape(&params(q(2, 1), q(4, 3))));
        // r2² > 4 r1: real pair, both below −1.
        assert!(c4_eigenvalues_escape(&params(q(5, 1), q(9, 2))));
        assert!(!c4_eigenvalues_escape(&params(q(1, 2), q(2, 1))));
    }
}
