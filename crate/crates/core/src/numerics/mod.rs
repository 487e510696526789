//! Exact scalars: canonical rationals, quadratic reals `a + b√d`, and the
//! high-precision binary floats used only for scouting.

mod float;
mod quadratic;
mod rational;

pub use float::{float_abs, float_from_f64, float_sqrt, float_to_f64, ScoutFloat};
pub use quadratic::{quad_compare, QuadraticReal};
pub use rational::{q, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("quadratic reals with different radicands ({0} and {1})")]
    MixedRadicand(String, String),
}
