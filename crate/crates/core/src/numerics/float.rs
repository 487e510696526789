use malachite::base::num::arithmetic::traits::Abs;
use malachite::base::num::conversion::traits::RoundingFrom;
use malachite::base::rounding_modes::RoundingMode;
use malachite::Float;

/// Binary float with an explicit mantissa precision. Operators between two
/// values round to nearest at the larger of the two precisions, so keeping
/// every constant at one precision keeps a whole computation at it.
pub type ScoutFloat = Float;

pub fn float_from_f64(value: f64, prec: u64) -> Float {
    Float::from_primitive_float_prec(value, prec).0
}

pub fn float_to_f64(value: &Float) -> f64 {
    f64::rounding_from(value, RoundingMode::Nearest).0
}

pub fn float_sqrt(value: &Float, prec: u64) -> Float {
    value.sqrt_prec_ref(prec).0
}

pub fn float_abs(value: &Float) -> Float {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    #[test]
    fn precision_is_kept_through_operators() {
        let a = q(1, 3).to_float(128);
        let b = q(2, 3).to_float(128);
        let s = &a + &b;
        assert_eq!(s.get_prec(), Some(128));
        assert_eq!(float_to_f64(&s), 1.0);
    }

    #[test]
    fn sqrt_two_is_accurate() {
        let two = q(2, 1).to_float(200);
        let r = float_sqrt(&two, 200);
        let err = float_abs(&(&(&r * &r) - &two));
        assert!(err < q(1, 1).to_float(200) / float_from_f64(2f64.powi(190), 200));
    }
}
