use num_bigint::BigInt;

use super::ball::Ball;
use super::bound::ErrBound;
use super::float::BigFloat;
use crate::error::{Error, Result};

/// Splits `x ± err` into `(⌊x⌋, {x})` with `0 <= {x} < 1` (floor convention).
///
/// The fractional part carries the same error bound. When the interval
/// `[x − err, x + err]` reaches an integer the split is ambiguous and the call fails
/// with [`Error::PrecisionInsufficient`] carrying an estimate of the extra bits needed.
pub fn frac_part_certified(x: &BigFloat, err: ErrBound) -> Result<(BigInt, Ball)> {
    let e = err.to_bigfloat();
    let lo = (x - &e).floor();
    let hi = (x + &e).floor();
    let int_part = x.floor();
    if lo != hi || (!err.is_zero() && (x - &e) == BigFloat::from_int(lo.clone())) {
        return Err(Error::PrecisionInsufficient { extra_bits: extra_bits_needed(x, err, &int_part) });
    }
    let frac = x - &BigFloat::from_int(int_part.clone());
    Ok((int_part, Ball::new(frac, err)))
}

/// Ball form of [`frac_part_certified`].
pub fn frac_part_ball(x: &Ball) -> Result<(BigInt, Ball)> {
    frac_part_certified(x.mid(), x.rad())
}

fn extra_bits_needed(x: &BigFloat, err: ErrBound, floor: &BigInt) -> u64 {
    let below = x - &BigFloat::from_int(floor.clone());
    let above = &BigFloat::from_int(floor + 1) - x;
    let dist = if below < above { below } else { above };
    if dist.is_zero() {
        // x sits on an integer; at least a few more bits than the current error scale
        return 64;
    }
    let gap = err.log2() - ErrBound::upper_of(&dist).log2();
    (gap.max(0.0).ceil() as u64) + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x)
    }

    fn bound(x: f64) -> ErrBound {
        ErrBound::upper_of(&bf(x))
    }

    #[test]
    fn positive_value() {
        let (i, f) = frac_part_certified(&bf(2.7725887), bound(1e-6)).unwrap();
        assert_eq!(i, BigInt::from(2));
        assert!((f.to_f64() - 0.7725887).abs() < 1e-12);
        assert_eq!(f.rad(), bound(1e-6));
    }

    #[test]
    fn straddle_is_rejected() {
        match frac_part_certified(&bf(3.0), bound(0.5)) {
            Err(Error::PrecisionInsufficient { extra_bits }) => assert!(extra_bits > 0),
            other => panic!("unexpected {other:?}"),
        }
        match frac_part_certified(&bf(2.999), bound(0.01)) {
            Err(Error::PrecisionInsufficient { extra_bits }) => assert!((3..=8).contains(&extra_bits)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_uses_floor() {
        let (i, f) = frac_part_certified(&bf(-0.25), bound(1e-9)).unwrap();
        assert_eq!(i, BigInt::from(-1));
        assert_eq!(f.mid(), &bf(0.75));
    }

    #[test]
    fn exact_integer_is_fine_without_error() {
        let (i, f) = frac_part_certified(&bf(5.0), ErrBound::ZERO).unwrap();
        assert_eq!(i, BigInt::from(5));
        assert!(f.mid().is_zero());
    }

    #[test]
    fn reconstruction_is_exact() {
        for x in [0.001, 17.5, -3.75, 1234.0625] {
            let (i, f) = frac_part_certified(&bf(x), ErrBound::pow2(-40)).unwrap();
            assert_eq!(&BigFloat::from_int(i) + f.mid(), bf(x));
        }
    }
}
