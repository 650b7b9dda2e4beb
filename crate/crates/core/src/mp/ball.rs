use std::fmt;

use num_bigint::BigInt;

use super::bound::ErrBound;
use super::float::BigFloat;
use crate::error::{Error, Result};
use crate::exact::Rat;

/// A value together with a rigorous absolute error bound: the true quantity
/// lies in `[mid − rad, mid + rad]`.
///
/// Binary operations take the working precision `p` (significant bits kept in
/// the midpoint) explicitly. Radii propagate forward:
/// `ra + rb` for sums, `|a|·rb + |b|·ra + ra·rb` for products, plus the
/// rounding error of the new midpoint.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Ball {
    mid: BigFloat,
    rad: ErrBound,
}

impl Ball {
    pub fn new(mid: BigFloat, rad: ErrBound) -> Self {
        Ball { mid, rad }
    }

    pub fn exact(mid: BigFloat) -> Self {
        Ball { mid, rad: ErrBound::ZERO }
    }

    pub fn zero() -> Self {
        Self::exact(BigFloat::zero())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::exact(BigFloat::from_int(v))
    }

    pub fn from_rat(r: &Rat, p: u32) -> Self {
        let (mid, rad) = BigFloat::from_rat(r, p);
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> ErrBound {
        self.rad
    }

    pub fn into_parts(self) -> (BigFloat, ErrBound) {
        (self.mid, self.rad)
    }

    /// Widens the radius by `extra`.
    pub fn widen(mut self, extra: ErrBound) -> Self {
        self.rad = self.rad.add(extra);
        self
    }

    pub fn lower(&self) -> BigFloat {
        &self.mid - &self.rad.to_bigfloat()
    }

    pub fn upper(&self) -> BigFloat {
        &self.mid + &self.rad.to_bigfloat()
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> ErrBound {
        ErrBound::upper_of(&self.mid).add(self.rad)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lower().signum() > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.upper().signum() < 0
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_strictly_positive() && !self.is_strictly_negative()
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        (&self.mid - x).abs() <= self.rad.to_bigfloat()
    }

    /// `true` when the two balls intersect, i.e. `|a − b| <= ra + rb`.
    pub fn overlaps(&self, other: &Ball) -> bool {
        (&self.mid - &other.mid).abs() <= self.rad.add(other.rad).to_bigfloat()
    }

    pub fn round(&self, p: u32) -> Ball {
        let (mid, e) = self.mid.round(p);
        Ball { mid, rad: self.rad.add(e) }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad }
    }

    /// `|x|` taken at the midpoint; the radius still bounds the error.
    pub fn abs(&self) -> Ball {
        Ball { mid: self.mid.abs(), rad: self.rad }
    }

    /// Sum without rounding the midpoint.
    pub fn add_exact(&self, other: &Ball) -> Ball {
        Ball { mid: &self.mid + &other.mid, rad: self.rad.add(other.rad) }
    }

    pub fn add(&self, other: &Ball, p: u32) -> Ball {
        self.add_exact(other).round(p)
    }

    pub fn sub(&self, other: &Ball, p: u32) -> Ball {
        self.add_exact(&other.neg()).round(p)
    }

    pub fn mul_exact(&self, other: &Ball) -> Ball {
        let rad = self
            .rad
            .mul_big(&other.mid)
            .add(other.rad.mul_big(&self.mid))
            .add(self.rad.mul(other.rad));
        Ball { mid: &self.mid * &other.mid, rad }
    }

    pub fn mul(&self, other: &Ball, p: u32) -> Ball {
        self.mul_exact(other).round(p)
    }

    pub fn mul_int(&self, k: &BigInt, p: u32) -> Ball {
        self.mul(&Ball::from_int(k.clone()), p)
    }

    pub fn mul_rat(&self, r: &Rat, p: u32) -> Ball {
        self.mul(&Ball::from_rat(r, p + 8), p)
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(k), rad: self.rad.mul_pow2(k) }
    }

    /// Quotient; fails when the divisor ball contains zero.
    pub fn div(&self, other: &Ball, p: u32) -> Result<Ball> {
        if other.contains_zero() {
            return Err(Error::domain("division by a ball containing zero"));
        }
        let b_abs = other.mid.abs();
        let b_low = &b_abs - &other.rad.to_bigfloat();
        let (mid, round_err) = self.mid.div(&other.mid, p);
        // |a/b − ã/b̃| <= (ra·|b̃| + |ã|·rb) / (|b̃|·(|b̃| − rb))
        let num = self.rad.mul_big(&b_abs).add(other.rad.mul_big(&self.mid));
        let prop = num
            .div_lower(&(&b_abs * &b_low))
            .expect("positive lower bound");
        Ok(Ball { mid, rad: prop.add(round_err) }.round(p))
    }

    pub fn div_int(&self, k: &BigInt, p: u32) -> Result<Ball> {
        self.div(&Ball::from_int(k.clone()), p)
    }

    /// `log2` of the relative radius; `-inf` for exact values.
    pub fn relative_error_log2(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        if self.mid.is_zero() {
            return f64::INFINITY;
        }
        self.rad.log2() - ErrBound::upper_of(&self.mid).log2()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Number of correct significant decimal digits implied by the radius
    /// (at least one, at most `cap`).
    pub fn certified_digits(&self, cap: usize) -> usize {
        let rel = self.relative_error_log2();
        if rel == f64::NEG_INFINITY {
            return cap;
        }
        let d = (-rel * std::f64::consts::LOG10_2).floor();
        if d.is_nan() || d < 1.0 {
            1
        } else {
            (d as usize).min(cap)
        }
    }

    /// Midpoint rendered with the digits the radius supports, plus one.
    /// Exact values are printed without trailing zeros.
    pub fn value_string(&self) -> String {
        if self.rad.is_zero() {
            return strip_trailing_zeros(self.mid.to_decimal(60));
        }
        self.mid.to_decimal(self.certified_digits(4000) + 1)
    }

    pub fn error_string(&self) -> String {
        self.rad.to_decimal_up(3)
    }

}

fn strip_trailing_zeros(s: String) -> String {
    let (body, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s.as_str(), ""),
    };
    if !body.contains('.') {
        return s;
    }
    let trimmed = body.trim_end_matches('0').trim_end_matches('.');
    format!("{trimmed}{exp}")
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value_string(), self.error_string())
    }
}
