use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ball::Ball;
use super::bound::ErrBound;
use super::float::BigFloat;
use crate::error::{Error, Result};

/// Extra fixed-point bits carried inside series evaluations.
const INNER_GUARD: u32 = 32;

/// The memoized constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Ln2,
    Pi,
    EulerGamma,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Ln2 => "ln2",
            Constant::Pi => "pi",
            Constant::EulerGamma => "euler_gamma",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "ln2" => Some(Constant::Ln2),
            "pi" => Some(Constant::Pi),
            "euler_gamma" => Some(Constant::EulerGamma),
            _ => None,
        }
    }
}

static CONSTANTS: Mutex<BTreeMap<(Constant, u32), Ball>> = Mutex::new(BTreeMap::new());

pub(crate) fn memo_constant(c: Constant, p: u32, compute: impl FnOnce() -> Ball) -> Ball {
    if let Some(v) = CONSTANTS.lock().unwrap_or_else(|e| e.into_inner()).get(&(c, p)) {
        return v.clone();
    }
    // Computed outside the lock; a concurrent fill stores the identical value.
    let v = compute();
    CONSTANTS
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry((c, p))
        .or_insert(v)
        .clone()
}

/// Snapshot of every memoized constant, ordered by `(constant, precision)`.
pub fn constant_snapshot() -> Vec<(Constant, u32, Ball)> {
    CONSTANTS
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .iter()
        .map(|(&(c, p), v)| (c, p, v.clone()))
        .collect()
}

/// Seeds the memo with a previously computed value (e.g. from a disk cache).
pub fn preload_constant(c: Constant, p: u32, value: Ball) {
    CONSTANTS
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry((c, p))
        .or_insert(value);
}

fn fixed_to_ball(sum: BigInt, w: u32, err_ulps: u64, p: u32) -> Ball {
    Ball::new(BigFloat::from_parts(sum, -(w as i64)), ErrBound::ulps(err_ulps, -(w as i64))).round(p)
}

/// `ln 2 = 2·atanh(1/3) = 2·Σ 1/((2k+1)·3^(2k+1))`.
pub fn ln2_const(p: u32) -> Ball {
    memo_constant(Constant::Ln2, p, || {
        let w = p + INNER_GUARD;
        let mut power = (BigInt::one() << w) / 3u32; // ≈ 3^-(2k+1), error < 1.125 ulp
        let mut sum = BigInt::zero();
        let mut k: u64 = 0;
        while !power.is_zero() {
            sum += &power / (2 * k + 1);
            power /= 9u32;
            k += 1;
        }
        // each term < 2.2 ulp off, tail < 1.2 ulp; doubled
        fixed_to_ball(sum << 1, w, 5 * k + 8, p)
    })
}

/// `atan(1/m)` in fixed point with `w` fractional bits; returns (value, error in ulps).
fn atan_inv(m: u32, w: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m) * m;
    let mut power = (BigInt::one() << w) / m;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    (sum, 3 * k + 3)
}

/// `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi_const(p: u32) -> Ball {
    memo_constant(Constant::Pi, p, || {
        let w = p + INNER_GUARD;
        let (a, ea) = atan_inv(5, w);
        let (b, eb) = atan_inv(239, w);
        fixed_to_ball(a * 16 - b * 4, w, 16 * ea + 4 * eb, p)
    })
}

/// Natural logarithm of a positive dyadic with the error of the evaluation.
///
/// `x = m·2^e` with `m` reduced to `[1/√2, √2)`, then `ln m = 2·atanh((m−1)/(m+1))`.
/// The result satisfies `|result − ln x| <= 2^(1−p)·max(1, |ln x|)`.
pub fn ln_point(x: &BigFloat, p: u32) -> Result<Ball> {
    if x.signum() <= 0 {
        return Err(Error::domain("ln of a non-positive number"));
    }
    let b = x.bits();
    let mut e = x.exponent() + b as i64 - 1;
    let ebits = 64 - e.unsigned_abs().leading_zeros();
    if b == 1 {
        // power of two
        if e == 0 {
            return Ok(Ball::zero());
        }
        return Ok(ln2_const(p + ebits + 8).mul_int(&BigInt::from(e), p));
    }
    let w = p + INNER_GUARD + 8;
    let mant = x.mantissa().magnitude().clone();
    // m = mant / 2^(b−1) as a fixed-point integer with w fractional bits
    let mut fixed: BigUint = if b - 1 <= w as u64 {
        mant << (w as u64 - (b - 1))
    } else {
        mant >> (b - 1 - w as u64)
    };
    let one = BigUint::one() << w;
    // m > √2  ⇔  m² > 2
    if &fixed * &fixed > (&one * &one) << 1u32 {
        fixed >>= 1u32;
        e += 1;
    }
    let (num, negative) = if fixed >= one { (&fixed - &one, false) } else { (&one - &fixed, true) };
    let z: BigUint = (num << w) / (&fixed + &one);
    let z2 = (&z * &z) >> w;
    let mut sum = BigUint::zero();
    let mut power = z;
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / (2 * k + 1);
        power = (&power * &z2) >> w;
        k += 1;
    }
    let sum = BigInt::from(sum << 1u32);
    let sum = if negative { -sum } else { sum };
    let ln_m = Ball::new(BigFloat::from_parts(sum, -(w as i64)), ErrBound::ulps(10 * k + 20, -(w as i64)));
    if e == 0 {
        return Ok(ln_m.round(p));
    }
    let ebits = 64 - e.unsigned_abs().leading_zeros();
    let scaled = ln2_const(p + ebits + 8).mul_int(&BigInt::from(e), p + 8);
    Ok(ln_m.add(&scaled, p))
}

impl Ball {
    /// `ln` of every point of the ball; fails unless the ball is strictly positive.
    pub fn ln(&self, p: u32) -> Result<Ball> {
        let low = self.lower();
        if low.signum() <= 0 {
            return Err(Error::domain("ln of a ball reaching zero or below"));
        }
        let at_mid = ln_point(self.mid(), p)?;
        if self.rad().is_zero() {
            return Ok(at_mid);
        }
        let prop = self.rad().div_lower(&low).expect("positive");
        Ok(at_mid.widen(prop))
    }

    /// Square root; fails unless the ball is non-negative.
    pub fn sqrt(&self, p: u32) -> Result<Ball> {
        if self.mid().is_zero() && self.rad().is_zero() {
            return Ok(Ball::zero());
        }
        let low = self.lower();
        if low.signum() <= 0 {
            return Err(Error::domain("sqrt of a ball reaching zero or below"));
        }
        let mid = self.mid();
        // mant·2^exp with an even exponent and at least 2p+4 bits
        let mut shift = (2 * p as i64 + 4 - mid.bits() as i64).max(0);
        if (mid.exponent() - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = mid.mantissa().magnitude().clone() << shift as u64;
        let root = scaled.sqrt();
        let half_exp = (mid.exponent() - shift) / 2;
        let floor_root = BigFloat::from_parts(BigInt::from(root), half_exp);
        let mut rad = ErrBound::pow2(half_exp);
        if !self.rad().is_zero() {
            // |√a − √m| = |a − m|/(√a + √m) <= rad/√m
            rad = rad.add(self.rad().div_lower(&floor_root).expect("positive root"));
        }
        Ok(Ball::new(floor_root, rad).round(p))
    }
}
