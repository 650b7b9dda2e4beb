use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bound::ErrBound;
use crate::exact::Rat;

/// Exact dyadic number `mantissa·2^exponent`.
///
/// Arithmetic through the operator traits is exact; rounding happens only in
/// [`BigFloat::round`], [`BigFloat::div`] and [`BigFloat::from_rat`], each of
/// which returns the rounding error alongside the value. The representation is
/// canonical (odd mantissa, or zero with exponent 0), so `==` is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            return BigFloat { mant, exp };
        }
        BigFloat { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::from_parts(v.into(), 0)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1 << 52), raw_exp - 1075) };
        Self::from_parts(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Smallest `k` with `|x| < 2^k`; `i64::MIN` for zero.
    pub fn magnitude_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bits() as i64
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to nearest with `p` significant bits.
    pub fn round(&self, p: u32) -> (Self, ErrBound) {
        let bits = self.bits();
        if bits <= p as u64 {
            return (self.clone(), ErrBound::ZERO);
        }
        let shift = bits - p as u64;
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let mut q = mag >> shift;
        if mag.bit(shift - 1) {
            q += 1u32;
        }
        let q = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
        let err = ErrBound::pow2(self.exp + shift as i64 - 1);
        (Self::from_parts(q, self.exp + shift as i64), err)
    }

    /// Quotient with at least `p` significant bits; error below one unit in the last place.
    pub fn div(&self, other: &Self, p: u32) -> (Self, ErrBound) {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return (Self::zero(), ErrBound::ZERO);
        }
        let k = (p as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0);
        let num = &self.mant << k as usize;
        let (q, r) = num.div_rem(&other.mant);
        let exp = self.exp - other.exp - k;
        let err = if r.is_zero() { ErrBound::ZERO } else { ErrBound::pow2(exp) };
        (Self::from_parts(q, exp), err)
    }

    /// Nearest-below-in-magnitude approximation of a rational with `p` bits.
    pub fn from_rat(r: &Rat, p: u32) -> (Self, ErrBound) {
        let num = Self::from_int(r.numer().clone());
        let den = Self::from_int(r.denom().clone());
        if den.mant.is_one() {
            // denominator is a power of two (or one)
            return (num.mul_pow2(-den.exp), ErrBound::ZERO);
        }
        num.div(&den, p)
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            // arithmetic shift rounds toward −∞
            &self.mant >> (-self.exp) as usize
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 64 {
            let shift = bits - 64;
            ((&self.mant >> shift).to_f64().unwrap_or(0.0), self.exp + shift as i64)
        } else {
            (self.mant.to_f64().unwrap_or(0.0), self.exp)
        };
        let e = e.clamp(-2200, 2200) as i32;
        if e < -1000 {
            m * 2f64.powi(-1000) * 2f64.powi(e + 1000)
        } else {
            m * 2f64.powi(e)
        }
    }

    /// Decimal rendering with `sig` significant digits, rounded to nearest.
    /// Positional notation for moderate magnitudes, scientific otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (digits, e10) = self.decimal_digits(sig, false);
        let neg = self.signum() < 0;
        let body = if (-5..21).contains(&e10) { positional(&digits, e10) } else { scientific(&digits, e10) };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Scientific notation of `|x|`, rounded up when `up`, else to nearest.
    pub(crate) fn to_sci_directed(&self, sig: usize, up: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (digits, e10) = self.decimal_digits(sig, up);
        let mut s = String::new();
        s.push_str(&digits[..1]);
        if digits.len() > 1 {
            s.push('.');
            s.push_str(&digits[1..]);
        }
        format!("{s}e{e10}")
    }

    /// `sig` decimal digits `d` and exponent `e10` with `|x| ≈ 0.d·10^(e10+1)`,
    /// i.e. the first digit has weight `10^e10`.
    fn decimal_digits(&self, sig: usize, up: bool) -> (String, i64) {
        let sig = sig.max(1);
        let mag = self.abs();
        let mut e10 = ((mag.magnitude_exp() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let lo = num_traits::pow(BigInt::from(10), sig - 1);
        let hi = &lo * 10;
        loop {
            let t = sig as i64 - 1 - e10;
            let mut num = mag.mant.clone();
            let mut den = BigInt::one();
            if mag.exp >= 0 {
                num <<= mag.exp as usize;
            } else {
                den <<= (-mag.exp) as usize;
            }
            if t >= 0 {
                num *= num_traits::pow(BigInt::from(10), t as usize);
            } else {
                den *= num_traits::pow(BigInt::from(10), (-t) as usize);
            }
            let (q, r) = num.div_rem(&den);
            let q = if up {
                if r.is_zero() { q } else { q + 1 }
            } else if (&r << 1usize) >= den {
                q + 1
            } else {
                q
            };
            if q >= hi {
                e10 += 1;
                continue;
            }
            if q < lo {
                e10 -= 1;
                continue;
            }
            return (q.to_string(), e10);
        }
    }
}

fn positional(digits: &str, e10: i64) -> String {
    let sig = digits.len() as i64;
    if e10 < 0 {
        let zeros = "0".repeat((-e10 - 1) as usize);
        return format!("0.{zeros}{digits}");
    }
    if e10 + 1 >= sig {
        let zeros = "0".repeat((e10 + 1 - sig) as usize);
        return format!("{digits}{zeros}");
    }
    let split = (e10 + 1) as usize;
    format!("{}.{}", &digits[..split], &digits[split..])
}

fn scientific(digits: &str, e10: i64) -> String {
    if digits.len() == 1 {
        format!("{digits}e{e10}")
    } else {
        format!("{}.{}e{e10}", &digits[..1], &digits[1..])
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;

    fn add(self, rhs: &BigFloat) -> BigFloat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        BigFloat::from_parts(a + b, e)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;

    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self + &(-rhs)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;

    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;

    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;

    fn neg(self) -> BigFloat {
        BigFloat { mant: -self.mant, exp: self.exp }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(20)))
    }
}
