use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::float::BigFloat;
use crate::exact::Rat;

const MANT_BITS: u32 = 30;

/// Non-negative absolute error bound `m·2^e` with a short mantissa.
///
/// Every operation rounds upward, so a bound computed from bounds is still a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ErrBound {
    m: u64,
    e: i64,
}

impl ErrBound {
    pub const ZERO: ErrBound = ErrBound { m: 0, e: 0 };

    fn normalized_up(mut m: u128, mut e: i64) -> Self {
        if m == 0 {
            return Self::ZERO;
        }
        while m >= 1u128 << MANT_BITS {
            m = (m >> 1) + (m & 1);
            e += 1;
        }
        let tz = m.trailing_zeros();
        ErrBound { m: (m >> tz) as u64, e: e + tz as i64 }
    }

    pub fn pow2(e: i64) -> Self {
        ErrBound { m: 1, e }
    }

    /// `k·2^e`.
    pub fn ulps(k: u64, e: i64) -> Self {
        Self::normalized_up(k as u128, e)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn from_parts(m: u64, e: i64) -> Self {
        Self::normalized_up(m as u128, e)
    }

    /// Smallest representable bound that is `>= |x|`.
    pub fn upper_of(x: &BigFloat) -> Self {
        if x.is_zero() {
            return Self::ZERO;
        }
        let mag = x.mantissa().magnitude();
        let bits = mag.bits();
        if bits <= MANT_BITS as u64 {
            return Self::normalized_up(mag.to_u128().unwrap_or(0), x.exponent());
        }
        let shift = bits - MANT_BITS as u64;
        let top_big = mag >> shift;
        let exact = (&top_big << shift) == *mag;
        let top = top_big.to_u128().unwrap_or(0);
        Self::normalized_up(if exact { top } else { top + 1 }, x.exponent() + shift as i64)
    }

    /// Upper bound for a non-negative rational.
    pub fn upper_of_rat(r: &Rat) -> Self {
        let (num, den) = (r.numer().abs(), r.denom().clone());
        if num.is_zero() {
            return Self::ZERO;
        }
        // q = ceil(num·2^s / den) with enough bits, value q·2^-s.
        let s = MANT_BITS as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n2, d2) = if s >= 0 { (num << s as usize, den) } else { (num, den << (-s) as usize) };
        let (q, rem) = n2.div_rem(&d2);
        let q = if rem.is_zero() { q } else { q + 1 };
        Self::upper_of(&BigFloat::from_parts(q, -s))
    }

    /// Largest representable value `<= r` for a positive rational (used for targets).
    pub fn lower_of_rat(r: &Rat) -> Self {
        let (num, den) = (r.numer().abs(), r.denom().clone());
        if num.is_zero() {
            return Self::ZERO;
        }
        let s = MANT_BITS as i64 + den.bits() as i64 - num.bits() as i64;
        let (n2, d2) = if s >= 0 { (num << s as usize, den) } else { (num, den << (-s) as usize) };
        let q = n2 / d2;
        let mut m = q.to_u128().unwrap_or(0);
        let mut e = -s;
        while m >= 1u128 << MANT_BITS {
            m >>= 1;
            e += 1;
        }
        Self::normalized_up(m, e)
    }

    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        let d = (hi.e - lo.e) as u64;
        if d > 90 {
            // lo is far below one unit of hi's last place.
            return Self::normalized_up(hi.m as u128 + 1, hi.e);
        }
        if d <= 60 {
            return Self::normalized_up(((hi.m as u128) << d) + lo.m as u128, lo.e);
        }
        let lo_m = (lo.m as u128 >> (d - 60)) + 1;
        Self::normalized_up(((hi.m as u128) << 60) + lo_m, hi.e - 60)
    }

    pub fn mul(self, other: Self) -> Self {
        Self::normalized_up(self.m as u128 * other.m as u128, self.e + other.e)
    }

    pub fn mul_pow2(self, k: i64) -> Self {
        if self.is_zero() {
            self
        } else {
            ErrBound { m: self.m, e: self.e + k }
        }
    }

    pub fn mul_u64(self, k: u64) -> Self {
        Self::normalized_up(self.m as u128 * k as u128, self.e)
    }

    /// `self·|x|`, rounded up.
    pub fn mul_big(self, x: &BigFloat) -> Self {
        self.mul(Self::upper_of(x))
    }

    /// Upper bound of `self / d` for a strictly positive lower bound `d`.
    pub fn div_lower(self, d: &BigFloat) -> Option<Self> {
        if d.signum() <= 0 {
            return None;
        }
        if self.is_zero() {
            return Some(self);
        }
        let mag = d.mantissa().magnitude();
        let bits = mag.bits();
        let (dl, de) = if bits > 32 {
            let shift = bits - 32;
            ((mag >> shift).to_u128().unwrap_or(1), d.exponent() + shift as i64)
        } else {
            (mag.to_u128().unwrap_or(1), d.exponent())
        };
        let num = (self.m as u128) << 64;
        let q = num / dl + 1;
        Some(Self::normalized_up(q, self.e - 64 - de))
    }

    pub fn to_bigfloat(&self) -> BigFloat {
        BigFloat::from_parts(BigInt::from(self.m), self.e)
    }

    /// `log2` of the bound, `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.m as f64).log2() + self.e as f64
        }
    }

    /// Approximate value; may underflow to zero for very small bounds.
    pub fn to_f64(&self) -> f64 {
        self.to_bigfloat().to_f64()
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Scientific decimal rounded upward, e.g. `1.24e-40`.
    pub fn to_decimal_up(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.to_bigfloat().to_sci_directed(sig, true)
    }

    /// Parses a positive decimal such as `1e-40` or `0.00025` into a bound no
    /// larger than the given value.
    pub fn parse_decimal_down(s: &str) -> Option<Self> {
        let r = parse_decimal_rat(s)?;
        if r.numer().sign() != Sign::Plus {
            return None;
        }
        Some(Self::lower_of_rat(&r))
    }
}

fn parse_decimal_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

impl PartialOrd for ErrBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ErrBound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.to_bigfloat().cmp(&other.to_bigfloat()),
        }
    }
}

impl fmt::Display for ErrBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_up(3))
    }
}

impl Default for ErrBound {
    fn default() -> Self {
        Self::ZERO
    }
}
