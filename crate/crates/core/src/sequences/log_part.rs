use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial_row, harmonic, lcm_upto, nat_to_rat, Int, Nat, Rat};
use crate::mp::{ln_point, log_factorial, Ball, BigFloat, ErrBound};

pub(crate) fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok(())
}

pub(crate) fn bit_len(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Bits added on top of the requested precision to absorb coefficient growth.
pub(crate) fn headroom(n: u64) -> u32 {
    32 + 2 * bit_len(n)
}

/// `d_{2n} = lcm(1, …, 2n)`.
pub fn d_2n(n: u64) -> Result<Nat> {
    check_n(n)?;
    lcm_upto(2 * n)
}

/// Coefficient of `ln((n+j)!)` in `L_n`: `−2·C(n,j)²·(H_{n−j} − H_j)`.
pub fn log_factorial_coefficients(n: u64) -> Vec<Rat> {
    let row = binomial_row(n);
    (0..=n)
        .map(|j| {
            let c = nat_to_rat(&row[j as usize]);
            Rat::from_integer(Int::from(-2)) * &c * &c * (harmonic(n - j) - harmonic(j))
        })
        .collect()
}

/// `L_n = −Σ_j C(n,j)²·2(H_{n−j} − H_j)·ln((n+j)!)`.
pub fn l_from_log_factorials(n: u64, p: u32) -> Result<Ball> {
    check_n(n)?;
    let q = p + headroom(n);
    let mut acc = Ball::zero();
    for (j, c) in log_factorial_coefficients(n).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add_exact(&log_factorial(n + j as u64, q).mul_rat(c, q));
    }
    Ok(acc.round(p))
}

/// Exponents of `S_n = Π_k (n+k)^{E_k}`, as `(n+k, E_k)` for `k = 1..n`.
///
/// `E_k` collects `(2·d_{2n}/j)·C(n,i)²` over `0 <= i <= min(k−1, n−k)` and
/// `i < j <= n−i`. Every `2·d_{2n}/j` is checked to be an integer.
pub fn log_s_exponents(n: u64) -> Result<Vec<(u64, Nat)>> {
    let d = d_2n(n)?;
    let two_d: Nat = &d << 1u32;
    // prefix[j] = Σ_{t<=j} 2d/t
    let mut prefix: Vec<Nat> = Vec::with_capacity(n as usize + 1);
    prefix.push(Nat::zero());
    for j in 1..=n {
        let jn = BigUint::from(j);
        if !(&two_d % &jn).is_zero() {
            return Err(Error::IdentityViolation { identity: "exponent-integrality", n });
        }
        let next = &prefix[j as usize - 1] + &two_d / jn;
        prefix.push(next);
    }
    let row = binomial_row(n);
    // inner[u] = Σ_{i<=u} C(n,i)²·(prefix[n−i] − prefix[i])
    let half = (n - 1) / 2;
    let mut inner: Vec<Nat> = Vec::with_capacity(half as usize + 1);
    for i in 0..=half as usize {
        let term = &row[i] * &row[i] * (&prefix[n as usize - i] - &prefix[i]);
        let next = match inner.last() {
            Some(prev) => prev + term,
            None => term,
        };
        inner.push(next);
    }
    let out = (1..=n).map(|k| (n + k, inner[(k - 1).min(n - k) as usize].clone())).collect();
    Ok(out)
}

/// `log S_n = Σ_k E_k·ln(n+k)`, with relative accuracy about `2^-p`.
pub fn log_s_from_product(n: u64, p: u32) -> Result<Ball> {
    let exps = log_s_exponents(n)?;
    let q = p + bit_len(n) + 16;
    let mut acc = Ball::zero();
    for (base, e) in exps {
        let l = ln_point(&BigFloat::from_int(base), q)?;
        acc = acc.add_exact(&l.mul_exact(&Ball::from_int(Int::from(e))));
    }
    Ok(acc.round(p))
}

/// `L_n = log S_n / d_{2n}`.
pub fn l_from_log_s(n: u64, p: u32) -> Result<Ball> {
    let d = d_2n(n)?;
    log_s_from_product(n, p + 8)?.div_int(&Int::from(d), p)
}

/// Outcome of comparing the two evaluations of `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LConsistency {
    pub from_log_factorials: Ball,
    pub from_log_s: Ball,
    /// `|difference| / |L_n|` as a ball.
    pub relative_difference: Ball,
    /// Sum of the two radii.
    pub budget: ErrBound,
    pub pass: bool,
}

pub fn l_consistency(n: u64, p: u32) -> Result<LConsistency> {
    let a = l_from_log_factorials(n, p)?;
    let b = l_from_log_s(n, p)?;
    let diff = a.sub(&b, p).abs();
    let relative_difference = diff.div(&b, p)?;
    Ok(LConsistency {
        budget: a.rad().add(b.rad()),
        pass: a.overlaps(&b),
        from_log_factorials: a,
        from_log_s: b,
        relative_difference,
    })
}
