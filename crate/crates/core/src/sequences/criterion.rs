use num_bigint::BigInt;

use super::log_part::{bit_len, check_n, d_2n, log_s_from_product};
use crate::error::{Error, Result};
use crate::exact::{binomial_row, harmonic, nat_to_rat, Int, Rat};
use crate::mp::{
    frac_part_ball, ln2_const, ln_point, log_rising, pi_const, Ball, BigFloat, ErrBound, PrecisionPolicy,
};

/// `{log S_n}` and `Q_n = (16^n·n/d_{2n})·{log S_n}` with distances to the two candidate limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionProbe {
    pub n: u64,
    pub log_s: Ball,
    pub floor_log_s: BigInt,
    pub frac_log_s: Ball,
    pub q: Ball,
    /// `|Q_n|`.
    pub dist_zero: Ball,
    /// `|Q_n − π/(6 ln 2)|`.
    pub dist_target: Ball,
    pub precision: u32,
}

/// `π/(6 ln 2)`.
pub fn criterion_target(p: u32) -> Ball {
    pi_const(p + 8)
        .div(&ln2_const(p + 8).mul_int(&BigInt::from(6), p + 8), p)
        .expect("ln 2 is positive")
}

/// `16^n·n/d_{2n}`.
pub fn criterion_scale(n: u64) -> Result<Rat> {
    let d = d_2n(n)?;
    let num = (Int::from(1) << (4 * n) as usize) * Int::from(n);
    Ok(Rat::new(num, Int::from(d)))
}

/// Probe at a fixed working precision `p`.
///
/// Fails with [`Error::PrecisionInsufficient`] when `{log S_n}` is not
/// certified to `frac_bits` bits or its integer part is ambiguous.
pub fn criterion_probe_at(n: u64, p: u32, frac_bits: u32) -> Result<CriterionProbe> {
    check_n(n)?;
    let log_s = log_s_from_product(n, p)?;
    let need = ErrBound::pow2(-(frac_bits as i64));
    if log_s.rad() > need {
        let extra = (log_s.rad().log2() + frac_bits as f64).ceil().max(1.0) as u64 + 1;
        return Err(Error::PrecisionInsufficient { extra_bits: extra });
    }
    let (floor_log_s, frac_log_s) = frac_part_ball(&log_s)?;
    let q = frac_log_s.mul_rat(&criterion_scale(n)?, p);
    let dist_target = q.sub(&criterion_target(p), p).abs();
    Ok(CriterionProbe { n, dist_zero: q.abs(), dist_target, log_s, floor_log_s, frac_log_s, q, precision: p })
}

/// Probe with automatic precision: starts at `bits(d_{2n}) + 2n + frac_bits + guard`
/// and escalates per the policy.
pub fn criterion_probe(n: u64, policy: &PrecisionPolicy) -> Result<CriterionProbe> {
    check_n(n)?;
    policy.validate()?;
    let magnitude = d_2n(n)?.bits() as u32 + 2 * n as u32;
    policy.run(magnitude, |p| criterion_probe_at(n, p, policy.frac_bits)).map(|(v, _)| v)
}

/// `S_n(r) = Σ_j C(n,j)²·(2(H_{n−j} − H_j)·ln((n+j+r)!) + ln(n+j+r))`.
///
/// Since `Σ_j C(n,j)²(H_{n−j} − H_j) = 0`, each `ln((n+j+r)!)` is replaced by
/// `ln((n+j+r)!/(n+r)!)`, which keeps the work independent of `r`.
pub fn s_limit_probe(n: u64, r: u64, p: u32) -> Result<Ball> {
    check_n(n)?;
    if r == 0 {
        return Err(Error::domain("r must be at least 1"));
    }
    let q = p + 3 * n as u32 + 2 * bit_len(n + r) + 32;
    let row = binomial_row(n);
    let mut acc = Ball::zero();
    for j in 0..=n {
        let c = nat_to_rat(&(&row[j as usize] * &row[j as usize]));
        let h = harmonic(n - j) - harmonic(j);
        let two = Rat::from_integer(Int::from(2));
        let rising = log_rising(n + r, j, q);
        let ln_top = ln_point(&BigFloat::from_int(n + j + r), q)?;
        acc = acc.add_exact(&rising.mul_rat(&(&c * &h * two), q).add(&ln_top.mul_rat(&c, q), q));
    }
    Ok(acc.round(p))
}

/// `A_n = Σ_j C(n,j)²·H_{n+j}` in floating arithmetic with cumulative harmonic sums.
pub fn a_float(n: u64, p: u32) -> Result<Ball> {
    check_n(n)?;
    let q = p + 2 * bit_len(n) + 16;
    let row = binomial_row(n);
    let mut h = Ball::zero();
    for k in 1..=n {
        h = h.add(&Ball::from_int(1).div_int(&BigInt::from(k), q)?, q);
    }
    let mut acc = Ball::zero();
    for j in 0..=n {
        if j > 0 {
            h = h.add(&Ball::from_int(1).div_int(&BigInt::from(n + j), q)?, q);
        }
        let c = Ball::from_int(Int::from(&row[j as usize] * &row[j as usize]));
        acc = acc.add(&h.mul(&c, q), q);
    }
    Ok(acc.round(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::a_exact;

    fn policy(frac_bits: u32) -> PrecisionPolicy {
        PrecisionPolicy { frac_bits, ..Default::default() }
    }

    #[test]
    fn probe_small_n() {
        let c1 = criterion_probe(1, &policy(64)).unwrap();
        assert_eq!(c1.floor_log_s, BigInt::from(2));
        assert!(c1.frac_log_s.mid().to_decimal(20).starts_with("0.7725887222397812376"));
        assert!(c1.q.mid().to_decimal(20).starts_with("6.180709777918249901"));
        let c2 = criterion_probe(2, &policy(64)).unwrap();
        assert_eq!(c2.floor_log_s, BigInt::from(89));
        assert!(c2.q.mid().to_decimal(18).starts_with("19.483280741035143"));
        let c3 = criterion_probe(3, &policy(64)).unwrap();
        assert_eq!(c3.floor_log_s, BigInt::from(1922));
        assert!(c3.q.mid().to_decimal(18).starts_with("70.585574699892944"));
        let c10 = criterion_probe(10, &policy(64)).unwrap();
        assert_eq!(c10.floor_log_s, BigInt::from(117_771_890_833_670u64));
        assert!(c10.frac_log_s.mid().to_decimal(18).starts_with("0.258560607920193963"));
        assert!(c10.q.mid().to_decimal(18).starts_with("12212.1770082808738"));
        assert!((c1.dist_target.to_f64() - (6.1807097779182499014 - 0.75539335697119896827)).abs() < 1e-15);
    }

    #[test]
    fn probe_escalates_from_a_low_start() {
        let p = PrecisionPolicy { initial_bits: Some(40), max_bits: 4096, ..policy(64) };
        let c = criterion_probe(6, &p).unwrap();
        assert!(c.precision > 40);
        assert!(c.frac_log_s.rad().log2() <= -64.0);
        let capped = PrecisionPolicy { max_bits: 130, ..p };
        assert!(matches!(criterion_probe(30, &capped), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn precision_doubling_agrees() {
        let base = criterion_probe(12, &policy(48)).unwrap();
        let twice = criterion_probe_at(12, 2 * base.precision, 48).unwrap();
        let diff = base.frac_log_s.sub(&twice.frac_log_s, 400);
        assert!(diff.abs_upper().log2() <= -40.0);
    }

    #[test]
    fn s_limit_small_n() {
        let p = 96;
        let s = s_limit_probe(1, 1000, p).unwrap();
        // ln(1001/1002)
        assert!((s.to_f64() + 0.000998502329589523).abs() < 1e-17);
        let values: Vec<f64> = [10u64, 1000, 1_000_000].iter().map(|&r| s_limit_probe(1, r, p).unwrap().to_f64()).collect();
        assert!(values[2].abs() < values[1].abs() && values[1].abs() < values[0].abs());
        assert!((s_limit_probe(3, 100, p).unwrap().to_f64() + 0.0955450845594748).abs() < 1e-14);
        assert!((s_limit_probe(5, 1000, p).unwrap().to_f64() + 0.12504143175097).abs() < 1e-12);
        assert!(s_limit_probe(3, 0, p).is_err());
    }

    #[test]
    fn a_float_matches_exact() {
        for (n, p) in [(1u64, 64u32), (2, 64), (40, 128), (300, 160)] {
            let f = a_float(n, p).unwrap();
            let exact = Ball::from_rat(&a_exact(n), p + 64);
            assert!(f.overlaps(&exact), "n = {n}");
            assert!(f.relative_error_log2() <= -(p as f64) + 32.0 + (n as f64).log2());
        }
    }
}
