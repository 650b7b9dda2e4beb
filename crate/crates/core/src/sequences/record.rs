use std::time::Instant;

use num_bigint::BigInt;

use super::criterion::criterion_probe;
use super::integral::{cancellation_floor, i_closed_form, i_series_with, TailBound, TailMethod};
use super::log_part::{d_2n, l_from_log_factorials, l_from_log_s};
use crate::error::Result;
use crate::exact::{a_exact, Nat, Rat};
use crate::mp::{Ball, ErrBound, PrecisionPolicy};

/// Inputs of [`build_record`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RecordConfig {
    pub policy: PrecisionPolicy,
    /// Absolute tolerance for the series value of `I_n`; see [`default_tail_eps`].
    pub tail_eps: Option<ErrBound>,
    pub tail_method: TailMethod,
}

/// `2^-(4n + frac_bits + 16)`: about `frac_bits` correct bits of `I_n ≈ 16^-n`.
pub fn default_tail_eps(n: u64, frac_bits: u32) -> ErrBound {
    ErrBound::pow2(-(4 * n as i64 + frac_bits as i64 + 16))
}

/// Every per-`n` quantity with its error bound.
///
/// Equality ignores `timings`.
#[derive(Clone, Debug)]
pub struct SeqRecord {
    pub n: u64,
    pub a: Rat,
    pub d_2n: Nat,
    pub l_log_factorials: Ball,
    pub l_log_s: Ball,
    /// The two evaluations of `L_n` overlap.
    pub l_consistent: bool,
    pub log_s: Ball,
    pub floor_log_s: BigInt,
    pub frac_log_s: Ball,
    pub q: Ball,
    pub dist_zero: Ball,
    pub dist_target: Ball,
    pub i_closed: Ball,
    pub i_series: Ball,
    /// The two evaluations of `I_n` overlap.
    pub i_consistent: bool,
    pub i_positive: bool,
    pub precision_used: u32,
    pub tail: TailBound,
    pub tail_method: TailMethod,
    /// Wall-clock seconds per stage.
    pub timings: Vec<(&'static str, f64)>,
}

impl PartialEq for SeqRecord {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n
            && self.a == o.a
            && self.d_2n == o.d_2n
            && self.l_log_factorials == o.l_log_factorials
            && self.l_log_s == o.l_log_s
            && self.l_consistent == o.l_consistent
            && self.log_s == o.log_s
            && self.floor_log_s == o.floor_log_s
            && self.frac_log_s == o.frac_log_s
            && self.q == o.q
            && self.dist_zero == o.dist_zero
            && self.dist_target == o.dist_target
            && self.i_closed == o.i_closed
            && self.i_series == o.i_series
            && self.i_consistent == o.i_consistent
            && self.i_positive == o.i_positive
            && self.precision_used == o.precision_used
            && self.tail == o.tail
            && self.tail_method == o.tail_method
    }
}

impl Eq for SeqRecord {}

impl SeqRecord {
    /// Both cross-method checks passed and the series value is positive.
    pub fn passed(&self) -> bool {
        self.l_consistent && self.i_consistent && self.i_positive
    }
}

fn timed<T>(timings: &mut Vec<(&'static str, f64)>, stage: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let v = f();
    timings.push((stage, start.elapsed().as_secs_f64()));
    v
}

/// Computes the full record for `n`. Deterministic for a fixed `(n, config)`.
pub fn build_record(n: u64, config: &RecordConfig) -> Result<SeqRecord> {
    let mut timings = Vec::new();
    let policy = &config.policy;
    let probe = timed(&mut timings, "criterion", || criterion_probe(n, policy))?;
    let p = probe.precision;
    let l_log_factorials = timed(&mut timings, "l_log_factorials", || l_from_log_factorials(n, p))?;
    let l_log_s = timed(&mut timings, "l_log_s", || l_from_log_s(n, p))?;
    let eps = config.tail_eps.unwrap_or_else(|| default_tail_eps(n, policy.frac_bits));
    let (i_series, tail) = timed(&mut timings, "i_series", || i_series_with(n, eps, config.tail_method))?;
    let closed_p = p.max(cancellation_floor(n) + policy.frac_bits);
    let i_closed = timed(&mut timings, "i_closed", || i_closed_form(n, closed_p))?;
    Ok(SeqRecord {
        n,
        a: a_exact(n),
        d_2n: d_2n(n)?,
        l_consistent: l_log_factorials.overlaps(&l_log_s),
        l_log_factorials,
        l_log_s,
        log_s: probe.log_s,
        floor_log_s: probe.floor_log_s,
        frac_log_s: probe.frac_log_s,
        q: probe.q,
        dist_zero: probe.dist_zero,
        dist_target: probe.dist_target,
        i_consistent: i_closed.overlaps(&i_series),
        i_positive: i_series.is_strictly_positive(),
        i_closed,
        i_series,
        precision_used: p,
        tail,
        tail_method: config.tail_method,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn first_records() {
        let cfg = RecordConfig::default();
        let r1 = build_record(1, &cfg).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.a, Rat::new(BigInt::from(5), BigInt::from(2)));
        assert!((r1.l_log_factorials.to_f64() - 1.3862943611198906).abs() < 1e-15);
        assert!((r1.i_series.to_f64() - 0.04072569092295634).abs() < 1e-16);
        assert!((r1.q.to_f64() - 6.18070977791825).abs() < 1e-13);
        let r2 = build_record(2, &cfg).unwrap();
        assert!(r2.passed());
        assert_eq!(r2.a, Rat::new(BigInt::from(131), BigInt::from(12)));
        assert!((r2.l_log_s.to_f64() - 7.454719949364001).abs() < 1e-14);
        assert!((r2.i_closed.to_f64() - 0.0013472721065314277).abs() < 1e-18);
    }

    #[test]
    fn deterministic() {
        let cfg = RecordConfig::default();
        assert_eq!(build_record(7, &cfg).unwrap(), build_record(7, &cfg).unwrap());
    }
}
