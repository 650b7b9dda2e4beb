//! Asymptotic laws as ratio-to-model scans over `n`.
//!
//! A "~" claim is checked by a two-point trend (the ratio is closer to 1 at the
//! high end of the range) and an Aitken Δ² extrapolation of the ratios.

mod aitken;

pub use aitken::{aitken_limit, AitkenResult};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{a_exact, binomial, lcm_upto, squared_deviation_sum, Int, Rat};
use crate::mp::{euler_gamma, ln2_const, pi_const, Ball, ErrBound};
use crate::sequences::{a_float, i_series, l_from_log_factorials};

/// Precision of model and measured values.
pub const LAW_PRECISION: u32 = 128;

/// Largest `n` for which `A_n` is taken from the exact rational.
pub const EXACT_A_LIMIT: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// `I_n ~ π/(6 ln 2)·1/(n·16^n)`.
    IntegralDecay,
    /// `L_n = C(2n,n)·(ln(3n/2) + O(1/n))`.
    LogPart,
    /// `A_n ~ 4^n/√(πn)·(γ + ln(3/2) + ln n)`.
    RationalPart,
    /// `L_n ~ 4^n/√(πn)·(ln(3/2) + ln n)`.
    LogPartCentral,
    /// `C(2n,n) ~ 4^n/√(πn)`.
    CentralBinomial,
    /// `ln d_{2n} ~ 2n`; report-only.
    LcmGrowth,
    /// `Σ_j C(n,j)²(1/2 − j/n)² ~ C(2n,n)/(8n)`.
    SquaredDeviation,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::IntegralDecay,
        Law::LogPart,
        Law::RationalPart,
        Law::LogPartCentral,
        Law::CentralBinomial,
        Law::LcmGrowth,
        Law::SquaredDeviation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::IntegralDecay => "integral-decay",
            Law::LogPart => "log-part",
            Law::RationalPart => "rational-part",
            Law::LogPartCentral => "log-part-central",
            Law::CentralBinomial => "central-binomial",
            Law::LcmGrowth => "lcm-growth",
            Law::SquaredDeviation => "squared-deviation",
        }
    }

    pub fn from_id(id: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.id() == id)
    }

    pub fn description(self) -> &'static str {
        match self {
            Law::IntegralDecay => "I_n·n·16^n / (π/(6 ln 2))",
            Law::LogPart => "L_n / (C(2n,n)·ln(3n/2))",
            Law::RationalPart => "A_n / (4^n/√(πn)·(γ + ln(3/2) + ln n))",
            Law::LogPartCentral => "L_n / (4^n/√(πn)·(ln(3/2) + ln n))",
            Law::CentralBinomial => "C(2n,n)·√(πn)/4^n",
            Law::LcmGrowth => "ln(d_2n)/(2n)",
            Law::SquaredDeviation => "8n·Σ_j C(n,j)²(1/2 − j/n)² / C(2n,n)",
        }
    }

    /// Laws whose convergence is too slow to assert anything about.
    pub fn report_only(self) -> bool {
        matches!(self, Law::LcmGrowth)
    }

    /// `(n_lo, n_hi)` of the trend check.
    pub fn trend_pair(self) -> (u64, u64) {
        match self {
            Law::IntegralDecay => (10, 40),
            Law::LogPart | Law::LogPartCentral => (20, 200),
            Law::RationalPart => (50, 500),
            Law::CentralBinomial | Law::LcmGrowth => (10, 1000),
            Law::SquaredDeviation => (40, 400),
        }
    }

    /// Roughly geometric scan points covering the trend pair.
    pub fn default_points(self) -> Vec<u64> {
        match self {
            Law::IntegralDecay => vec![1, 5, 10, 20, 40],
            Law::LogPart | Law::LogPartCentral => vec![2, 20, 50, 100, 200],
            Law::RationalPart => vec![1, 2, 50, 100, 200, 500],
            Law::CentralBinomial | Law::LcmGrowth => vec![1, 10, 100, 500, 1000],
            Law::SquaredDeviation => vec![1, 2, 40, 100, 400],
        }
    }
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// One point of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: u64,
    pub model: Ball,
    pub measured: Ball,
    pub ratio: Ball,
    /// `n·(L_n/C(2n,n) − ln(3n/2))` for [`Law::LogPart`], `n·(ratio − 1)` otherwise.
    pub residual: Ball,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrendSummary {
    /// `|ratio − 1|` is non-increasing along the rows.
    pub monotone: bool,
    /// `|ratio − 1|` is strictly smaller at the last row than at the first.
    pub closer_at_end: bool,
    pub aitken: Option<AitkenResult>,
    /// Largest `|residual|` over the rows.
    pub max_abs_residual: f64,
}

impl TrendSummary {
    pub fn from_rows(rows: &[ConvergenceRow]) -> TrendSummary {
        let gaps: Vec<f64> = rows.iter().map(|r| (r.ratio.to_f64() - 1.0).abs()).collect();
        let ratios: Vec<f64> = rows.iter().map(|r| r.ratio.to_f64()).collect();
        TrendSummary {
            monotone: gaps.windows(2).all(|w| w[1] <= w[0]),
            closer_at_end: gaps.len() >= 2 && gaps[gaps.len() - 1] < gaps[0],
            aitken: aitken_limit(&ratios).ok(),
            max_abs_residual: rows.iter().map(|r| r.residual.to_f64().abs()).fold(0.0, f64::max),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub law: Law,
    pub rows: Vec<ConvergenceRow>,
    pub summary: TrendSummary,
}

impl ConvergenceReport {
    /// Rows sorted by `n`, with the summary recomputed.
    pub fn from_rows(law: Law, mut rows: Vec<ConvergenceRow>) -> Self {
        rows.sort_by_key(|r| r.n);
        let summary = TrendSummary::from_rows(&rows);
        ConvergenceReport { law, rows, summary }
    }

    /// Trend check between the law's designated pair, if both are present.
    pub fn trend_holds(&self) -> Option<bool> {
        let (lo, hi) = self.law.trend_pair();
        let gap = |n: u64| self.rows.iter().find(|r| r.n == n).map(|r| (r.ratio.to_f64() - 1.0).abs());
        Some(gap(hi)? < gap(lo)?)
    }
}

/// `4^n/√(πn)`.
fn central_model(n: u64, p: u32) -> Result<Ball> {
    let root = pi_const(p + 8).mul_int(&BigInt::from(n), p + 8).sqrt(p + 8)?;
    Ball::from_int(Int::from(1) << (2 * n) as usize).div(&root, p)
}

/// `ln(3/2) + ln n = ln(3n/2)`.
fn ln_three_n_halves(n: u64, p: u32) -> Result<Ball> {
    Ball::from_rat(&Rat::new(Int::from(3 * n), Int::from(2)), p + 8).ln(p)
}

fn measured_a(n: u64, p: u32) -> Result<Ball> {
    if n <= EXACT_A_LIMIT {
        Ok(Ball::from_rat(&a_exact(n), p))
    } else {
        a_float(n, p)
    }
}

/// Evaluates one law at one `n` (`n >= 1`).
pub fn law_row(law: Law, n: u64) -> Result<ConvergenceRow> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let p = LAW_PRECISION;
    let one = Ball::from_int(1);
    let central = || -> Result<Ball> { Ok(Ball::from_int(Int::from(binomial(2 * n, n)?))) };
    let (model, measured) = match law {
        Law::IntegralDecay => {
            let target = pi_const(p + 8).div(&ln2_const(p + 8).mul_int(&BigInt::from(6), p + 8), p + 8)?;
            let scale = Ball::from_int(Int::from(n) << (4 * n) as usize);
            let model = target.div(&scale, p)?;
            let eps = ErrBound::pow2(-(4 * n as i64 + 64 - n.leading_zeros() as i64 + p as i64));
            (model, i_series(n, eps)?.0)
        }
        Law::LogPart => {
            let model = central()?.mul(&ln_three_n_halves(n, p + 8)?, p);
            (model, l_from_log_factorials(n, p)?)
        }
        Law::RationalPart => {
            let bracket = euler_gamma(p + 8).add(&ln_three_n_halves(n, p + 8)?, p + 8);
            (central_model(n, p + 8)?.mul(&bracket, p), measured_a(n, p)?)
        }
        Law::LogPartCentral => {
            let model = central_model(n, p + 8)?.mul(&ln_three_n_halves(n, p + 8)?, p);
            (model, l_from_log_factorials(n, p)?)
        }
        Law::CentralBinomial => (one.clone(), central()?.div(&central_model(n, p + 8)?, p)?),
        Law::LcmGrowth => {
            let d = lcm_upto(2 * n)?;
            let l = Ball::from_int(Int::from(d)).ln(p + 8)?;
            (one.clone(), l.div_int(&BigInt::from(2 * n), p)?)
        }
        Law::SquaredDeviation => {
            let s = squared_deviation_sum(n)? * Rat::from_integer(Int::from(8 * n));
            let c = Rat::from_integer(Int::from(binomial(2 * n, n)?));
            (one.clone(), Ball::from_rat(&(s / c), p))
        }
    };
    let ratio = measured.div(&model, p)?;
    let residual = match law {
        Law::LogPart => {
            let per = measured.div(&central()?, p + 8)?.sub(&ln_three_n_halves(n, p + 8)?, p + 8);
            per.mul_int(&BigInt::from(n), p)
        }
        _ => ratio.sub(&one, p + 8).mul_int(&BigInt::from(n), p),
    };
    Ok(ConvergenceRow { n, model, measured, ratio, residual })
}

/// Sequential scan over `points`.
pub fn scan(law: Law, points: &[u64]) -> Result<ConvergenceReport> {
    let rows = points.iter().map(|&n| law_row(law, n)).collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_rows(law, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(law: Law, n: u64) -> f64 {
        law_row(law, n).unwrap().ratio.to_f64()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn ids_round_trip() {
        for l in Law::ALL {
            assert_eq!(Law::from_id(l.id()), Some(l));
        }
        assert_eq!(Law::from_id("nope"), None);
    }

    #[test]
    fn hand_values() {
        assert!(close(ratio(Law::IntegralDecay, 1), 0.862611576808115));
        assert!(close(ratio(Law::LogPart, 2), 1.13092975357));
        assert!(close(ratio(Law::RationalPart, 1), 1.12730775573));
        assert!(close(ratio(Law::RationalPart, 2), 1.02054126712));
        assert!(close(ratio(Law::LogPartCentral, 2), 1.06305768635));
        assert!(close(ratio(Law::CentralBinomial, 1), 0.886226925453));
        assert!(close(ratio(Law::CentralBinomial, 10), 0.987582928826));
        assert!(close(ratio(Law::LcmGrowth, 1), std::f64::consts::LN_2 / 2.0));
        assert!(close(ratio(Law::LcmGrowth, 5), 2520f64.ln() / 10.0));
        assert_eq!(ratio(Law::SquaredDeviation, 1), 2.0);
        assert!(close(ratio(Law::SquaredDeviation, 2), 4.0 / 3.0));
        let r = law_row(Law::LogPart, 2).unwrap();
        assert!(close(r.residual.to_f64(), 0.287682072452));
    }

    #[test]
    fn central_binomial_increases_below_one() {
        let mut prev = 0.0;
        for n in [1, 2, 3, 5, 8, 13, 40, 100, 333, 1000] {
            let r = ratio(Law::CentralBinomial, n);
            assert!(r > prev && r < 1.0, "n = {n}");
            prev = r;
        }
    }

    #[test]
    fn integral_decay_trend() {
        let rep = scan(Law::IntegralDecay, &[5, 10, 20, 40]).unwrap();
        assert!(rep.summary.monotone);
        assert_eq!(rep.trend_holds(), Some(true));
        let last = rep.rows.last().unwrap().ratio.to_f64();
        assert!(close(last, 0.994144701192057));
        let a = rep.summary.aitken.unwrap();
        assert!(!a.degenerate);
        assert!((a.value - 1.0).abs() < (last - 1.0).abs());
    }

    #[test]
    fn report_is_recomputable_and_sorted() {
        let rep = scan(Law::SquaredDeviation, &[40, 1, 2]).unwrap();
        assert_eq!(rep.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 2, 40]);
        assert_eq!(TrendSummary::from_rows(&rep.rows), rep.summary);
        assert!(law_row(Law::LogPart, 0).is_err());
    }
}
