//! The exact identity suite run by `gammalab verify`.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::combinatorics::{
    binomial_row, factorial, harmonic, nat_to_rat, small_k_residuals_of, stirling1_row, Int, Rat,
    StirlingRow,
};
use super::identities::{
    central_binomial_residual, integrality_witness, zero_sum_centered_residual,
    zero_sum_one_sided_residual,
};
use super::partial_fractions::{partial_fraction_coeffs, residual_with, PartialFractionCoeffs};

/// Default seed for the rational sample points of the partial-fraction check.
pub const DEFAULT_SEED: u64 = 0x6a09_e667_f3bc_c908;
/// Sample points per `n` in the partial-fraction check.
pub const POINTS_PER_N: usize = 5;

/// Sources of the exact tables the suite checks. Tests override a method to
/// inject a fault and confirm the suite names it.
pub trait ExactKernels: Sync {
    fn stirling_row(&self, m: u64) -> StirlingRow {
        stirling1_row(m)
    }

    fn partial_fractions(&self, n: u64) -> PartialFractionCoeffs {
        partial_fraction_coeffs(n)
    }
}

/// The real kernels.
pub struct Reference;

impl ExactKernels for Reference {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n_max: u64,
    pub stirling_m_max: u64,
    pub symmetry_n_max: u64,
    pub residual_n_max: u64,
    pub seed: u64,
}

impl SuiteConfig {
    /// Ranges used for a given `n_max`: the identity sweeps go to `n_max`,
    /// the partial-fraction checks are capped at 60 (symmetry) and 50 (sampled residual).
    pub fn for_n_max(n_max: u64) -> Self {
        SuiteConfig {
            n_max,
            stirling_m_max: n_max,
            symmetry_n_max: n_max.min(60),
            residual_n_max: n_max.min(50),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub identity: &'static str,
    pub cases: u64,
    /// First failing index, if any.
    pub first_failure: Option<u64>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<(&'static str, u64)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.map(|n| (c.identity, n)))
    }
}

fn sweep(identity: &'static str, range: impl Iterator<Item = u64>, ok: impl Fn(u64) -> bool) -> CheckOutcome {
    let mut cases = 0;
    for i in range {
        cases += 1;
        if !ok(i) {
            return CheckOutcome { identity, cases, first_failure: Some(i) };
        }
    }
    CheckOutcome { identity, cases, first_failure: None }
}

/// Deterministic non-pole rational sample points for the decomposition of order `n`.
pub fn sample_points(n: u64, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = Vec::with_capacity(POINTS_PER_N);
    while out.len() < POINTS_PER_N {
        let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let den: i64 = rng.gen_range(1..=1_000);
        let x = Rat::new(BigInt::from(num), BigInt::from(den));
        let pole = x.is_integer() && x <= Rat::zero() && -x.to_integer() <= BigInt::from(n);
        if !pole && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub fn run_suite(config: &SuiteConfig, kernels: &dyn ExactKernels) -> SuiteReport {
    let n_max = config.n_max;
    let mut checks = Vec::new();

    checks.push(sweep("stirling-small-k", 0..=config.stirling_m_max, |m| {
        let (r0, r1, r2) = small_k_residuals_of(&kernels.stirling_row(m + 1), m);
        r0.is_zero() && r1.is_zero() && r2.is_zero()
    }));
    checks.push(sweep("stirling-row-sum", 0..=config.stirling_m_max, |m| {
        kernels.stirling_row(m).sum() == factorial(m)
    }));
    checks.push(sweep("partial-fraction-symmetry", 0..=config.symmetry_n_max, |n| {
        let c = kernels.partial_fractions(n);
        let n = n as usize;
        let sum: Rat = c.a.iter().sum();
        sum.is_zero()
            && (0..=n).all(|k| c.a[n - k] == -c.a[k].clone() && c.b[n - k] == c.b[k] && c.b[k] > Rat::zero())
    }));
    checks.push(sweep("partial-fraction-scaling", 0..=config.symmetry_n_max, |n| {
        let c = kernels.partial_fractions(n);
        let nf = nat_to_rat(&factorial(n));
        let sq = &nf * &nf;
        let row = binomial_row(n);
        (0..=n).all(|k| {
            let ck = nat_to_rat(&row[k as usize]);
            let c2 = &ck * &ck;
            let ku = k as usize;
            &sq * &c.b[ku] == c2
                && &sq * &c.a[ku]
                    == Rat::from_integer(Int::from(2)) * &c2 * (harmonic(k) - harmonic(n - k))
        })
    }));
    checks.push(sweep("partial-fraction-residual", 1..=config.residual_n_max, |n| {
        let c = kernels.partial_fractions(n);
        sample_points(n, config.seed)
            .iter()
            .all(|x| residual_with(&c, x).map(|r| r.is_zero()).unwrap_or(false))
    }));
    checks.push(sweep("zero-sum-centered", 1..=n_max, |n| zero_sum_centered_residual(n).is_zero()));
    checks.push(sweep("zero-sum-one-sided", 1..=n_max, |n| zero_sum_one_sided_residual(n).is_zero()));
    checks.push(sweep("integrality", 1..=n_max, |n| integrality_witness(n).is_ok()));
    checks.push(sweep("central-binomial", 0..=n_max, |n| central_binomial_residual(n).is_zero()));

    SuiteReport { checks }
}
