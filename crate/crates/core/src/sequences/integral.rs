use num_traits::{One, Signed, Zero};

use super::log_part::{bit_len, check_n, headroom, l_from_log_factorials};
use crate::error::{Error, Result};
use crate::exact::{a_exact, bernoulli, binomial, factorial, nat_to_rat, partial_fraction_coeffs, Int, Rat};
use crate::mp::{euler_gamma, ln_point, Ball, BigFloat, ErrBound};

/// Smallest working precision accepted by [`i_closed_form`].
///
/// The closed form subtracts terms of size about `4^n` to leave a result of
/// size about `16^-n`.
pub fn cancellation_floor(n: u64) -> u32 {
    (6 * n + 64) as u32
}

/// `I_n = C(2n,n)·γ + L_n − A_n`.
pub fn i_closed_form(n: u64, p: u32) -> Result<Ball> {
    check_n(n)?;
    let floor = cancellation_floor(n);
    if p < floor {
        return Err(Error::PrecisionInsufficient { extra_bits: (floor - p) as u64 });
    }
    let q = p + headroom(n);
    let central = Ball::from_int(Int::from(binomial(2 * n, n)?));
    let l = l_from_log_factorials(n, q)?;
    let a = Ball::from_rat(&a_exact(n), q + 8);
    Ok(central.mul(&euler_gamma(q), q).add(&l, q).sub(&a, q).round(p))
}

/// How the omitted tail of the series over `v` is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TailMethod {
    /// Euler–Maclaurin summation of the tail with a remainder bounded by the
    /// first omitted term.
    #[default]
    EulerMaclaurin,
    /// Plain truncation with the majorant `(n!)²·V^{−2n}/((2n+1)·2n)`.
    Majorant,
}

impl TailMethod {
    pub fn name(self) -> &'static str {
        match self {
            TailMethod::EulerMaclaurin => "euler-maclaurin",
            TailMethod::Majorant => "majorant",
        }
    }
}

/// Certified treatment of the series tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    /// First index handled by the tail treatment (Euler–Maclaurin) or last
    /// summed index (majorant).
    pub v_cutoff: u64,
    /// Bound on what the tail treatment leaves out.
    pub bound: ErrBound,
    /// Number of Bernoulli corrections, `None` for the majorant.
    pub em_terms: Option<u32>,
}

/// Largest `V` the majorant mode will sum to.
pub const MAX_MAJORANT_CUTOFF: u64 = 2_000_000;
const MAX_EM_TERMS: u32 = 40;

/// `I_n = Σ_{v>n} F(v)` with `F(v) = ∫_v^∞ (n!/(x(x+1)…(x+n)))² dx`, to absolute error `eps`.
pub fn i_series(n: u64, eps: ErrBound) -> Result<(Ball, TailBound)> {
    i_series_with(n, eps, TailMethod::EulerMaclaurin)
}

pub fn i_series_with(n: u64, eps: ErrBound, method: TailMethod) -> Result<(Ball, TailBound)> {
    check_n(n)?;
    if eps.is_zero() {
        return Err(Error::domain("tail tolerance must be positive"));
    }
    let series = Series::new(n);
    let half = eps.mul_pow2(-1);
    let (v_cutoff, em_terms) = match method {
        TailMethod::EulerMaclaurin => series.choose_em(half),
        TailMethod::Majorant => (series.choose_majorant(half)?, None),
    };
    let mut w = series.initial_precision(v_cutoff, eps);
    for _ in 0..6 {
        let (value, tail) = series.evaluate(v_cutoff, em_terms, w)?;
        if value.rad() <= eps {
            return Ok((value, tail));
        }
        let deficit = (value.rad().log2() - eps.log2()).ceil().max(0.0) as u32;
        w += deficit + 32;
    }
    Err(Error::PrecisionExhausted { max_bits: w })
}

/// `F(v) = Σ_k β_k/(v+k) − Σ_k α_k·ln(v+k)`, with `α = (n!)²·a`, `β = (n!)²·b`.
struct Series {
    n: u64,
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
    fact_sq: Rat,
}

fn rat_log2(r: &Rat) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    r.numer().bits() as f64 - r.denom().bits() as f64
}

fn log2_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

impl Series {
    fn new(n: u64) -> Self {
        let pf = partial_fraction_coeffs(n);
        let f = nat_to_rat(&factorial(n));
        Series { n, alpha: pf.scaled_a(), beta: pf.scaled_b(), fact_sq: &f * &f }
    }

    /// `log2` of `|B_{2J+2}|/(2J+2)!·(n!)²·|d^{2J}/dx^{2J} x^{−2n−2}|` at `V`,
    /// which dominates the Euler–Maclaurin remainder.
    fn em_remainder_log2(&self, v: u64, j: u32) -> f64 {
        let n = self.n as f64;
        let m = 2.0 * j as f64 + 2.0;
        let two_pi = (2.0 * std::f64::consts::PI).log2();
        let rising: f64 = (0..2 * j).map(|i| (2.0 * n + 2.0 + i as f64).log2()).sum();
        // 2·ζ(m) <= 2·ζ(2) < 3.3
        1.73 - m * two_pi + 2.0 * log2_factorial(self.n) + rising - (2.0 * n + m) * (v as f64).log2()
    }

    fn choose_em(&self, target: ErrBound) -> (u64, Option<u32>) {
        let goal = target.log2() - 2.0;
        let mut v = self.n + 1;
        loop {
            for j in 0..=MAX_EM_TERMS {
                if self.em_remainder_log2(v, j) <= goal {
                    return (v, Some(j));
                }
            }
            v += 1;
        }
    }

    /// `(n!)²·V^{−2n}/((2n+1)·2n)` exactly.
    fn majorant(&self, v: u64) -> Rat {
        let n = self.n;
        let denom = Int::from((2 * n + 1) * 2 * n) * num_traits::pow(Int::from(v), 2 * n as usize);
        &self.fact_sq / Rat::from_integer(denom)
    }

    fn choose_majorant(&self, target: ErrBound) -> Result<u64> {
        let n = self.n as f64;
        let log2_v = (2.0 * log2_factorial(self.n) - ((2.0 * n + 1.0) * 2.0 * n).log2() - target.log2()) / (2.0 * n);
        if log2_v > (MAX_MAJORANT_CUTOFF as f64).log2() + 1.0 {
            return Err(Error::Budget(format!(
                "majorant tail needs a cutoff near 2^{log2_v:.1}, above {MAX_MAJORANT_CUTOFF}"
            )));
        }
        let mut v = (2f64.powf(log2_v).floor() as u64).max(self.n + 1);
        let goal = target.to_bigfloat().to_rat();
        while self.majorant(v) > goal {
            v += 1;
        }
        if v > MAX_MAJORANT_CUTOFF {
            return Err(Error::Budget(format!("majorant tail needs cutoff {v}")));
        }
        Ok(v)
    }

    fn initial_precision(&self, v_cutoff: u64, eps: ErrBound) -> u32 {
        let coeff = self
            .alpha
            .iter()
            .chain(self.beta.iter())
            .map(rat_log2)
            .fold(0.0f64, f64::max);
        let top = (v_cutoff + self.n + 2) as f64;
        let scale = coeff + 2.0 * top.log2() + top.ln().log2().max(0.0) + bit_len(self.n) as f64;
        (scale - eps.log2()).ceil().max(0.0) as u32 + 32
    }

    fn coefficient_balls(&self, w: u32) -> (Vec<Ball>, Vec<Ball>) {
        let a = self.alpha.iter().map(|r| Ball::from_rat(r, w + 8)).collect();
        let b = self.beta.iter().map(|r| Ball::from_rat(r, w + 8)).collect();
        (a, b)
    }

    fn f_value(&self, v: u64, lns: &[Ball], first: u64, alpha: &[Ball], w: u32) -> Ball {
        let mut acc = Ball::zero();
        for k in 0..=self.n {
            let recip = Rat::new(Int::one(), Int::from(v + k));
            acc = acc.add_exact(&Ball::from_rat(&(&self.beta[k as usize] * recip), w + 8));
            let l = &lns[(v + k - first) as usize];
            acc = acc.sub(&alpha[k as usize].mul(l, w + 8), w + 16);
        }
        acc.round(w)
    }

    /// `m`-th derivative of `(n!)²/(x(x+1)…(x+n))²` at integer `v`, as a ball.
    fn integrand_derivative(&self, m: u32, v: u64, w: u32) -> Ball {
        let m_fact = nat_to_rat(&factorial(m as u64));
        let m1_fact = &m_fact * Rat::from_integer(Int::from(m + 1));
        let mut acc = Ball::zero();
        for k in 0..=self.n {
            let x = Int::from(v + k);
            let p1 = num_traits::pow(x.clone(), m as usize + 1);
            let p2 = &p1 * &x;
            let term = &self.alpha[k as usize] * &m_fact / Rat::from_integer(p1)
                + &self.beta[k as usize] * &m1_fact / Rat::from_integer(p2);
            acc = acc.add_exact(&Ball::from_rat(&term, w + 8));
        }
        let acc = acc.round(w);
        if m % 2 == 1 {
            acc.neg()
        } else {
            acc
        }
    }

    fn evaluate(&self, v_cutoff: u64, em_terms: Option<u32>, w: u32) -> Result<(Ball, TailBound)> {
        let n = self.n;
        let first = n + 1;
        let last_summed = if em_terms.is_some() { v_cutoff - 1 } else { v_cutoff };
        let lns = (first..=v_cutoff + n)
            .map(|m| ln_point(&BigFloat::from_int(m), w + 8))
            .collect::<Result<Vec<_>>>()?;
        let (alpha, _) = self.coefficient_balls(w);
        let mut sum = Ball::zero();
        for v in first..=last_summed {
            sum = sum.add_exact(&self.f_value(v, &lns, first, &alpha, w));
        }
        let Some(j_terms) = em_terms else {
            let m = self.majorant(v_cutoff);
            let half = &m / Rat::from_integer(Int::from(2));
            let value = sum.add(&Ball::from_rat(&half, w), w).widen(ErrBound::upper_of_rat(&half));
            let tail = TailBound { v_cutoff, bound: ErrBound::upper_of_rat(&m), em_terms: None };
            return Ok((value, tail));
        };
        let v = v_cutoff;
        // ∫_V^∞ F = −Σ_k (β_k − α_k(V+k))·ln(V+k) − Σ_k β_k
        let mut integral = Ball::zero();
        let mut beta_sum = Rat::zero();
        for k in 0..=n {
            let ku = k as usize;
            let c = &self.beta[ku] - &self.alpha[ku] * Rat::from_integer(Int::from(v + k));
            let l = &lns[(v + k - first) as usize];
            integral = integral.sub(&Ball::from_rat(&c, w + 8).mul(l, w + 8), w + 16);
            beta_sum += &self.beta[ku];
        }
        integral = integral.sub(&Ball::from_rat(&beta_sum, w + 8), w + 8);
        let half_f = self.f_value(v, &lns, first, &alpha, w).mul_pow2(-1);
        let mut corrections = Ball::zero();
        let mut two_j_fact = Rat::one();
        for j in 1..=j_terms {
            let jj = 2 * j as u64;
            two_j_fact *= Rat::from_integer(Int::from((jj - 1) * jj));
            let coeff = bernoulli(jj) / &two_j_fact;
            let d = self.integrand_derivative(2 * j - 2, v, w);
            corrections = corrections.add_exact(&d.mul_rat(&coeff, w + 8));
        }
        let m = 2 * j_terms as u64 + 2;
        let b_coeff = bernoulli(m).abs() / nat_to_rat(&factorial(m));
        let d = self.integrand_derivative(2 * j_terms, v, w);
        let remainder = ErrBound::upper_of_rat(&b_coeff).mul(d.abs_upper());
        let value = sum
            .add_exact(&integral)
            .add_exact(&half_f)
            .add_exact(&corrections)
            .round(w)
            .widen(remainder);
        Ok((value, TailBound { v_cutoff, bound: remainder, em_terms: Some(j_terms) }))
    }
}

/// Result of recovering `γ` from `I_n + A_n − L_n = C(2n,n)·γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRoundtrip {
    pub n: u64,
    pub estimate: Ball,
    pub reference: Ball,
    /// Upper bound of `|estimate − reference|` (midpoint distance plus both radii).
    pub discrepancy: ErrBound,
    pub agree: bool,
}

impl GammaRoundtrip {
    /// Decimal digits of agreement implied by [`Self::discrepancy`].
    pub fn digits(&self) -> f64 {
        if self.discrepancy.is_zero() {
            return f64::INFINITY;
        }
        -self.discrepancy.log2() * std::f64::consts::LOG10_2
    }
}

/// `γ ≈ (I_n + A_n − L_n)/C(2n,n)` from the series value of `I_n`.
pub fn gamma_roundtrip(n: u64, p: u32) -> Result<GammaRoundtrip> {
    check_n(n)?;
    let central = Int::from(binomial(2 * n, n)?);
    let scale = central.bits() as i64;
    let eps = ErrBound::pow2(scale - p as i64 - 4);
    let (i, _) = i_series(n, eps)?;
    let q = p + headroom(n) + scale as u32;
    let l = l_from_log_factorials(n, q)?;
    let a = Ball::from_rat(&a_exact(n), q + 8);
    let estimate = i.add(&a, q).sub(&l, q).div_int(&central, p + 8)?;
    let reference = euler_gamma(p + 8);
    let diff = estimate.sub(&reference, p + 64);
    let discrepancy = ErrBound::upper_of(diff.mid()).add(diff.rad());
    Ok(GammaRoundtrip { n, agree: estimate.overlaps(&reference), estimate, reference, discrepancy })
}
