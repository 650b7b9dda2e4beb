use num_traits::{One, Signed, Zero};

use super::combinatorics::{binomial_row, factorial, harmonic, nat_to_rat, Int, Rat};
use crate::error::{Error, Result};

/// Coefficients of
///
/// ```text
/// 1/(x(x+1)…(x+n))² = Σ_k a_k/(x+k) + Σ_k b_k/(x+k)²
/// ```
///
/// with `a_k = 2(H_k − H_{n−k})/(k!(n−k)!)²` and `b_k = 1/(k!(n−k)!)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionCoeffs {
    pub n: u64,
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
}

pub fn partial_fraction_coeffs(n: u64) -> PartialFractionCoeffs {
    let mut a = Vec::with_capacity(n as usize + 1);
    let mut b = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let denom = factorial(k) * factorial(n - k);
        let bk = Rat::one() / nat_to_rat(&(&denom * &denom));
        let ak = Rat::from_integer(Int::from(2)) * (harmonic(k) - harmonic(n - k)) * &bk;
        a.push(ak);
        b.push(bk);
    }
    PartialFractionCoeffs { n, a, b }
}

impl PartialFractionCoeffs {
    /// `(n!)²·a_k = 2·C(n,k)²·(H_k − H_{n−k})`.
    pub fn scaled_a(&self) -> Vec<Rat> {
        let row = binomial_row(self.n);
        (0..=self.n)
            .map(|k| {
                let c = nat_to_rat(&row[k as usize]);
                Rat::from_integer(Int::from(2)) * &c * &c * (harmonic(k) - harmonic(self.n - k))
            })
            .collect()
    }

    /// `(n!)²·b_k = C(n,k)²`.
    pub fn scaled_b(&self) -> Vec<Rat> {
        binomial_row(self.n)
            .iter()
            .map(|c| nat_to_rat(&(c * c)))
            .collect()
    }

    /// Right-hand side `Σ a_k/(x+k) + b_k/(x+k)²`.
    pub fn evaluate(&self, x: &Rat) -> Result<Rat> {
        self.derivative(0, x)
    }

    /// `m`-th derivative of the right-hand side at `x`, exactly.
    pub fn derivative(&self, m: u32, x: &Rat) -> Result<Rat> {
        check_pole(self.n, x)?;
        let m_fact = nat_to_rat(&factorial(m as u64));
        let m1_fact = nat_to_rat(&factorial(m as u64 + 1));
        let mut acc = Rat::zero();
        for k in 0..=self.n {
            let shift = x + Rat::from_integer(Int::from(k));
            let inv = Rat::one() / &shift;
            let p1 = pow(&inv, m + 1);
            let p2 = &p1 * &inv;
            acc += &self.a[k as usize] * &m_fact * p1 + &self.b[k as usize] * &m1_fact * p2;
        }
        if m % 2 == 1 {
            acc = -acc;
        }
        Ok(acc)
    }
}

fn pow(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

fn check_pole(n: u64, x: &Rat) -> Result<()> {
    if x.is_integer() && !x.is_positive() && x.numer().abs() <= Int::from(n) {
        return Err(Error::domain(format!("x = {x} is a pole of 1/(x(x+1)…(x+{n}))²")));
    }
    Ok(())
}

/// Left-hand side `1/(x(x+1)…(x+n))²`.
pub fn inverse_rising_square(n: u64, x: &Rat) -> Result<Rat> {
    check_pole(n, x)?;
    let mut prod = Rat::one();
    for i in 0..=n {
        prod *= x + Rat::from_integer(Int::from(i));
    }
    Ok(Rat::one() / (&prod * &prod))
}

/// Exact `LHS − RHS` of the decomposition at a non-pole rational `x`.
pub fn partial_fraction_residual(n: u64, x: &Rat) -> Result<Rat> {
    let coeffs = partial_fraction_coeffs(n);
    residual_with(&coeffs, x)
}

pub(crate) fn residual_with(coeffs: &PartialFractionCoeffs, x: &Rat) -> Result<Rat> {
    Ok(inverse_rising_square(coeffs.n, x)? - coeffs.evaluate(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(Int::from(p), Int::from(q))
    }

    #[test]
    fn n1_coefficients() {
        let c = partial_fraction_coeffs(1);
        assert_eq!(c.a, vec![rat(-2, 1), rat(2, 1)]);
        assert_eq!(c.b, vec![rat(1, 1), rat(1, 1)]);
    }

    /// Residue oracle for n = 1: 1/(x²(x+1)²) has a_0 = d/dx[(x+1)^-2] at 0 = −2.
    #[test]
    fn n1_matches_residue_oracle() {
        let c = partial_fraction_coeffs(1);
        // b_0 = 1/(0+1)^2, a_0 = -2/(0+1)^3; b_1 = 1/(−1)^2, a_1 = −2/(−1)^3.
        assert_eq!(c.b[0], rat(1, 1));
        assert_eq!(c.a[0], rat(-2, 1));
        assert_eq!(c.b[1], rat(1, 1));
        assert_eq!(c.a[1], rat(2, 1));
    }

    #[test]
    fn n2_b_coefficients() {
        assert_eq!(partial_fraction_coeffs(2).b, vec![rat(1, 4), rat(1, 1), rat(1, 4)]);
    }

    #[test]
    fn residual_examples() {
        // 1/4 = −2 + 2/2 + 1 + 1/4
        assert!(partial_fraction_residual(1, &rat(1, 1)).unwrap().is_zero());
        assert!(partial_fraction_residual(3, &rat(1, 2)).unwrap().is_zero());
        assert!(matches!(
            partial_fraction_residual(2, &rat(-1, 1)),
            Err(Error::Domain(_))
        ));
        assert!(partial_fraction_residual(2, &rat(-3, 1)).unwrap().is_zero());
    }

    #[test]
    fn symmetry_and_zero_sum() {
        for n in 0..=20u64 {
            let c = partial_fraction_coeffs(n);
            let sum: Rat = c.a.iter().sum();
            assert!(sum.is_zero());
            for k in 0..=n as usize {
                assert_eq!(c.a[n as usize - k], -c.a[k].clone());
                assert_eq!(c.b[n as usize - k], c.b[k]);
                assert!(c.b[k].is_positive());
            }
        }
    }

    #[test]
    fn derivative_matches_difference_of_lhs() {
        // d/dx of 1/(x(x+1))² at x = 2 is −2·(2x+1)/(x(x+1))³ = −10/216.
        let c = partial_fraction_coeffs(1);
        assert_eq!(c.derivative(1, &rat(2, 1)).unwrap(), rat(-10, 216));
    }
}
