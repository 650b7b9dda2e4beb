use num_traits::{One, Zero};

use super::combinatorics::{binomial, binomial_row, harmonic, lcm_upto, nat_to_rat, Int, Nat, Rat};
use crate::error::{Error, Result};

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// `Σ_j C(n,j)²·((H_{n−j} − H_j)(2j − n) + 1)`, the coefficient of `log r`
/// in the large-`r` expansion of the limit probe. Zero for every `n ≥ 1`.
pub fn zero_sum_centered_residual(n: u64) -> Rat {
    let row = binomial_row(n);
    let mut acc = Rat::zero();
    for j in 0..=n {
        let c = nat_to_rat(&row[j as usize]);
        let spread = rat_int(2 * j as i64 - n as i64);
        acc += &c * &c * ((harmonic(n - j) - harmonic(j)) * spread + Rat::one());
    }
    acc
}

/// `Σ_j C(n,j)²·(2j(H_{n−j} − H_j) + 1)`. Zero for every `n ≥ 1`; equals 1 at
/// `n = 0`, outside the range where the identity is claimed.
pub fn zero_sum_one_sided_residual(n: u64) -> Rat {
    let row = binomial_row(n);
    let mut acc = Rat::zero();
    for j in 0..=n {
        let c = nat_to_rat(&row[j as usize]);
        acc += &c * &c * (rat_int(2 * j as i64) * (harmonic(n - j) - harmonic(j)) + Rat::one());
    }
    acc
}

/// The rational part `A_n = Σ_j C(n,j)²·H_{n+j}`.
pub fn a_exact(n: u64) -> Rat {
    binomial_row(n)
        .iter()
        .enumerate()
        .map(|(j, c)| nat_to_rat(&(c * c)) * harmonic(n + j as u64))
        .sum()
}

/// `d_{2n}·A_n`, which must be an integer.
pub fn integrality_witness(n: u64) -> Result<Int> {
    if n == 0 {
        return Err(Error::domain("integrality witness needs n >= 1"));
    }
    let product = nat_to_rat(&lcm_upto(2 * n)?) * a_exact(n);
    if !product.is_integer() {
        return Err(Error::IdentityViolation { identity: "integrality", n });
    }
    Ok(product.to_integer())
}

/// `Σ_j C(n,j)² − C(2n,n)`.
pub fn central_binomial_residual(n: u64) -> Int {
    let sum: Nat = binomial_row(n).iter().map(|c| c * c).sum();
    let central = binomial(2 * n, n).expect("n <= 2n");
    Int::from(sum) - Int::from(central)
}

/// `Σ_j C(n,j)²·(1/2 − j/n)²`, exactly.
pub fn squared_deviation_sum(n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::domain("squared deviation sum needs n >= 1"));
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let row = binomial_row(n);
    Ok((0..=n)
        .map(|j| {
            let d = &half - Rat::new(Int::from(j), Int::from(n));
            nat_to_rat(&(&row[j as usize] * &row[j as usize])) * &d * &d
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(Int::from(p), Int::from(q))
    }

    #[test]
    fn centered_small_cases() {
        assert!(zero_sum_centered_residual(1).is_zero());
        // n = 2: j = 0,1,2 give −2, 4, −2.
        let terms: Vec<Rat> = (0..=2u64)
            .map(|j| {
                let c = nat_to_rat(&binomial(2, j).unwrap());
                &c * &c * ((harmonic(2 - j) - harmonic(j)) * rat(2 * j as i64 - 2, 1) + Rat::one())
            })
            .collect();
        assert_eq!(terms, vec![rat(-2, 1), rat(4, 1), rat(-2, 1)]);
        assert!(zero_sum_centered_residual(2).is_zero());
    }

    #[test]
    fn one_sided_small_cases() {
        assert!(zero_sum_one_sided_residual(1).is_zero());
        assert!(zero_sum_one_sided_residual(3).is_zero());
        assert_eq!(zero_sum_one_sided_residual(0), Rat::one());
    }

    #[test]
    fn a_values() {
        assert_eq!(a_exact(0), Rat::zero());
        assert_eq!(a_exact(1), rat(5, 2));
        assert_eq!(a_exact(2), rat(131, 12));
    }

    #[test]
    fn integrality_values() {
        assert_eq!(integrality_witness(1).unwrap(), Int::from(5));
        assert_eq!(integrality_witness(2).unwrap(), Int::from(131));
        let a3 = harmonic(3) + rat(9, 1) * harmonic(4) + rat(9, 1) * harmonic(5) + harmonic(6);
        let expected = rat(60, 1) * a3;
        assert!(expected.is_integer());
        assert_eq!(integrality_witness(3).unwrap(), expected.to_integer());
    }

    #[test]
    fn squared_deviation_small() {
        assert_eq!(squared_deviation_sum(1).unwrap(), rat(1, 2));
        assert_eq!(squared_deviation_sum(2).unwrap(), rat(1, 2));
    }

    #[test]
    fn central_binomial_identity() {
        for n in 0..=50 {
            assert!(central_binomial_residual(n).is_zero());
        }
    }
}
