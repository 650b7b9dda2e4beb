//! Exact big-integer and rational arithmetic, and every identity that can be
//! checked without rounding.

mod combinatorics;
mod identities;
mod partial_fractions;
pub mod suite;

pub use combinatorics::{
    bernoulli, binomial, binomial_row, factorial, harmonic, harmonic_uncached, lcm_table_snapshot,
    lcm_upto, preload_lcm_table, preload_stirling_rows, stirling1_row, stirling_rows_snapshot,
    stirling_small_k_residuals, Int, Nat, Rat, StirlingRow,
};
pub(crate) use combinatorics::nat_to_rat;
pub use identities::{
    a_exact, central_binomial_residual, integrality_witness, squared_deviation_sum,
    zero_sum_centered_residual, zero_sum_one_sided_residual,
};
pub use partial_fractions::{
    inverse_rising_square, partial_fraction_coeffs, partial_fraction_residual,
    PartialFractionCoeffs,
};
