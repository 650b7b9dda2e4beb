//! Per-`n` quantities of the decomposition, each with a certified error bound.

mod criterion;
mod integral;
mod log_part;
mod record;

pub use criterion::{a_float, criterion_probe, criterion_probe_at, criterion_scale, criterion_target, s_limit_probe, CriterionProbe};
pub use integral::{
    cancellation_floor, gamma_roundtrip, i_closed_form, i_series, i_series_with, GammaRoundtrip, TailBound,
    TailMethod, MAX_MAJORANT_CUTOFF,
};
pub use log_part::{
    d_2n, l_consistency, l_from_log_factorials, l_from_log_s, log_factorial_coefficients, log_s_exponents,
    log_s_from_product, LConsistency,
};
pub use record::{build_record, default_tail_eps, RecordConfig, SeqRecord};
