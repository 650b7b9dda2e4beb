//! The five subcommands. Each returns its data table plus the bookkeeping the
//! manifest needs; none of them touches the filesystem.

use gammalab_core::asymptotics::{law_row, ConvergenceReport, ConvergenceRow, Law};
use gammalab_core::exact::suite::{run_suite, ExactKernels, SuiteConfig};
use gammalab_core::exact::{Int, Rat};
use gammalab_core::mp::{euler_gamma, Ball, ErrBound, PrecisionPolicy};
use gammalab_core::sequences::{build_record, criterion_probe, RecordConfig, SeqRecord};
use gammalab_core::Error as CoreError;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{core_exit_code, exit, worse_of};
use crate::manifest::SuiteCount;
use crate::table::DataTable;

/// Result of a subcommand before anything is written.
#[derive(Debug)]
pub struct Outcome {
    pub table: DataTable,
    /// Human-readable line printed when no `--out` is given (used by `gamma`).
    pub text: Option<String>,
    pub suites: Vec<SuiteCount>,
    pub exit_code: u8,
    pub stages: Vec<(String, f64)>,
}

impl Outcome {
    fn new(table: DataTable) -> Self {
        Outcome { table, text: None, suites: Vec::new(), exit_code: exit::SUCCESS, stages: Vec::new() }
    }

    fn raise(&mut self, code: u8) {
        self.exit_code = worse_of(self.exit_code, code);
    }
}

pub const VERIFY_COLUMNS: &[&str] = &["identity", "cases", "passed", "first_failure"];

pub fn verify(n_max: u64, seed: u64, kernels: &dyn ExactKernels) -> Outcome {
    let config = SuiteConfig { seed, ..SuiteConfig::for_n_max(n_max) };
    let report = run_suite(&config, kernels);
    let mut out = Outcome::new(DataTable::with_columns(VERIFY_COLUMNS));
    for c in &report.checks {
        out.table
            .row()
            .text("identity", c.identity)
            .int("cases", c.cases)
            .flag("passed", c.passed())
            .opt_text("first_failure", c.first_failure.map(|n| n.to_string()))
            .finish();
        let mut count = SuiteCount::new(c.identity);
        count.passed = c.cases - u64::from(!c.passed());
        count.failed = u64::from(!c.passed());
        out.suites.push(count);
    }
    if !report.passed() {
        out.raise(exit::VERIFICATION_FAILURE);
    }
    out
}

pub const TABLE_COLUMNS: &[&str] = &[
    "n", "status", "a", "d_2n", "l_log_factorials", "l_log_factorials_err", "l_log_s", "l_log_s_err",
    "l_consistent", "floor_log_s", "frac_log_s", "frac_log_s_err", "q", "q_err", "dist_zero", "dist_zero_err",
    "dist_target", "dist_target_err", "i_closed", "i_closed_err", "i_series", "i_series_err", "i_consistent",
    "i_positive", "precision_bits", "tail_method", "tail_cutoff", "tail_terms", "tail_bound",
];

fn parallel<T: Send>(jobs: usize, ns: &[u64], f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| ns.par_iter().map(|&n| f(n)).collect()),
        Err(_) => ns.iter().map(|&n| f(n)).collect(),
    }
}

fn status_of(e: &CoreError) -> String {
    format!("error: {e}")
}

fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn table(ns: &[u64], config: &RecordConfig, jobs: usize) -> Outcome {
    let records = parallel(jobs, ns, |n| build_record(n, config));
    let mut out = Outcome::new(DataTable::with_columns(TABLE_COLUMNS));
    let mut l_check = SuiteCount::new("l-cross-method");
    let mut i_check = SuiteCount::new("i-cross-method");
    let mut pos_check = SuiteCount::new("i-positive");
    let mut errors = SuiteCount::new("errors");
    let mut stage_totals: Vec<(String, f64)> = Vec::new();
    for (&n, rec) in ns.iter().zip(&records) {
        match rec {
            Ok(r) => {
                l_check.record(r.l_consistent);
                i_check.record(r.i_consistent);
                pos_check.record(r.i_positive);
                errors.record(true);
                if !r.passed() {
                    out.raise(exit::VERIFICATION_FAILURE);
                }
                for (label, secs) in &r.timings {
                    match stage_totals.iter_mut().find(|(l, _)| l == label) {
                        Some(slot) => slot.1 += secs,
                        None => stage_totals.push((label.to_string(), *secs)),
                    }
                }
                record_row(&mut out.table, r);
            }
            Err(e) => {
                errors.record(false);
                out.raise(core_exit_code(e));
                error_row(&mut out.table, n, e);
            }
        }
    }
    out.suites = vec![l_check, i_check, pos_check, errors];
    out.stages = stage_totals;
    out
}

fn record_row(t: &mut DataTable, r: &SeqRecord) {
    let status = if r.passed() { "ok" } else { "check-failed" };
    t.row()
        .int("n", r.n)
        .text("status", status)
        .text("a", rat_string(&r.a))
        .text("d_2n", r.d_2n.to_string())
        .ball("l_log_factorials", &r.l_log_factorials)
        .ball("l_log_s", &r.l_log_s)
        .flag("l_consistent", r.l_consistent)
        .text("floor_log_s", r.floor_log_s.to_string())
        .ball("frac_log_s", &r.frac_log_s)
        .ball("q", &r.q)
        .ball("dist_zero", &r.dist_zero)
        .ball("dist_target", &r.dist_target)
        .ball("i_closed", &r.i_closed)
        .ball("i_series", &r.i_series)
        .flag("i_consistent", r.i_consistent)
        .flag("i_positive", r.i_positive)
        .int("precision_bits", u64::from(r.precision_used))
        .text("tail_method", r.tail_method.name())
        .int("tail_cutoff", r.tail.v_cutoff)
        .opt_text("tail_terms", r.tail.em_terms.map(|k| k.to_string()))
        .text("tail_bound", r.tail.bound.to_decimal_up(3))
        .finish();
}

/// A row for a failed `n`: the status column carries the error, everything else is empty.
fn error_row(t: &mut DataTable, n: u64, e: &CoreError) {
    let mut row = t.row().int("n", n).text("status", status_of(e));
    for col in &TABLE_COLUMNS[2..] {
        row = row.opt_text(col, None);
    }
    row.finish();
}

pub const CRITERION_COLUMNS: &[&str] = &[
    "n", "status", "floor_log_s", "frac_log_s", "frac_log_s_err", "q", "q_err", "dist_zero", "dist_zero_err",
    "dist_target", "dist_target_err", "precision_bits",
];

pub fn criterion(ns: &[u64], policy: &PrecisionPolicy, jobs: usize) -> Outcome {
    let probes = parallel(jobs, ns, |n| criterion_probe(n, policy));
    let mut out = Outcome::new(DataTable::with_columns(CRITERION_COLUMNS));
    let mut certified = SuiteCount::new("certified-fraction");
    for (&n, probe) in ns.iter().zip(&probes) {
        certified.record(probe.is_ok());
        match probe {
            Ok(c) => out
                .table
                .row()
                .int("n", n)
                .text("status", "ok")
                .text("floor_log_s", c.floor_log_s.to_string())
                .ball("frac_log_s", &c.frac_log_s)
                .ball("q", &c.q)
                .ball("dist_zero", &c.dist_zero)
                .ball("dist_target", &c.dist_target)
                .int("precision_bits", u64::from(c.precision))
                .finish(),
            Err(e) => {
                out.raise(core_exit_code(e));
                let mut row = out.table.row().int("n", n).text("status", status_of(e));
                for col in &CRITERION_COLUMNS[2..] {
                    row = row.opt_text(col, None);
                }
                row.finish();
            }
        }
    }
    out.suites.push(certified);
    out
}

pub const ASYM_COLUMNS: &[&str] = &[
    "law", "n", "status", "model", "model_err", "measured", "measured_err", "ratio", "ratio_err", "residual",
    "residual_err", "trend",
];

pub const REPORT_ONLY: &str = "report-only: no tolerance";

pub fn asym(laws: &[Law], points: Option<&[u64]>, jobs: usize) -> Outcome {
    let jobs_list: Vec<(Law, u64)> = laws
        .iter()
        .flat_map(|&law| {
            let pts = points.map(<[u64]>::to_vec).unwrap_or_else(|| law.default_points());
            pts.into_iter().map(move |n| (law, n))
        })
        .collect();
    let idx: Vec<u64> = (0..jobs_list.len() as u64).collect();
    let results = parallel(jobs, &idx, |i| {
        let (law, n) = jobs_list[i as usize];
        law_row(law, n)
    });
    let mut out = Outcome::new(DataTable::with_columns(ASYM_COLUMNS));
    for &law in laws {
        let mut good: Vec<ConvergenceRow> = Vec::new();
        let mut failed: Vec<(u64, String)> = Vec::new();
        for ((l, n), r) in jobs_list.iter().zip(&results) {
            if *l != law {
                continue;
            }
            match r {
                Ok(row) => good.push(row.clone()),
                Err(e) => {
                    out.raise(core_exit_code(e));
                    failed.push((*n, status_of(e)));
                }
            }
        }
        let report = ConvergenceReport::from_rows(law, good);
        let trend = if law.report_only() {
            REPORT_ONLY.to_string()
        } else {
            match report.trend_holds() {
                Some(true) => "closer-at-end".to_string(),
                Some(false) => {
                    out.raise(exit::VERIFICATION_FAILURE);
                    "not-closer".to_string()
                }
                None => "trend-pair-absent".to_string(),
            }
        };
        let mut count = SuiteCount::new(law.id());
        if !law.report_only() {
            if let Some(ok) = report.trend_holds() {
                count.record(ok);
            }
        }
        out.suites.push(count);
        for row in &report.rows {
            out.table
                .row()
                .text("law", law.id())
                .int("n", row.n)
                .text("status", "ok")
                .ball("model", &row.model)
                .ball("measured", &row.measured)
                .ball("ratio", &row.ratio)
                .ball("residual", &row.residual)
                .text("trend", trend.clone())
                .finish();
        }
        for (n, status) in failed {
            let mut r = out.table.row().text("law", law.id()).int("n", n).text("status", status);
            for col in &ASYM_COLUMNS[3..ASYM_COLUMNS.len() - 1] {
                r = r.opt_text(col, None);
            }
            r.text("trend", trend.clone()).finish();
        }
    }
    out
}

/// Working bits for `d` decimals: `d·log2(10)` plus guard.
fn gamma_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// `γ` rounded to `digits` decimals, with a bound covering both the
/// certified radius and the final rounding.
pub fn gamma_decimal(digits: u32) -> (String, ErrBound) {
    let g = euler_gamma(gamma_bits(digits));
    let scale = Rat::from_integer(num_traits::pow(Int::from(10), digits as usize));
    let exact = g.mid().to_rat();
    let scaled = &exact * &scale;
    let rounded = (scaled + Rat::new(Int::from(1), Int::from(2))).floor().to_integer();
    let shown = Rat::new(rounded.clone(), scale.to_integer());
    let err = ErrBound::upper_of_rat(&(&shown - &exact)).add(g.rad());
    (format_fixed(&rounded, digits), err)
}

fn format_fixed(scaled: &Int, digits: u32) -> String {
    let negative = scaled < &Int::zero();
    let mag = if negative { -scaled.clone() } else { scaled.clone() };
    let (int_part, frac) = mag.div_rem(&num_traits::pow(Int::from(10), digits as usize));
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits as usize)
}

pub fn gamma(digits: u32) -> Outcome {
    let (value, err) = gamma_decimal(digits);
    let mut table = DataTable::with_columns(&["digits", "value", "value_err"]);
    table
        .row()
        .int("digits", u64::from(digits))
        .text("value", value.clone())
        .text("value_err", err.to_decimal_up(3))
        .finish();
    let mut out = Outcome::new(table);
    out.text = Some(format!("{value} ± {}", err.to_decimal_up(3)));
    out
}

/// Ball accessor used by the tests: `γ` at the precision `gamma --digits d` uses.
pub fn gamma_ball(digits: u32) -> Ball {
    euler_gamma(gamma_bits(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_twenty_digits() {
        let (v, err) = gamma_decimal(20);
        assert_eq!(v, "0.57721566490153286061");
        assert!(err.log2() < -66.0);
        assert_eq!(gamma_decimal(0).0, "1");
    }

    #[test]
    fn fixed_formatting() {
        assert_eq!(format_fixed(&Int::from(5), 3), "0.005");
        assert_eq!(format_fixed(&Int::from(-1234), 2), "-12.34");
    }

    #[test]
    fn exit_priority() {
        assert_eq!(worse_of(exit::VERIFICATION_FAILURE, exit::PRECISION_EXHAUSTED), exit::PRECISION_EXHAUSTED);
        assert_eq!(worse_of(exit::IO_OR_CONFIG, exit::VERIFICATION_FAILURE), exit::IO_OR_CONFIG);
        assert_eq!(worse_of(exit::SUCCESS, exit::SUCCESS), exit::SUCCESS);
    }
}
