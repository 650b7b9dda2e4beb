//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use gammalab_core::asymptotics::{law_row, scan, Law};
use gammalab_core::exact::suite::{run_suite, CheckOutcome, Reference, SuiteConfig, SuiteReport};
use gammalab_core::exact::{Int, Rat};
use gammalab_core::mp::{euler_gamma, gamma_cross_check_bits, ln2_const, ln_point, Ball, BigFloat, ErrBound, PrecisionPolicy};
use gammalab_core::sequences::{
    criterion_probe, criterion_probe_at, criterion_target, gamma_roundtrip, i_closed_form, i_series, l_consistency,
};

type Outcome = Result<String, String>;

/// log2(10^-30)
const THIRTY_DIGITS_LOG2: f64 = -99.66;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite() -> &'static (SuiteReport, Duration) {
    static SUITE: OnceLock<(SuiteReport, Duration)> = OnceLock::new();
    SUITE.get_or_init(|| {
        let start = Instant::now();
        let report = run_suite(&SuiteConfig::for_n_max(200), &Reference);
        (report, start.elapsed())
    })
}

fn check(identity: &str) -> Result<&'static CheckOutcome, String> {
    suite().0.checks.iter().find(|c| c.identity == identity).ok_or_else(|| format!("{identity} missing"))
}

fn passed_with(identity: &str, min_cases: u64) -> Result<String, String> {
    let c = check(identity)?;
    ensure(c.passed(), || format!("{identity} failed at n = {:?}", c.first_failure))?;
    ensure(c.cases >= min_cases, || format!("{identity}: only {} cases", c.cases))?;
    Ok(format!("{identity} {} cases", c.cases))
}

fn criterion_1() -> Outcome {
    let a = passed_with("zero-sum-centered", 200)?;
    let b = passed_with("zero-sum-one-sided", 200)?;
    let secs = suite().1.as_secs_f64();
    ensure(secs <= 60.0, || format!("suite took {secs:.1} s"))?;
    Ok(format!("{a}; {b}; whole suite {secs:.1} s"))
}

fn criterion_2() -> Outcome {
    let r = passed_with("partial-fraction-residual", 50)?;
    let s = passed_with("partial-fraction-symmetry", 61)?;
    Ok(format!("{r} (5 seeded points each); {s}"))
}

fn criterion_3() -> Outcome {
    let k = passed_with("stirling-small-k", 201)?;
    let s = passed_with("stirling-row-sum", 201)?;
    Ok(format!("{k}; {s}"))
}

fn criterion_4() -> Outcome {
    passed_with("integrality", 200)
}

fn agrees_to_30_digits(a: &Ball, b: &Ball, p: u32) -> bool {
    let diff = a.sub(b, p);
    diff.abs_upper().log2() - ErrBound::upper_of(b.mid()).log2() <= THIRTY_DIGITS_LOG2
}

fn criterion_5() -> Outcome {
    for n in 1..=30 {
        let c = l_consistency(n, 128).map_err(|e| e.to_string())?;
        ensure(c.pass, || format!("n = {n}: difference exceeds budget"))?;
    }
    let p = 160;
    let two_ln2 = ln2_const(p).mul_int(&2.into(), p);
    let three_ln12 = ln_point(&BigFloat::from_int(12), p).map_err(|e| e.to_string())?.mul_int(&3.into(), p);
    for (n, expected) in [(1, two_ln2), (2, three_ln12)] {
        let c = l_consistency(n, p).map_err(|e| e.to_string())?;
        ensure(agrees_to_30_digits(&c.from_log_factorials, &expected, p), || format!("L_{n} log-factorial route"))?;
        ensure(agrees_to_30_digits(&c.from_log_s, &expected, p), || format!("L_{n} product route"))?;
    }
    Ok("n = 1..30 within budget; L_1 = 2 ln 2, L_2 = 3 ln 12 to 30 digits".into())
}

fn criterion_6() -> Outcome {
    for n in 1..=20u64 {
        let (s, _) = i_series(n, ErrBound::pow2(-(4 * n as i64 + 80))).map_err(|e| e.to_string())?;
        let c = i_closed_form(n, 6 * n as u32 + 160).map_err(|e| e.to_string())?;
        ensure(s.overlaps(&c), || format!("n = {n}: series and closed form disjoint"))?;
    }
    let p = 200;
    let hand = euler_gamma(p)
        .mul_int(&2.into(), p)
        .add(&ln2_const(p).mul_int(&2.into(), p), p)
        .sub(&Ball::from_rat(&Rat::new(Int::from(5), Int::from(2)), p), p);
    let (series, _) = i_series(1, ErrBound::pow2(-140)).map_err(|e| e.to_string())?;
    ensure(agrees_to_30_digits(&series, &hand, p), || "I_1 series vs 2γ + 2 ln 2 − 5/2".into())?;
    Ok(format!("n = 1..20 overlap; I_1 = {}", series.value_string()))
}

fn criterion_7() -> Outcome {
    let r = gamma_roundtrip(20, 512).map_err(|e| e.to_string())?;
    ensure(r.agree && r.digits() >= 30.0, || format!("round trip gave {:.1} digits", r.digits()))?;
    let bits = gamma_cross_check_bits(192);
    ensure(bits >= 120.0, || format!("dual check {bits:.1} bits"))?;
    let dual = if bits.is_finite() { format!("{bits:.1} bits") } else { "identical midpoints".to_string() };
    Ok(format!("{:.1} digits at n = 20; dual parameters: {dual}", r.digits()))
}

fn gap(law: Law, n: u64) -> Result<f64, String> {
    Ok((law_row(law, n).map_err(|e| e.to_string())?.ratio.to_f64() - 1.0).abs())
}

fn criterion_8() -> Outcome {
    let (g10, g40) = (gap(Law::IntegralDecay, 10)?, gap(Law::IntegralDecay, 40)?);
    ensure(g40 < g10, || format!("gap grew: {g10:.3e} -> {g40:.3e}"))?;
    ensure(g40 <= 0.1, || format!("gap at 40 is {g40:.3e}"))?;
    Ok(format!("|ratio − 1|: {g10:.4e} at 10, {g40:.4e} at 40"))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for law in [Law::RationalPart, Law::LogPart, Law::LogPartCentral, Law::SquaredDeviation, Law::CentralBinomial] {
        let (lo, hi) = law.trend_pair();
        let report = scan(law, &[lo, hi]).map_err(|e| e.to_string())?;
        ensure(report.trend_holds() == Some(true), || format!("{law}: not closer at n = {hi}"))?;
        parts.push(format!("{law} {lo}->{hi}"));
    }
    ensure(Law::LcmGrowth.report_only(), || "lcm-growth must be report-only".into())?;
    let lcm = law_row(Law::LcmGrowth, 1000).map_err(|e| e.to_string())?;
    Ok(format!("{}; lcm-growth reported ({} at 1000)", parts.join(", "), lcm.ratio.value_string()))
}

fn criterion_10() -> Outcome {
    let policy = PrecisionPolicy::default();
    let target = criterion_target(192);
    for n in 1..=60 {
        let c = criterion_probe(n, &policy).map_err(|e| format!("n = {n}: {e}"))?;
        let twice = criterion_probe_at(n, 2 * c.precision, policy.frac_bits).map_err(|e| format!("n = {n} at 2p: {e}"))?;
        ensure(c.floor_log_s == twice.floor_log_s, || format!("n = {n}: floor changed"))?;
        let diff = c.frac_log_s.sub(&twice.frac_log_s, 2 * c.precision);
        ensure(diff.abs_upper().log2() <= -32.0, || format!("n = {n}: p and 2p differ"))?;
        ensure(c.dist_zero.overlaps(&c.q.abs()), || format!("n = {n}: distance to 0"))?;
        let to_target = c.q.sub(&target, 192).abs();
        ensure(c.dist_target.overlaps(&to_target), || format!("n = {n}: distance to target"))?;
    }
    Ok("n = 1..60 certified at auto precision; p and 2p agree to 32 fractional bits".into())
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, jobs: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_gammalab"))
            .args(["table", "--n", "1..10", "--jobs", jobs, "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("table exited with {status}"))?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let first = run("a.csv", "1")?;
    let second = run("b.csv", "1")?;
    let parallel = run("c.csv", "4")?;
    ensure(first == second, || "two runs differ".into())?;
    ensure(first == parallel, || "parallel run differs".into())?;
    Ok(format!("{} bytes identical across two runs and --jobs 4", first.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "zero-sum identities exact for n <= 200", criterion_1),
        (2, "partial fractions: sampled residuals, symmetry and zero sum", criterion_2),
        (3, "Stirling small-k identities and row sums for m <= 200", criterion_3),
        (4, "d_2n·A_n integral for n <= 200", criterion_4),
        (5, "L_n by two methods for n <= 30", criterion_5),
        (6, "I_n by two methods for n <= 20", criterion_6),
        (7, "Euler's constant round trip and dual check", criterion_7),
        (8, "integral decay trend", criterion_8),
        (9, "designated asymptotic trends", criterion_9),
        (10, "criterion probe for n <= 60", criterion_10),
        (11, "table determinism", criterion_11),
    ];
    let mut failures = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2}: {title} [{detail}] ({secs:.1} s)"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {id:>2}: {title} [{why}] ({secs:.1} s)");
            }
        }
    }
    println!("acceptance: {} of 11 passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
