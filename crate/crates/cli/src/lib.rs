//! Command-line front end for `gammalab-core`.
//!
//! [`run`] is the whole program; `main` only maps its return value to the
//! process exit code, so integration tests drive the CLI in-process.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod range;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use gammalab_core::asymptotics::Law;
use gammalab_core::exact::suite::{ExactKernels, Reference};
use gammalab_core::mp::{ErrBound, PrecisionPolicy};
use gammalab_core::sequences::RecordConfig;

use args::{Cli, Command, CommonArgs};
use cache::DiskCache;
use commands::Outcome;
use error::{exit, CliError};
use manifest::{manifest_path, CacheSummary, PolicySummary, RunManifest, StageTiming, Timings};

fn policy_from(common: &CommonArgs) -> Result<PrecisionPolicy, CliError> {
    let policy = PrecisionPolicy {
        frac_bits: common.frac_bits,
        guard_bits: common.guard_bits,
        max_bits: common.max_bits,
        auto_escalate: !common.no_escalate,
        initial_bits: common.bits,
    };
    policy.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(policy)
}

fn tail_eps_from(common: &CommonArgs) -> Result<Option<ErrBound>, CliError> {
    match &common.tail_eps {
        None => Ok(None),
        Some(s) => match ErrBound::parse_decimal_down(s) {
            Some(e) if !e.is_zero() => Ok(Some(e)),
            _ => Err(CliError::Config(format!("--tail-eps expects a positive decimal, got {s:?}"))),
        },
    }
}

fn parse_laws(ids: &[String]) -> Result<Vec<Law>, CliError> {
    if ids.is_empty() {
        return Ok(Law::ALL.to_vec());
    }
    ids.iter()
        .map(|id| {
            Law::from_id(id).ok_or_else(|| {
                let known: Vec<&str> = Law::ALL.iter().map(|l| l.id()).collect();
                CliError::Config(format!("unknown law {id:?}; known laws: {}", known.join(", ")))
            })
        })
        .collect()
}

fn execute(cli: &Cli, kernels: &dyn ExactKernels, jobs: usize) -> Result<Outcome, CliError> {
    let common = &cli.common;
    let policy = policy_from(common)?;
    let config = RecordConfig { policy: policy.clone(), tail_eps: tail_eps_from(common)?, tail_method: common.tail_method.into() };
    Ok(match &cli.command {
        Command::Verify { n_max } => commands::verify(*n_max, common.seed, kernels),
        Command::Table { n } => commands::table(&n.to_vec(), &config, jobs),
        Command::Criterion { n } => commands::criterion(&n.to_vec(), &policy, jobs),
        Command::Asym { laws, points, n } => {
            let laws = parse_laws(laws)?;
            if points.contains(&0) {
                return Err(CliError::Config("--points values must be at least 1".into()));
            }
            let pts: Option<Vec<u64>> = match n {
                Some(r) => Some(r.to_vec()),
                None if !points.is_empty() => Some(points.clone()),
                None => None,
            };
            commands::asym(&laws, pts.as_deref(), jobs)
        }
        Command::Gamma { digits } => commands::gamma(*digits),
    })
}

fn write_output(cli: &Cli, outcome: &Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.common.format;
    match &cli.common.out {
        Some(path) => {
            let bytes = outcome.table.to_bytes(format)?;
            fs::write(path, bytes)?;
        }
        None => match &outcome.text {
            Some(line) => writeln!(stdout, "{line}")?,
            None => outcome.table.write(format, stdout)?,
        },
    }
    Ok(())
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &Reference, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with injectable kernels and output streams.
pub fn run_with<I, T>(argv: I, kernels: &dyn ExactKernels, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let started = Instant::now();
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::IO_OR_CONFIG } else { exit::SUCCESS };
            let _ = if e.use_stderr() { write!(stderr, "{}", e.render()) } else { write!(stdout, "{}", e.render()) };
            return code;
        }
    };
    let jobs = cli.common.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);

    let mut cache = match &cli.common.cache_dir {
        Some(dir) => match DiskCache::open(dir).and_then(|mut c| c.load_all().map(|_| c)) {
            Ok(c) => Some(c),
            Err(e) => {
                let _ = writeln!(stderr, "gammalab: {e}");
                return e.exit_code();
            }
        },
        None => None,
    };

    let result = execute(&cli, kernels, jobs).and_then(|outcome| {
        write_output(&cli, &outcome, stdout)?;
        if let Some(c) = cache.as_mut() {
            c.store_all()?;
        }
        Ok(outcome)
    });
    let (outcome, exit_code) = match result {
        Ok(o) => {
            let code = o.exit_code;
            (Some(o), code)
        }
        Err(e) => {
            let _ = writeln!(stderr, "gammalab: {e}");
            (None, e.exit_code())
        }
    };
    if let Some((identity, n)) = outcome.as_ref().and_then(first_failed_suite) {
        let _ = writeln!(stderr, "gammalab: FAIL {identity} at n = {n}");
    }

    let manifest = RunManifest {
        tool: "gammalab",
        version: env!("CARGO_PKG_VERSION"),
        command_line: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        command: cli.command.name().to_string(),
        policy: PolicySummary {
            bits: cli.common.bits,
            frac_bits: cli.common.frac_bits,
            guard_bits: cli.common.guard_bits,
            max_bits: cli.common.max_bits,
            auto_escalate: !cli.common.no_escalate,
            tail_eps: cli.common.tail_eps.clone(),
            tail_method: gammalab_core::sequences::TailMethod::from(cli.common.tail_method).name(),
        },
        seed: cli.common.seed,
        n_range: cli.command.n_range(),
        jobs,
        format: cli.common.format.name(),
        output: cli.common.out.as_ref().map(|p| p.display().to_string()),
        suites: outcome.as_ref().map(|o| o.suites.clone()).unwrap_or_default(),
        cache: cache.as_ref().map(|c| CacheSummary { dir: c.dir().display().to_string(), stats: c.stats }),
        timings: Timings {
            total_seconds: started.elapsed().as_secs_f64(),
            stages: outcome
                .as_ref()
                .map(|o| o.stages.iter().map(|(l, s)| StageTiming { label: l.clone(), seconds: *s }).collect())
                .unwrap_or_default(),
        },
        exit_code,
    };
    let written = match &cli.common.out {
        Some(path) => serde_json::to_vec_pretty(&manifest)
            .map_err(CliError::from)
            .and_then(|b| fs::write(manifest_path(path), b).map_err(CliError::from)),
        None => serde_json::to_writer(&mut *stderr, &manifest)
            .map_err(CliError::from)
            .and_then(|_| writeln!(stderr).map_err(CliError::from)),
    };
    match written {
        Ok(()) => exit_code,
        Err(e) => {
            let _ = writeln!(stderr, "gammalab: {e}");
            error::worse_of(exit_code, e.exit_code())
        }
    }
}

/// `verify` reports its first failing identity on stderr.
fn first_failed_suite(o: &Outcome) -> Option<(String, String)> {
    if !o.table.columns().iter().any(|c| c == "identity") {
        return None;
    }
    o.table.rows().iter().find_map(|row| match (&row[0], &row[3]) {
        (table::Cell::Text(id), table::Cell::Text(n)) => Some((id.clone(), n.clone())),
        _ => None,
    })
}
