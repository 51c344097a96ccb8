//! Command-line harness: configuration, dispatch to the core library,
//! result caching and output formatting.

pub mod cache;
pub mod config;
pub mod dispatch;
pub mod error;
pub mod output;

use clap::Parser;
use config::RunConfig;
use dispatch::{dispatch, Context};
use error::{CliError, ErrorKind};
use std::ffi::OsString;
use std::io::Write;

fn report_error(err: &mut dyn Write, e: &CliError) {
    let line = serde_json::json!({ "error": { "kind": e.kind, "message": e.message, "exit_code": e.kind.exit_code() } });
    let _ = writeln!(err, "{line}");
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            report_error(err, &CliError::usage(e.to_string().trim_end()));
            return 2;
        }
    };
    match execute(&cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            report_error(err, &e);
            e.kind.exit_code()
        }
    }
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cache_path = if cfg.no_cache {
        None
    } else {
        cfg.cache.clone().or_else(cache::default_path)
    };
    let cache = cache_path.map(|p| cache::Cache::open(&p)).transpose()?;
    let ctx = Context {
        cache,
        oracle_cap: cfg.oracle_cap,
        partition_cap: cfg.partition_cap,
        materialize_cap: cfg.materialize_cap,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w as usize);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::new(ErrorKind::Internal, e.to_string()))?;
    let report = pool.install(|| dispatch(cfg, &ctx))?;
    output::write_records(out, &report.records, cfg.format)?;
    for f in &report.failures {
        let line = serde_json::json!({
            "error": { "kind": f.error.kind, "message": f.error.message, "exit_code": f.error.kind.exit_code() },
            "operation": f.operation,
            "params": f.params,
        });
        writeln!(err, "{line}")?;
    }
    Ok(report.exit_code())
}
