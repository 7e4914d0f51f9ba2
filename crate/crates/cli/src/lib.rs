//! Command-line front end: argument handling, output documents, manifests
//! and replay.

pub mod args;
mod commands;
pub mod error;
pub mod json;
mod replay;

use args::{Cli, Command, Format};
use clap::Parser;
use commands::{Context, Outcome};
use error::CliError;
use powseq::numeric::precision::PrecisionPolicy;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::time::Instant;

pub const MAX_PRECISION_ENV: &str = "POWSEQ_MAX_PRECISION";
pub const DEFAULT_MAX_PRECISION: u32 = 1 << 20;

/// Captured result of one invocation.
#[derive(Debug)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Invocation {
    fn err(e: &CliError) -> Self {
        Invocation {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

fn max_precision(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var(MAX_PRECISION_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_PRECISION_ENV} must be a bit count, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_PRECISION),
    }
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<(&'static str, Outcome), CliError> {
    use commands::*;
    Ok(match cmd {
        Command::SynthAlpha(a) => ("synth-alpha", synth_alpha_cmd(a, ctx)?),
        Command::SynthLambda(a) => ("synth-lambda", synth_lambda_cmd(a, ctx)?),
        Command::Targets(a) => ("targets", targets_cmd(a, ctx)?),
        Command::Boyd(a) => ("boyd", boyd_cmd(a)?),
        Command::Classify(a) => ("classify", classify_cmd(a, ctx)?),
        Command::PvResidues(a) => ("pv-residues", pv_residues_cmd(a, ctx)?),
        Command::Waring(a) => ("waring", waring_cmd(a)?),
        Command::UdStats(a) => ("ud-stats", ud_cmd(a, ctx)?),
        Command::Recur(a) => ("recur", recur_cmd(a)?),
        Command::Fatou(a) => ("fatou", fatou_cmd(a)?),
        Command::Padic(a) => ("padic", padic_cmd(a)?),
        Command::Newton(a) => ("newton", newton_cmd(a)?),
        Command::Growth(a) => ("growth", growth_cmd(a)?),
        Command::Recover(a) => ("recover", recover_cmd(a)?),
        Command::DetectPv(a) => ("detect-pv", detect_cmd(a, ctx)?),
        Command::Replay(a) => ("replay", replay::replay_cmd(a)?),
    })
}

fn table_csv(t: &commands::Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            })
            .collect();
        w.write_record(&cells).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Runs one command line and returns what it would print and its exit code.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Invocation { stdout: text, stderr: String::new(), code }
            } else {
                Invocation { stdout: String::new(), stderr: text, code: 2 }
            };
        }
    };
    let max_bits = match max_precision(cli.max_precision) {
        Ok(m) => m,
        Err(e) => return Invocation::err(&e),
    };
    if cli.precision < 2 || max_bits < cli.precision {
        return Invocation::err(&CliError::Usage("need 2 <= --precision <= --max-precision".into()));
    }
    if let Some(j) = cli.jobs {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let ctx = Context {
        policy: PrecisionPolicy::new(cli.precision, max_bits),
        precision: cli.precision,
        want_table: cli.emit_table || cli.format == Format::Csv,
    };
    let started = Instant::now();
    let (name, out) = match dispatch(&cli.command, &ctx) {
        Ok(x) => x,
        Err(e) => return Invocation::err(&e),
    };
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    if cli.format == Format::Csv {
        return match &out.table {
            Some(t) => Invocation { stdout: table_csv(t), stderr: String::new(), code: 0 },
            None => Invocation::err(&CliError::Usage(format!("{name} has no tabular output"))),
        };
    }
    let mut doc = json!({
        "command": name,
        "params": out.params.clone(),
        "result": out.result,
        "certificates": out.certificates,
        "manifest": {
            "command": name,
            "params": out.params,
            "precision": {"initial_bits": cli.precision, "max_bits": max_bits},
            "version": env!("CARGO_PKG_VERSION"),
            "duration_ms": elapsed,
        },
    });
    if cli.emit_table {
        if let Some(t) = &out.table {
            doc["table"] = json!({"columns": t.columns, "rows": t.rows});
        }
    }
    let code = if name == "replay" && doc["result"]["matches"] == json!(false) { 1 } else { 0 };
    Invocation {
        stdout: serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        stderr: if code == 1 { "error: replay mismatch\n".into() } else { String::new() },
        code,
    }
}
