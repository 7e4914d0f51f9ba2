use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "powseq", version, about = "Power sequences modulo one, certified")]
pub struct Cli {
    /// Output format; csv prints the command's table.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Attach a plot-ready (n, value) table to the JSON output.
    #[arg(long, global = true)]
    pub emit_table: bool,
    /// Worker threads for per-n certification.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Initial working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: u32,
    /// Cap on precision escalation (bits); POWSEQ_MAX_PRECISION sets the default.
    #[arg(long, global = true)]
    pub max_precision: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    OneSided,
    Centered,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build alpha >= A with ||lambda alpha^n - theta_n|| bounded.
    SynthAlpha(SynthAlphaArgs),
    /// Build lambda for a given alpha > 1.
    SynthLambda(SynthLambdaArgs),
    /// Emit a target sequence.
    Targets(TargetArgs),
    /// Run Boyd's recursion and certify its limits.
    Boyd(BoydArgs),
    /// Classify a monic irreducible polynomial as P.V., Salem or neither.
    Classify(PolyArgs),
    /// ||alpha^n|| for a P.V. number.
    PvResidues(PvResiduesArgs),
    /// g(k) in Waring's problem.
    Waring(WaringArgs),
    /// Interval frequencies, Weyl sums and star discrepancy.
    UdStats(UdArgs),
    /// Recover a linear recurrence from samples.
    Recur(RecurArgs),
    /// Reduce p/q with an integral series to lowest terms.
    Fatou(FatouArgs),
    /// p-adic integrality of a recovered recurrence.
    Padic(PadicArgs),
    /// Newton polygon of a rational polynomial.
    Newton(NewtonArgs),
    /// p-adic growth diagnostic for a sample sequence.
    Growth(GrowthArgs),
    /// Recover lambda_i(n) for given roots.
    Recover(RecoverArgs),
    /// Look for an integer recurrence in E(lambda alpha^n).
    DetectPv(DetectArgs),
    /// Re-run a manifest and compare results.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Explicit targets, comma separated rationals.
    #[arg(long)]
    pub targets: Option<String>,
    /// File with one rational target per line.
    #[arg(long)]
    pub targets_file: Option<PathBuf>,
    /// theta_n = <n x> for a rational or quadratic x, e.g. "sqrt(2)".
    #[arg(long, allow_hyphen_values = true)]
    pub multiples: Option<String>,
    /// theta_n = 1/4 on these indices, 3/4 elsewhere.
    #[arg(long)]
    pub index_set: Option<String>,
    /// Number of targets for --multiples and --index-set.
    #[arg(long)]
    pub n: Option<usize>,
    /// Dyadic resolution of --multiples targets.
    #[arg(long, default_value_t = 64)]
    pub target_bits: u32,
}

#[derive(Args, Debug)]
pub struct SynthAlphaArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub a: String,
    #[arg(long, value_enum, default_value = "one-sided")]
    pub variant: VariantArg,
    #[command(flatten)]
    pub targets: TargetArgs,
}

#[derive(Args, Debug)]
pub struct SynthLambdaArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub l: String,
    /// Rational or real quadratic, e.g. "3" or "1+sqrt(2)".
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "one-sided")]
    pub variant: VariantArg,
    #[command(flatten)]
    pub targets: TargetArgs,
}

#[derive(Args, Debug)]
pub struct BoydArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub a0: String,
    /// Defaults to the least admissible value.
    #[arg(long)]
    pub a1: Option<String>,
    /// f(1), f(2), ... as comma separated 0/1 values.
    #[arg(long, default_value = "")]
    pub f: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Integer coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Args, Debug)]
pub struct PvResiduesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct WaringArgs {
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    /// Comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// File with one rational per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct UdArgs {
    #[command(flatten)]
    pub samples: SampleArgs,
    /// Samples n x for n = 1..=count, x rational or quadratic.
    #[arg(long, allow_hyphen_values = true)]
    pub multiples: Option<String>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Intervals "s,t", separated by ';'.
    #[arg(long, default_value = "0,1/2", allow_hyphen_values = true)]
    pub intervals: String,
    /// Weyl frequencies.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub h: String,
}

#[derive(Args, Debug)]
pub struct RecurArgs {
    #[command(flatten)]
    pub samples: SampleArgs,
    #[arg(long)]
    pub max_order: usize,
    /// Terms to extend backward.
    #[arg(long, default_value_t = 0)]
    pub back: usize,
    /// Start index for the numerator polynomial; defaults to the first sample.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
}

#[derive(Args, Debug)]
pub struct FatouArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct PadicArgs {
    #[command(flatten)]
    pub samples: SampleArgs,
    #[arg(long)]
    pub max_order: usize,
    #[arg(long)]
    pub p: String,
}

#[derive(Args, Debug)]
pub struct NewtonArgs {
    /// Rational coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long)]
    pub p: String,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub samples: SampleArgs,
    #[arg(long)]
    pub p: String,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub samples: SampleArgs,
    /// Roots with multiplicities, "x:d" separated by ';', e.g. "1/2+1/2*sqrt(5):1;1/2-1/2*sqrt(5):1".
    #[arg(long, allow_hyphen_values = true)]
    pub roots: String,
}

#[derive(Args, Debug)]
pub struct DetectArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// A previous output document, or just its manifest.
    #[arg(long)]
    pub manifest: PathBuf,
}
