use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sigframes", version, about = "Signatures, moving frames and rotation invariants of curves")]
pub struct Cli {
    /// Tolerance for domain checks and curve equivalence.
    #[arg(long, global = true, env = "SIGFRAMES_TOL", default_value_t = 1e-9)]
    pub tol: f64,

    /// Emit values as JSON numbers instead of strings.
    #[arg(long, global = true)]
    pub float: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated signature or log-signature of a curve.
    Signature(SignatureArgs),
    /// Rotation invariants of a curve.
    Invariants(InvariantsArgs),
    /// Decide whether two curves agree up to rotation, reflection and translation.
    Compare(CompareArgs),
    /// Rotate a curve onto the cross-section and write the result.
    Invariantize(InvariantizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// `t ↦ (t, t², t³)` on `[0, 1]`.
    Moment,
    /// `t ↦ (t², t³, t)`, the moment curve after a cyclic permutation of axes.
    MomentRotated,
}

impl Demo {
    pub fn exponents(self) -> &'static [u32] {
        match self {
            Demo::Moment => &[1, 2, 3],
            Demo::MomentRotated => &[2, 3, 1],
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// CSV file with one sample point per row.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Built-in curve instead of a file.
    #[arg(long, value_enum)]
    pub demo: Option<Demo>,
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    #[command(flatten)]
    pub source: Source,

    /// Expected dimension; checked against the input.
    #[arg(long)]
    pub dim: Option<usize>,

    #[arg(long)]
    pub level: usize,

    /// Exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,

    /// Signature coefficients indexed by words (default).
    #[arg(long, conflicts_with = "lyndon")]
    pub words: bool,

    /// Log-signature coordinates indexed by Lyndon words.
    #[arg(long)]
    pub lyndon: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Im,
    P,
    Q,
    Frame,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub source: Source,

    #[arg(long)]
    pub dim: Option<usize>,

    #[arg(long, value_enum)]
    pub family: Family,

    #[arg(long)]
    pub level: usize,

    /// Exact rational arithmetic (families im, p, q).
    #[arg(long)]
    pub exact: bool,

    /// Only rotations: keep orientation-sensitive invariants and frames with det = 1.
    #[arg(long)]
    pub proper: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Frame,
    Im,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// First curve: a CSV path or `demo:moment` / `demo:moment-rotated`.
    #[arg(long)]
    pub a: String,

    /// Second curve, same forms as `--a`.
    #[arg(long)]
    pub b: String,

    #[arg(long)]
    pub level: usize,

    /// Only rotations count as equivalences.
    #[arg(long)]
    pub proper: bool,

    #[arg(long, value_enum, default_value_t = Method::Frame)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct InvariantizeArgs {
    #[command(flatten)]
    pub source: Source,

    #[arg(long)]
    pub dim: Option<usize>,

    #[arg(long)]
    pub level: usize,

    /// Where to write the rotated curve.
    #[arg(long)]
    pub output: PathBuf,

    #[arg(long)]
    pub proper: bool,
}
