//! Command-line driver: one subcommand per figure or table of the experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wbasis::{FamilyKind, WeightFamily};

#[derive(Parser, Debug)]
#[command(name = "wbasis", version, about = "W-function bases, differentiation matrices and convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Top-left block of D^s from a truncated product.
    Dmat(DmatArgs),
    /// Fast product D^r f for a seeded random f.
    Matvec(MatvecArgs),
    /// Expansion coefficients of a test function.
    Expand(ExpandArgs),
    /// Sup and L2 errors of partial sums over a list of N.
    Errplot(ErrplotArgs),
    /// ι / ι̌ scan of a square section.
    Separability(SeparabilityArgs),
    /// max|D^s| on the display block as the internal truncation grows.
    PowersGrowth(PowersGrowthArgs),
    /// |F_N^(k) − f^(k)| at η = 1e-10 for LAG2, α = 1..4, k = 0..2.
    Table45(Table45Args),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Laguerre,
    Ultraspherical,
    Genhermite,
    Konoplev,
}

#[derive(Args, Debug, Clone)]
struct FamilyOpts {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// JSON file with {kind, alpha, mu, gamma}; replaces the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct DmatArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 100)]
    display: usize,
    #[arg(long, default_value_t = 300)]
    internal: usize,
    /// Check skew symmetry (s = 1) or the (−1)^s symmetry of D^s.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct MatvecArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long = "M", default_value_t = 32)]
    m: usize,
    #[arg(long = "N", default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pad odd sizes with one zero coefficient in the symmetric scheme.
    #[arg(long)]
    zero_pad: bool,
    /// Compare against the dense product.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FuncArg {
    Us1,
    Us2,
    Lag1,
    Lag2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    P,
    Phi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PhiRuleArg {
    Sqrt,
    Weight,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// Differentiate the partial sum.
    Partial,
    /// Expand f′ or f″ directly.
    Expand,
    /// Apply −D to the coefficients.
    Matrix,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, value_enum)]
    func: FuncArg,
    #[arg(long = "N", default_value_t = 30)]
    n: usize,
    #[arg(long, value_enum, default_value_t = BasisArg::Phi)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = PhiRuleArg::Sqrt)]
    phi_rule: PhiRuleArg,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct ErrplotArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, value_enum)]
    func: FuncArg,
    /// Comma-separated list of N.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [5usize, 10, 15, 20, 25, 30, 35, 40])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    deriv: usize,
    /// a:b:n; defaults to [0,30] × 3001 (Laguerre) or [−1,1] × 2001.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value_t = BasisArg::Phi)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = PhiRuleArg::Sqrt)]
    phi_rule: PhiRuleArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Partial)]
    mode: ModeArg,
    /// Extra rows kept when differentiating through D.
    #[arg(long, default_value_t = 0)]
    extra: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct SeparabilityArgs {
    #[command(flatten)]
    family: FamilyOpts,
    /// Section size is N + 1.
    #[arg(long = "N", default_value_t = 23)]
    n: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct PowersGrowthArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, default_value_t = 2)]
    s: u32,
    #[arg(long, default_value_t = 100)]
    display: usize,
    /// Comma-separated internal truncations.
    #[arg(long, value_delimiter = ',', default_values_t = [300usize, 600])]
    internal: Vec<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct Table45Args {
    #[arg(long = "N", default_value_t = 60)]
    n: usize,
    #[command(flatten)]
    output: OutputOpts,
}

impl FamilyOpts {
    fn resolve(&self) -> Result<WeightFamily, commands::CliError> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| commands::CliError::config(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| commands::CliError::config(format!("{}: {e}", path.display())));
        }
        let kind = self
            .family
            .ok_or_else(|| commands::CliError::config("--family (or --config) is required"))?;
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| commands::CliError::config(format!("--{name} is required")));
        let fam = match kind {
            FamilyArg::Laguerre => WeightFamily::laguerre(need(self.alpha, "alpha")?),
            FamilyArg::Ultraspherical => WeightFamily::ultraspherical(need(self.alpha, "alpha")?),
            FamilyArg::Genhermite => WeightFamily::generalized_hermite(need(self.mu, "mu")?),
            FamilyArg::Konoplev => WeightFamily::konoplev(need(self.alpha, "alpha")?, need(self.gamma, "gamma")?),
        };
        Ok(fam?)
    }
}

impl FuncArg {
    fn test_function(self) -> wbasis::expansion::TestFunction {
        use wbasis::expansion::TestFunction::*;
        match self {
            FuncArg::Us1 => Us1,
            FuncArg::Us2 => Us2,
            FuncArg::Lag1 => Lag1,
            FuncArg::Lag2 => Lag2,
        }
    }
}

fn check_domain(f: wbasis::expansion::TestFunction, fam: WeightFamily) -> Result<(), commands::CliError> {
    let support_kind = match fam.kind() {
        FamilyKind::Laguerre => FamilyKind::Laguerre,
        _ => FamilyKind::Ultraspherical,
    };
    if f.domain() == support_kind && fam.kind() != FamilyKind::GeneralizedHermite {
        Ok(())
    } else {
        Err(commands::CliError::config(format!("{f} is not defined on the support of {fam}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
