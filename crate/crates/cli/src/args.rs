use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nev", version, about = "Nevanlinna functionals, identity checks and normality probes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Absolute quadrature tolerance (overrides NEV_ABS_TOL)
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Worker threads; 0 uses all cores. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tables of m, n, N and T over a radius grid
    Analyze(Analyze),
    /// Zeros and poles inside a disk
    Divisor(Divisor),
    /// Run one identity or inequality check
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
    /// Estimate the order of growth
    Order(Order),
    /// Normality probes for an indexed family
    Family {
        #[command(subcommand)]
        probe: Family,
    },
    /// SVG plots
    Plot(Plot),
}

#[derive(Args, Debug)]
pub struct FnArg {
    /// Meromorphic function of z
    #[arg(long = "fn", value_name = "EXPR", allow_hyphen_values = true)]
    pub function: String,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[arg(long)]
    pub radius: Option<f64>,
    /// lo:hi:step or a comma list
    #[arg(long)]
    pub radii: Option<String>,
}

#[derive(Args, Debug)]
pub struct Analyze {
    #[command(flatten)]
    pub f: FnArg,
    /// Comma list of targets; `inf` for the point at infinity
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    pub targets: String,
    #[command(flatten)]
    pub radius: RadiusArgs,
}

#[derive(Args, Debug)]
pub struct Divisor {
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long)]
    pub radius: f64,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    Jensen(RadiusCheck),
    Fft(TargetCheck),
    Cartan(RadiusCheck),
    Growth(TwoRadiusCheck),
    Sft(TargetsCheck),
    Nevest(TwoRadiusCheck),
    Arith(ArithCheck),
    Psi(PsiCheck),
}

#[derive(Args, Debug)]
pub struct RadiusCheck {
    #[command(flatten)]
    pub f: FnArg,
    #[command(flatten)]
    pub radius: RadiusArgs,
}

#[derive(Args, Debug)]
pub struct TargetCheck {
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    #[command(flatten)]
    pub radius: RadiusArgs,
}

#[derive(Args, Debug)]
pub struct TargetsCheck {
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long, allow_hyphen_values = true)]
    pub targets: String,
    #[command(flatten)]
    pub radius: RadiusArgs,
}

#[derive(Args, Debug)]
pub struct TwoRadiusCheck {
    #[command(flatten)]
    pub f: FnArg,
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[arg(long)]
    pub big_radius: f64,
}

#[derive(Args, Debug)]
pub struct ArithCheck {
    #[command(flatten)]
    pub f: FnArg,
    /// Second operand
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// Shift value a
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub target: String,
    #[command(flatten)]
    pub radius: RadiusArgs,
}

#[derive(Args, Debug)]
pub struct PsiCheck {
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[arg(long)]
    pub r0: f64,
}

#[derive(Args, Debug)]
pub struct Order {
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long)]
    pub radii: String,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Template in z and the index n
    #[arg(long)]
    pub family: String,
    /// Index range lo:hi
    #[arg(long = "n")]
    pub n: String,
    /// Domain radius
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    Marty(FamilyArgs),
    Zalcman(Zalcman),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Manual,
}

#[derive(Args, Debug)]
pub struct Zalcman {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Centres z_n as an expression in n (manual mode)
    #[arg(long, allow_hyphen_values = true)]
    pub zn: Option<String>,
    /// Scales rho_n as an expression in n (manual mode)
    #[arg(long, allow_hyphen_values = true)]
    pub rhon: Option<String>,
    /// Comma list of rescaling points w
    #[arg(long, default_value = "0,1,-1", allow_hyphen_values = true)]
    pub w: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// T(r) against log r
    Characteristic,
    /// Heatmap of the spherical derivative on |z| ≤ r0
    Sharp,
    /// m(r, a) and N(r, a) stacked against r
    Stack,
}

#[derive(Args, Debug)]
pub struct Plot {
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    #[command(flatten)]
    pub f: FnArg,
    #[arg(long)]
    pub radii: Option<String>,
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    pub target: String,
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
}
