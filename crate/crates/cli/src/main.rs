//! `qcat`: single-point reports, parameter sweeps, figure data emission and
//! the closed-form vs brute-force verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod figures;
mod output;
mod report;
mod rows;
mod sweep;
mod verify_cmd;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcat_core::states::StateKind;

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "q-deformed coherent and cat states: reports, sweeps, figure data, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every observable for a single state
    Report(ReportArgs),
    /// Sweep alpha or q and write CSV rows of requested quantities
    Sweep(SweepArgs),
    /// Emit the data behind one of the built-in figure presets
    Figure(FigureArgs),
    /// Compare every closed form against the brute-force oracle
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Coherent,
    CatEven,
    CatOdd,
}

impl From<KindArg> for StateKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Coherent => StateKind::Coherent,
            KindArg::CatEven => StateKind::CatEven,
            KindArg::CatOdd => StateKind::CatOdd,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Sweeps and figures are tabular; only CSV is supported there.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    Alpha,
    Q,
}

#[derive(Args)]
pub struct ReportArgs {
    /// Deformation parameter q in (0, 1]
    #[arg(long)]
    pub q: f64,
    /// Real part of alpha
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_re: f64,
    /// Imaginary part of alpha
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_im: f64,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Swept variable
    #[arg(long, value_enum)]
    pub var: SweepVar,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    /// Number of rows (>= 2), endpoints included
    #[arg(long)]
    pub steps: usize,
    /// Fixed q; required when sweeping alpha
    #[arg(long)]
    pub q: Option<f64>,
    /// Fixed alpha real part; required when sweeping q
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_re: Option<f64>,
    /// Fixed alpha imaginary part
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_im: Option<f64>,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Comma-separated column names
    #[arg(
        long,
        default_value = "var_x,var_y,g_q,gur_lhs_sq,gur_rhs_sq,mean_n,mandel_paper,mandel_derived"
    )]
    pub outputs: String,
    /// Output file (stdout when omitted); written to a temp file and renamed
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Args)]
pub struct FigureArgs {
    /// One of: fig1a, fig1b, fig2, fig3, fig4a, fig4b, fig5a, fig5b
    #[arg(long)]
    pub preset: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Deformation values for the multi-curve presets (fig2, fig5)
    #[arg(long, default_value = "0.8,0.9,0.99")]
    pub q_list: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Relative tolerance for grid comparisons (default 1e-9)
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance for near-zero grid comparisons (default 1e-12)
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Restrict the default grid, e.g. "q=1" or "q=0.5,0.9;alpha=0.8"
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

/// Print a domain/usage diagnostic and return the usage exit code.
pub fn usage_error(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    2
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Report(args) => report::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Figure(args) => figures::run(args),
        Command::Verify(args) => verify_cmd::run(args),
    };
    std::process::exit(code);
}
