use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;
mod svg;

use commands::Context;

#[derive(Parser)]
#[command(name = "lgmirror", version, about = "Landau-Ginzburg mirror models: critical loci, vanishing cycles and Hom ranks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long, global = true, env = "LGMIRROR_OUT", default_value = "lgmirror-out")]
    out: PathBuf,
    /// Override a tolerance, e.g. `--tol residual=1e-10`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Also write SVG plots.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Args, Clone, Debug)]
pub struct ModelArgs {
    /// Built-in model name.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub preset: Option<String>,
    /// TOML model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Parameter values, `name=value,...`; values may be complex (`0.1+0.2i`).
    #[arg(long = "param", value_delimiter = ',')]
    pub params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArcChoice {
    /// The reference value and arcs of the deformed del Pezzo example.
    Paper,
    /// Straight arcs, or half circles below the chord when blocked.
    Auto,
}

#[derive(Args, Clone, Debug)]
pub struct CycleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = ArcChoice::Auto)]
    pub arcs: ArcChoice,
    /// Variable in which the fiber equation is quadratic.
    #[arg(long)]
    pub cover: Option<String>,
    #[arg(long)]
    pub base: Option<String>,
    /// Reference value for `--arcs auto`.
    #[arg(long)]
    pub lambda0: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Eliminate the relations of a model and print the potential.
    BuildMirror(ModelArgs),
    /// Stationary points, Hessian classes and critical values.
    Critical(ModelArgs),
    /// Branch-point braids and vanishing cycles of a two-variable potential.
    Cycles(CycleArgs),
    /// Directed quiver matrix of the vanishing cycles.
    Quiver(CycleArgs),
    /// Solve [A1,B1][A2,B2] = target in SU(2) with some generators fixed to I.
    FloerSu2 {
        /// Generators fixed to the identity, e.g. `a1,b1`.
        #[arg(long, value_delimiter = ',')]
        fix: Vec<String>,
        /// `I` or `-I`.
        #[arg(long, default_value = "-I", allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        starts: usize,
    },
    /// Hom ranks in the category of singularities of the three-component fiber.
    DsingExt {
        /// Sheaf presets such as `O_S1(E'12),O_S2`; defaults to the four
        /// objects matched with the standard loops.
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
    },
    /// Run every command on the main examples.
    ReportAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match Context::new(cli.seed, &cli.tol, cli.svg, cli.out.clone()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::BuildMirror(m) => commands::build_mirror(&ctx, m),
        Command::Critical(m) => commands::critical(&ctx, m),
        Command::Cycles(a) => commands::cycles(&ctx, a, false),
        Command::Quiver(a) => commands::cycles(&ctx, a, true),
        Command::FloerSu2 { fix, target, starts } => commands::floer_su2(&ctx, fix, target, *starts),
        Command::DsingExt { objects } => commands::dsing_ext(&ctx, objects),
        Command::ReportAll => commands::report_all(&ctx),
    };
    match result {
        Ok(report) => {
            for w in &report.diagnostics {
                eprintln!("warning: {w}");
            }
            if report.diagnostics.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
