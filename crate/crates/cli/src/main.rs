use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cli::{run, Command, Format, Outcome, RunConfig, VERSION};

#[derive(Parser)]
#[command(version = VERSION, about = "Quotients of the building, their homology, and apartment classes")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Assemble the truncated quotient and write the complex and vertex data.
    Quotient(Flags),
    /// Relative, compact support and Borel-Moore groups with duality checks.
    Homology(Flags),
    /// Apartment classes for a basis file, the span test, and export tables.
    Modsym(Flags),
    /// Run the acceptance suite.
    Verify(Flags),
}

/// Each flag overrides the same field of the JSON config.
#[derive(Args)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    level: Option<String>,
    #[arg(long)]
    alpha_max: Option<i64>,
    #[arg(long)]
    d_gen: Option<u32>,
    #[arg(long)]
    aut_ceiling: Option<usize>,
    #[arg(long)]
    enum_ceiling: Option<usize>,
    #[arg(long)]
    series_ceiling: Option<i64>,
    #[arg(long)]
    generator_ceiling: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    complex_file: Option<PathBuf>,
    #[arg(long)]
    basis_file: Option<PathBuf>,
    /// Skip the span test in `modsym`.
    #[arg(long)]
    no_span: bool,
    #[arg(long, value_delimiter = ',')]
    criteria: Option<Vec<usize>>,
    #[arg(long)]
    golden_dir: Option<PathBuf>,
    #[arg(long)]
    timing: bool,
}

impl Flags {
    fn config(self) -> Result<RunConfig, cli::CliError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        set!(q, d, level, alpha_max, d_gen, aut_ceiling, enum_ceiling, series_ceiling, generator_ceiling, format);
        macro_rules! set_opt {
            ($($f:ident),*) => { $( if self.$f.is_some() { c.$f = self.$f; } )* };
        }
        set_opt!(out_dir, complex_file, basis_file, criteria, golden_dir);
        c.span &= !self.no_span;
        c.timing |= self.timing;
        Ok(c)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, flags) = match cli.command {
        Sub::Quotient(f) => (Command::Quotient, f),
        Sub::Homology(f) => (Command::Homology, f),
        Sub::Modsym(f) => (Command::Modsym, f),
        Sub::Verify(f) => (Command::Verify, f),
    };
    let outcome = match flags.config() {
        Ok(cfg) => run(cmd, &cfg),
        Err(e) => Outcome::error(cmd, &RunConfig::default(), &e),
    };
    let outcome = match outcome.write() {
        Ok(()) => outcome,
        Err(e) => Outcome::error(cmd, &outcome.report.config, &e),
    };
    print!("{}", outcome.rendered());
    ExitCode::from(outcome.exit_code as u8)
}
