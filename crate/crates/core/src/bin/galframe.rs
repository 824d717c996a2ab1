use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use galframe::cli::{self, CliError, Options};
use galframe::report::Report;
use galframe::DEFAULT_MAX_FAMILY;

#[derive(Parser)]
#[command(name = "galframe", version, about = "Canonical frames and complex algebras of finite implicative lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cap on the number of stable sets enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FAMILY)]
    max_family: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Include elapsed times (reports are then not byte-stable).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct ModeArgs {
    /// Use proper filters and ideals only (default).
    #[arg(long, conflicts_with = "all_points")]
    proper_only: bool,

    /// Include the improper filter and ideal.
    #[arg(long)]
    all_points: bool,
}

impl ModeArgs {
    fn proper_only(&self) -> bool {
        !self.all_points
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice and check A1-A3, A4, H1-H2 and An.
    CheckLattice {
        /// Corpus name or GLATTICE file.
        source: String,
        /// Values of n for the iterated-arrow axiom An.
        #[arg(long = "an", value_delimiter = ',', default_values_t = [1usize, 2, 3])]
        an: Vec<usize>,
    },
    /// Build the canonical frame of a lattice.
    Canonical {
        /// Corpus name or GLATTICE file.
        source: String,
        #[command(flatten)]
        mode: ModeArgs,
        /// Run the representation checks.
        #[arg(long)]
        verify: bool,
        /// Write the GFRAME file here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check frame axioms, residuation, distributivity and the Heyting condition.
    CheckFrame {
        /// GFRAME file, GLATTICE file or corpus name.
        source: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Print the stable-set lattice with its operation tables.
    ComplexAlgebra {
        /// GFRAME file, GLATTICE file or corpus name.
        source: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Interpret a formula and compare the semantic clauses.
    ModelCheck {
        /// GFRAME file, GLATTICE file or corpus name.
        source: String,
        /// The formula, e.g. "p | (p -> 0)".
        formula: String,
        #[command(flatten)]
        mode: ModeArgs,
        /// Bind an atom: p=X_a or p={x1,x2}.
        #[arg(long = "let", value_name = "ATOM=SPEC")]
        bindings: Vec<String>,
        /// Also check the clauses on this many random formulas over the bound atoms.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    let opts = Options { max_family: cli.max_family, seed: cli.seed, timing: cli.timing };
    Ok(match cli.command {
        Command::CheckLattice { source, an } => (cli::check_lattice(&source, &an, &opts)?, None),
        Command::Canonical { source, mode, verify, output } => {
            (cli::canonical(&source, mode.proper_only(), verify, &opts)?, output)
        }
        Command::CheckFrame { source, mode } => (cli::check_frame(&source, mode.proper_only(), &opts)?, None),
        Command::ComplexAlgebra { source, mode } => {
            (cli::complex_algebra(&source, mode.proper_only(), &opts)?, None)
        }
        Command::ModelCheck { source, formula, mode, bindings, random } => {
            (cli::model_check(&source, mode.proper_only(), &bindings, &formula, random, &opts)?, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    let (mut report, output) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(path) = &output {
        if let Some(text) = report.artifact.take() {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    match format {
        Format::Machine => print!("{}", report.to_json()),
        // The frame goes to stdout so it can be redirected; the report
        // then moves to stderr.
        Format::Text => match report.artifact.take() {
            Some(frame) => {
                print!("{frame}");
                eprint!("{}", report.to_text());
            }
            None => print!("{}", report.to_text()),
        },
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
