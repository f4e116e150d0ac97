//! Command-line driver for `ncproj-core`: parses presentation files, runs one command and
//! emits a [`report::Report`].

pub mod report;
pub mod scenarios;

mod commands;
mod load;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use report::{Format, Report};

pub use load::CliError;

#[derive(Parser, Debug)]
#[command(name = "ncproj", version, about = "Degree-truncated computation in graded algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Bound {
    /// Truncation degree of the input algebra.
    #[arg(short = 'D', value_parser = clap::value_parser!(i64).range(1..))]
    d: i64,
}

#[derive(Args, Debug, Clone, Copy)]
struct Index {
    /// Veronese index.
    #[arg(short = 'n', value_parser = clap::value_parser!(i64).range(1..))]
    n: i64,
}

#[derive(Args, Debug, Clone)]
struct FunctorArgs {
    /// Use the Veronese pushforward `A-mod → A⁽ⁿ⁾-mod` (n = 1 gives the identity).
    #[arg(short = 'n', value_parser = clap::value_parser!(i64).range(1..), conflicts_with = "restrict")]
    n: Option<i64>,
    /// Treat the input as a morphism file and use restriction along it.
    #[arg(long)]
    restrict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of a presented algebra.
    Hilbert {
        input: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Presentation of the Veronese subalgebra, optionally pushing a module forward.
    Veronese {
        input: PathBuf,
        #[command(flatten)]
        index: Index,
        /// Module spec (file or inline text) to push forward.
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// The right ideals I_1, …, I_n and their intersection I.
    IdealFamily {
        input: PathBuf,
        #[command(flatten)]
        index: Index,
        #[command(flatten)]
        bound: Bound,
    },
    /// Degree-wise containment of I^{2n} in I⁽ⁿ⁾A.
    CheckLemmaI {
        input: PathBuf,
        #[command(flatten)]
        index: Index,
        #[command(flatten)]
        bound: Bound,
    },
    /// Affine-map hypothesis and finiteness of B/φ(𝔪)B for a morphism file.
    CheckAffine {
        input: PathBuf,
        /// Largest power of φ(𝔪) to try.
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: usize,
        #[command(flatten)]
        bound: Bound,
    },
    /// Largest two-sided ideal inside the right ideal generated by `--gen` elements.
    LargestTwosided {
        input: PathBuf,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Functors for the quotient A → A/J, J generated by `--gen` elements.
    ClosedImmersion {
        input: PathBuf,
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Module spec over A; defaults to A itself.
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Presents R[t; σ, δ] from `--sigma x -> poly` and `--delta x -> poly` data.
    OreExtend {
        input: PathBuf,
        #[arg(long = "t-weight", value_parser = clap::value_parser!(i64).range(1..))]
        t_weight: i64,
        #[arg(long)]
        sigma: Vec<String>,
        #[arg(long)]
        delta: Vec<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Degree-class projectors p_0, …, p_{n−1} on a module.
    Projector {
        input: PathBuf,
        #[command(flatten)]
        index: Index,
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Window-level comparison of M_{≥s} and N_{≥s}.
    TailsEqual {
        input: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(short = 's', long = "from", default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[command(flatten)]
        bound: Bound,
    },
    /// Kernel and cokernel of f*f_*M → M.
    Verevkin {
        input: PathBuf,
        #[command(flatten)]
        index: Index,
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Smallest d with A⁽ᵈ⁾ generated in degree one.
    MinVeronese {
        input: PathBuf,
        #[arg(long = "max", value_parser = clap::value_parser!(i64).range(1..))]
        max: i64,
        #[command(flatten)]
        bound: Bound,
    },
    /// Both sides of the tensor-Hom adjunction for a functor's bimodule.
    AdjunctionCheck {
        input: PathBuf,
        #[command(flatten)]
        functor: FunctorArgs,
        /// Module over the larger algebra.
        #[arg(long)]
        left: String,
        /// Bounded module over the smaller algebra.
        #[arg(long)]
        right: String,
        #[command(flatten)]
        bound: Bound,
    },
    /// Component dimensions of a functor's bimodule.
    Watts {
        input: PathBuf,
        #[command(flatten)]
        functor: FunctorArgs,
        #[command(flatten)]
        bound: Bound,
    },
    /// Replays a scenario suite (TOML) and checks every expectation.
    Scenarios { suite: PathBuf },
}

/// Quotes an argument for the re-runnable command echo.
fn shell_word(s: &str) -> String {
    let plain = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./=:,+@".contains(c));
    if plain {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

pub fn command_line(args: &[String]) -> String {
    std::iter::once("ncproj".to_string())
        .chain(args.iter().map(|a| shell_word(a)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `args` (without the program name), resolves relative paths against `base` and
/// runs the command.
pub fn execute_in(args: &[String], base: &Path) -> Result<(Report, Format), CliError> {
    let argv = std::iter::once("ncproj".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx = load::Ctx::new(base);
    let mut report = Report::new(command_line(args), cli.seed);
    commands::dispatch(&ctx, cli.command, cli.seed, &mut report)?;
    Ok((report, cli.format))
}

pub fn execute(args: &[String]) -> Result<(Report, Format), CliError> {
    execute_in(args, Path::new("."))
}

/// Runs one command line, printing the report to `out` and errors to `err`. Exit code:
/// 0 pass, 1 property failure, 2 usage or parse error.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("ncproj".to_string()).chain(args.iter().cloned());
    if let Err(e) = Cli::try_parse_from(argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = write!(out, "{e}");
            return 0;
        }
        let _ = write!(err, "{e}");
        return 2;
    }
    match execute(args) {
        Ok((report, format)) => {
            let _ = out.write_all(report.render(format).as_bytes());
            report.verdict.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "ncproj: {e}");
            2
        }
    }
}
