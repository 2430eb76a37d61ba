//! `mirrorforge`: run the verification pipelines from the command line.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 invalid input, 3 a Hochschild
//! computation did not stabilize.

mod commands;
mod examples;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mirrorforge::Rational;

use commands::{Invalid, Source};
use report::{Format, Outcome};

#[derive(Debug, Parser)]
#[command(name = "mirrorforge", version, about = "Toric mirrors, A-infinity categories and matrix factorizations, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "markdown", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON input file.
    path: Option<PathBuf>,
    /// Use a built-in input instead (see `examples`).
    #[arg(long, conflicts_with = "path")]
    builtin: Option<String>,
}

impl Input {
    fn source(&self) -> Result<Source, Invalid> {
        match (&self.path, &self.builtin) {
            (Some(p), None) => Ok(Source::File(p.clone())),
            (None, Some(b)) => Ok(Source::Builtin(b.clone())),
            _ => Err(Invalid("give an input file or --builtin NAME".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a polytope and print its potential.
    Potential(Input),
    /// Jacobian ring, critical points and the divisor-level comparison.
    MirrorCheck {
        #[command(flatten)]
        input: Input,
        /// Value of T for the numerical critical points.
        #[arg(long, default_value = "1/4")]
        t0: Rational,
    },
    /// The homotopy between the two closed-open maps on a mirror setup.
    Theorem {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        /// Highest arity for the functor equation.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// A-infinity checks and HH^0, HH^1 of a category with scalar coefficients.
    Hochschild {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        lmax: usize,
        /// Highest arity for the A-infinity relations.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Check Q^2 = W Id for one factorization or a list.
    Mf { path: PathBuf },
    /// Checks of the length-zero cochains gamma(r) and their cap action.
    Gamma {
        #[command(flatten)]
        input: Input,
        /// Truncation order of the local ring.
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        /// Longest cochain searched for a primitive.
        #[arg(long, default_value_t = 1)]
        lmax: usize,
    },
    /// List the built-in inputs, or write them as JSON files with --out DIR.
    Examples,
}

fn run(cli: &Cli) -> Result<report::Report, Invalid> {
    match &cli.command {
        Command::Potential(input) => commands::potential(&input.source()?),
        Command::MirrorCheck { input, t0 } => commands::mirror_check(&input.source()?, t0),
        Command::Theorem { input, rmax, kmax } => commands::theorem(&input.source()?, *rmax, *kmax),
        Command::Hochschild { input, lmax, kmax } => commands::hochschild(&input.source()?, *lmax, *kmax),
        Command::Mf { path } => commands::mf(path),
        Command::Gamma { input, dmax, lmax } => commands::gamma(&input.source()?, *dmax, *lmax),
        Command::Examples => unreachable!("handled in main"),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Invalid> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Examples = cli.command {
        for line in examples::listing() {
            println!("{line}");
        }
        if let Some(dir) = &cli.out {
            match examples::write_all(dir) {
                Ok(files) => files.iter().for_each(|f| println!("wrote {}", dir.join(f).display())),
                Err(e) => {
                    eprintln!("error: {}: {e}", dir.display());
                    return ExitCode::from(Outcome::Invalid as u8);
                }
            }
        }
        return ExitCode::SUCCESS;
    }
    let outcome = match run(&cli).and_then(|r| emit(&r.render(cli.format), cli.out.as_ref()).map(|_| r.outcome())) {
        Ok(o) => o,
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            Outcome::Invalid
        }
    };
    ExitCode::from(outcome as u8)
}
