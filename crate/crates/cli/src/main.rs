use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use su2n::algebra::{parse_ring, parse_rational, Rational};
use su2n::constants::dump_table;
use su2n::decomposition::decompose;
use su2n::group::root_element;
use su2n::verify::{self, RunConfig};
use su2n::{Coord, Error, GroupElement, Matrix, Root, SteinbergWord};

#[derive(Parser)]
#[command(name = "su2n", version, about = "Root subgroups, Steinberg words and decompositions in SU(2n)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Rank n (the group acts on L^2n)
    #[arg(long, global = true, default_value_t = verify::DEFAULT_N)]
    n: usize,
    /// Discriminant of L = Q(sqrt d); must not be a square
    #[arg(long, global = true, default_value = "5", value_parser = parse_d, allow_hyphen_values = true)]
    d: Rational,
    /// Coefficient ring: Q, Q[t]/(t^m), products joined by x, or prod(m1,...)
    #[arg(long, global = true, default_value = verify::DEFAULT_RING)]
    ring: String,
    #[arg(long, global = true, env = "SU_SEED", default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, default_value_t = verify::DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run all verification suites
    Verify,
    /// Print the closed-form commutator coefficient table
    DumpConstants,
    /// Print the matrix X_root(coord)
    DumpGenerator {
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Element of R for long roots, `re;im` for short roots
        #[arg(long, allow_hyphen_values = true)]
        coord: String,
    },
    /// Write a group element as a product of root elements
    Decompose {
        #[arg(long)]
        matrix_file: PathBuf,
    },
    /// Evaluate a word to its matrix (reads stdin without --word-file)
    EvalWord {
        #[arg(long)]
        word_file: Option<PathBuf>,
    },
}

fn parse_d(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(Error),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RankTooSmall(_) | Error::SquareDiscriminant(_) | Error::InvalidAlgebra(_) => Failure::Usage(e),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Runtime(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let c = &cli.common;
    let config = RunConfig::new(c.n, c.d.clone(), &c.ring, c.seed, c.trials)?;
    match &cli.command {
        Command::Verify => {
            let report = verify::run(&config);
            Ok((report.to_text(&config), report.all_passed()))
        }
        Command::DumpConstants => Ok((dump_table(config.n)?, true)),
        Command::DumpGenerator { root, coord } => {
            let root = Root::parse(root, config.n)?;
            let coord = Coord::parse(&root, &config.spec, coord)?;
            Ok((root_element(&root, &coord)?.matrix().to_text(), true))
        }
        Command::Decompose { matrix_file } => {
            let text = read_input(Some(matrix_file))?;
            let spec = parse_ring(&c.ring, c.d.clone())?;
            let m = Matrix::parse(&spec, &text)?;
            if m.dim() != 2 * config.n {
                return Err(Failure::Runtime(format!(
                    "matrix is {0}x{0}, expected {1}x{1} for n = {2}",
                    m.dim(),
                    2 * config.n,
                    config.n
                )));
            }
            let g = GroupElement::new(m)?;
            let word = decompose(&g)?;
            Ok((format!("{}\n", word.to_text()), true))
        }
        Command::EvalWord { word_file } => {
            let text = read_input(word_file.as_ref())?;
            let word = SteinbergWord::parse(&text, config.n, &config.spec)?;
            Ok((word.evaluate().matrix().to_text(), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
