//! `wreath-descent`: command-line front end to the `wreath_descent` library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 refused by the size guard.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wreath_descent::verify::Target;
use wreath_descent::{Error, SizeGuard, SweepMode};

const DEFAULT_LIMIT: u128 = 5_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "wreath-descent",
    version,
    about = "Ordered G-partitions, wreath products and their descent algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunArgs,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Group: cyclic:<m>, symmetric:<m>, klein4 or file:<path> (Cayley-table JSON).
    #[arg(long, global = true, default_value = "cyclic:1")]
    group: String,

    /// Size of the ground set [n].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,

    /// Pairs drawn in sampled mode.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Refuse work whose estimated item count exceeds this; 0 disables the guard.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    limit: u128,

    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Format of standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// G-compositions of n.
    Compositions,
    /// Ordered G-partitions of [n].
    Partitions,
    /// Elements of G≀Sₙ.
    Wreath,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the group's order, labels and Cayley table.
    Group,
    /// List every object of a family in canonical order.
    Enumerate {
        #[arg(value_enum)]
        family: Family,
    },
    /// Multiply two operands of the same kind.
    ///
    /// Kinds: partitions `({1,3}:g|{2}:h)`, wreath elements `[(2:g)(1:h)]`,
    /// combinations `2*sigma(2:g|1:h) - sigma(3:e)` or `X(1:g|2:h)`.
    Multiply {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Export the structure constants of the invariant subalgebra.
    StructureConstants,
    /// Run a verification suite.
    Verify {
        /// identities, prop1, mobius, theorem1, left-ideal or counts.
        target: String,
    },
}

/// Resolved configuration of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group_spec: String,
    pub n: Option<usize>,
    pub mode: SweepMode,
    pub seed: u64,
    pub guard: SizeGuard,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    fn from_args(args: RunArgs) -> Self {
        let mode = match args.mode {
            Mode::Exhaustive => SweepMode::Exhaustive,
            Mode::Sampled => SweepMode::Sampled {
                samples: args.samples as usize,
                seed: args.seed,
            },
        };
        RunConfig {
            group_spec: args.group,
            n: args.n.map(|n| n as usize),
            mode,
            seed: args.seed,
            guard: if args.limit == 0 {
                SizeGuard::unlimited()
            } else {
                SizeGuard::new(args.limit)
            },
            out: args.out,
            format: args.format,
        }
    }

    pub fn require_n(&self) -> Result<usize, Error> {
        self.n.ok_or_else(|| Error::Invalid("this command needs --n".into()))
    }
}

/// What a successful command reports back.
pub enum Status {
    Ok,
    VerificationFailed,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SizeGuard { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig::from_args(cli.run);
    let result = match cli.command {
        Command::Group => commands::group(&config),
        Command::Enumerate { family } => commands::enumerate(&config, family),
        Command::Multiply { lhs, rhs } => commands::multiply(&config, &lhs, &rhs),
        Command::StructureConstants => commands::structure_constants(&config),
        Command::Verify { target } => target.parse::<Target>().and_then(|t| commands::verify(&config, t)),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
