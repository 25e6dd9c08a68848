use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact intersection-theoretic calculus on projective space.
#[derive(Parser, Debug)]
#[command(name = "chowcalc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Sign {
    /// (-1)^(N-k-j), consistent with the involution i_{N,O(X)}
    #[default]
    Derived,
    /// (-1)^(j+k), differs from `derived` by (-1)^N
    Paper,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic classes of a hypersurface described by a JSON file.
    Report(ReportArgs),
    /// Apply the involution i_{n,O(m)} to a class.
    Involve(InvolveArgs),
    /// Work with correspondences on P^N x P^N.
    #[command(subcommand)]
    Correspond(CorrespondCommand),
    /// Run the randomized identity suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t)]
    pub sign: Sign,
    /// Comma-separated subset of classes to report, in order.
    #[arg(long, value_delimiter = ',')]
    pub classes: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct InvolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub twist: i64,
    /// Ambient dimension; inferred from the literal when omitted.
    #[arg(long)]
    pub ambient: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Class as text (`3H + 1H^2`) or JSON array (`[0, 3, 1]`).
    #[arg(allow_hyphen_values = true)]
    pub class: String,
}

#[derive(Subcommand, Debug)]
pub enum CorrespondCommand {
    /// Print the correspondence inducing i_{n,O(m)} on P^N.
    Emit {
        #[arg(long)]
        ambient: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Push a class forward (or pull it back) through a correspondence.
    Apply {
        /// Correspondence: JSON file, inline JSON, or polynomial in x, y.
        #[arg(allow_hyphen_values = true)]
        correspondence: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        ambient: Option<usize>,
        #[arg(long)]
        pullback: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compose two correspondences: OUTER o INNER.
    Compose {
        #[arg(allow_hyphen_values = true)]
        outer: String,
        #[arg(allow_hyphen_values = true)]
        inner: String,
        #[arg(long)]
        ambient: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub max_dim: usize,
    /// Random cases per identity.
    #[arg(long, default_value_t = 256)]
    pub cases: u32,
    /// Implementation under test (`dual-sign-flip` is a deliberately broken mutant).
    #[arg(long, default_value = "exact")]
    pub calculus: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report(args) => commands::report(&args),
        Command::Involve(args) => commands::involve(&args),
        Command::Correspond(cmd) => commands::correspond(&cmd),
        Command::Verify(args) => commands::verify(&args),
    };
    match result {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
