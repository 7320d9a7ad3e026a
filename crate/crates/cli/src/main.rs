use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperdiag_cli::{cmd_analyze, cmd_audit, cmd_bounds, cmd_symmetries, Flags};

#[derive(Parser)]
#[command(name = "hyperdiag", version, about = "Diagonal automorphisms of smooth hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Largest symmetry group enumerated per support during an audit.
    #[arg(long, global = true)]
    cap: Option<u128>,
    /// Largest Macaulay block (rows × columns) ranked by the smoothness check.
    #[arg(long, global = true)]
    macaulay_cap: Option<u64>,
    /// Do not certify smoothness; verdicts become conditional.
    #[arg(long, global = true)]
    skip_smoothness: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a polynomial and a diagonal automorphism.
    Analyze {
        /// e.g. "X0^5 + X1^5 + X2^5 + X3^5"
        polynomial: String,
        /// e.g. "diag(z5, 1, 1, 1)" or "z12^4, z12^4, z12, 1, 1"
        automorphism: String,
    },
    /// Diagonal symmetry group of a monomial support or polynomial.
    Symmetries { support: String },
    /// Integer lists bounding automorphism orders for degree d in P^(n+1).
    Bounds { n: u64, d: u64 },
    /// Exhaustive audit of a claim over delta supports.
    Audit { n: u64, d: u64, claim: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags =
        Flags { json: cli.json, cap: cli.cap, macaulay_cap: cli.macaulay_cap, skip_smoothness: cli.skip_smoothness };
    let out = match &cli.command {
        Command::Analyze { polynomial, automorphism } => cmd_analyze(polynomial, automorphism, &flags),
        Command::Symmetries { support } => cmd_symmetries(support, &flags),
        Command::Bounds { n, d } => cmd_bounds(*n, *d, &flags),
        Command::Audit { n, d, claim } => cmd_audit(*n, *d, claim, &flags),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
