//! `ncpoisson`: command-line access to the library.
//!
//! Exit status 0 on success, 1 when a computed check fails, 2 on bad input.

mod commands;
mod parse;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Fixed default for every randomized computation.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A mathematical check failed or a structure does not exist.
    Math(String),
}

/// What a subcommand prints, in both formats.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when the command verified something and it failed.
    pub ok: bool,
}

#[derive(Parser)]
#[command(name = "ncpoisson", version, about = "Double Poisson structures on semi-simple algebras")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized computations.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct TensorArgs {
    /// Monomial `A*B` or `A*B=value`, e.g. `y2,1:1,1*y1,2:1,1=2`. Repeatable.
    #[arg(long = "term")]
    pub terms: Vec<String>,
    /// Pair coefficient `i,j:value` of `y^{ij} y^{ji}` over C^n. Repeatable.
    #[arg(long = "c")]
    pub pairs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// The double derivation quiver of S.
    Quiver {
        #[arg(long)]
        dims: String,
    },
    /// The quiver of double derivations relative to a subalgebra.
    RelativeQuiver {
        #[arg(long)]
        dims: String,
        /// Block sizes of the subalgebra.
        #[arg(long)]
        sub_dims: String,
        /// Copies of each block per component: rows `;`-separated.
        #[arg(long)]
        multiplicities: String,
    },
    /// Double Schouten bracket of two generators.
    Bracket {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Bracket of two necklace sums.
    NecklaceBracket {
        #[arg(long)]
        dims: String,
        /// Term `WORD` or `WORD=value` of the first element. Repeatable.
        #[arg(long = "a", required = true)]
        a: Vec<String>,
        /// Term of the second element. Repeatable.
        #[arg(long = "b", required = true)]
        b: Vec<String>,
    },
    /// Decide whether a degree-two tensor is Poisson.
    CheckTensor {
        #[arg(long)]
        dims: String,
        #[command(flatten)]
        tensor: TensorArgs,
        /// One free parameter per pair of vertices (commutative S only).
        #[arg(long)]
        symbolic: bool,
    },
    /// All Poisson monomials on 2-cycles.
    EnumerateTensors {
        #[arg(long)]
        dims: String,
    },
    /// Moment map of `sum c_ij y^{ij} y^{ji}` over C^n.
    MomentMap {
        #[arg(long)]
        dims: String,
        #[command(flatten)]
        tensor: TensorArgs,
    },
    /// Betti numbers of the complex `{P, -}` on necklaces.
    Cohomology {
        #[arg(long)]
        dims: String,
        #[command(flatten)]
        tensor: TensorArgs,
        /// Highest degree reported.
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Induced bracket of two trace words on C^p * C^q.
    FreeProductBracket {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Letter pairs `i,i';j,j';...` of the first word.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Coefficients `i,j:value` on C^p; default `1/(i-j)` for i < j.
        #[arg(long)]
        c: Vec<String>,
        /// Coefficients on C^q; same default.
        #[arg(long)]
        d: Vec<String>,
        /// Evaluate on a random representation of size n: `n` or `n,seed`.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Run the built-in consistency checks.
    Verify,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    use commands::*;
    match cli.command {
        Command::Quiver { dims } => quiver(&dims),
        Command::RelativeQuiver { dims, sub_dims, multiplicities } => relative_quiver(&dims, &sub_dims, &multiplicities),
        Command::Bracket { dims, a, b } => bracket(&dims, &a, &b),
        Command::NecklaceBracket { dims, a, b } => necklace_bracket(&dims, &a, &b),
        Command::CheckTensor { dims, tensor, symbolic } => check_tensor(&dims, &tensor, symbolic),
        Command::EnumerateTensors { dims } => enumerate_tensors(&dims),
        Command::MomentMap { dims, tensor } => moment_map(&dims, &tensor),
        Command::Cohomology { dims, tensor, max_degree } => cohomology(&dims, &tensor, max_degree),
        Command::FreeProductBracket { p, q, x, y, c, d, eval } => {
            let eval = eval.map(|e| parse::eval_spec(&e, cli.seed)).transpose()?;
            free_product_bracket(p, q, &x, &y, &c, &d, eval)
        }
        Command::Verify => Ok(verify::run(cli.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            let out = if json {
                serde_json::to_string_pretty(&r.json).expect("serializable") + "\n"
            } else {
                r.text
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Math(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
