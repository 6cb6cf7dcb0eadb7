use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod inputs;

#[derive(Parser, Debug)]
#[command(name = "psicalc", version, about = "Exact ψ-deformed umbral operator calculus on truncated polynomial spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Degree cap N of the truncated polynomial space.
    #[arg(long, global = true, default_value_t = 16)]
    pub cap: usize,
    /// ψ-sequence preset: classical, ones, dxd, q-jackson, custom-R, custom.
    #[arg(long, global = true, default_value = "classical")]
    pub psi: String,
    /// Deformation parameter q as "n/d" (q-jackson, custom-R, d_q, d_R).
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Numerator coefficients of R, ascending, comma separated.
    #[arg(long, global = true)]
    pub r_numer: Option<String>,
    /// Denominator coefficients of R, ascending, comma separated.
    #[arg(long, global = true)]
    pub r_denom: Option<String>,
    /// Explicit nψ for n = 1..=cap, comma separated (custom preset).
    #[arg(long, global = true)]
    pub n_psi: Option<String>,
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basic sequence of a delta operator by all four routes.
    BasicSeq {
        /// Delta as JSON series coefficients or a name (d_psi, d_psi+d_psi^2, forward-difference).
        #[arg(long, default_value = "d_psi")]
        delta: String,
        #[arg(short = 'M', default_value_t = 6)]
        m: usize,
    },
    /// Run the verification battery (all suites when none are named).
    Verify {
        suites: Vec<String>,
        /// Random trials per randomized check.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// List the suite manifest and exit.
        #[arg(long)]
        list: bool,
    },
    /// Expand T = Σ q_k(x) Q^k / kψ! and reconstruct it.
    Expand {
        /// Operator as a JSON column matrix or a name: identity, x_hat, x_hat_psi,
        /// d_psi, D, number, n_hat_psi, dilation, d_0, d_q, d_R, dxd, random, ...
        #[arg(long = "op", short = 'T')]
        op: String,
        #[arg(long, default_value = "d_psi")]
        delta: String,
        #[arg(short = 'M', default_value_t = 6)]
        m: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::XHat)]
        mode: ModeArg,
        /// λ-order of the indicator series (at most M; defaults to M).
        #[arg(long)]
        lambda_order: Option<usize>,
    },
    /// Decide whether a degree-lowering operator is a series in some ∂ψ.
    Classify {
        /// Operator as a JSON column matrix, a b-table (with --b-table), or a name:
        /// dxd, remark-counterexample, d_q, d_psi, D, forward-difference, ...
        #[arg(long = "op")]
        op: String,
        /// Read --op as rows b_{n,k} = [x^{n-k}] Q x^n.
        #[arg(long)]
        b_table: bool,
    },
    /// Generalized translation E^y(∂ψ) applied to a polynomial or basic sequence term.
    Translate {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Polynomial as a JSON coefficient array.
        #[arg(long)]
        poly: Option<String>,
        /// Monomial degree, or index into the basic sequence of --delta.
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<String>,
    },
    /// ψ-Poisson components p_m, normalizer N and their checks.
    Poisson {
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(short = 'M', default_value_t = 5)]
        m: usize,
        /// Truncation order S of the λ-series (defaults to cap − M).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Right inverse of ∂ψ, ∂q or ∂R.
    Integrate {
        #[arg(long, value_enum, default_value_t = IntegralKind::Psi)]
        kind: IntegralKind,
        #[arg(long)]
        poly: Option<String>,
        #[arg(short = 'n')]
        n: Option<usize>,
    },
    /// Tables of the ψ-sequence: nψ, nψ!, ψ-binomials, special series.
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Psi)]
        kind: TableKind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    #[value(name = "x_hat")]
    XHat,
    #[value(name = "x_hat_Q")]
    XHatQ,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralKind {
    Psi,
    Q,
    R,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Psi,
    Binomial,
    Series,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    match commands::run(&cli) {
        Ok(outcome) => {
            let body = if json {
                serde_json::to_string(&outcome.json).expect("serializable") + "\n"
            } else {
                outcome.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
