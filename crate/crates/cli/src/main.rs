//! `deephole`: command-line frontend for the deep-hole workbench.
//!
//! Every subcommand prints one JSON envelope
//! `{"command", "params", "result", "timing_ms", "version"}` with sorted keys,
//! or CSV rows with `--format csv`.
//!
//! Exit codes: 0 success, witness found or conditions met; 1 proven negative;
//! 2 invalid parameters; 3 budget exceeded or size guard tripped.

mod commands;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "deephole",
    version,
    about = "Deep holes of standard Reed-Solomon codes",
    after_help = "Polynomial input:\n  \
        --f for hf-eval, search and the scans lists the low coefficients f_0,...,f_{d-1}\n  \
        of T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k; deephole takes the full polynomial\n  \
        low degree first.\n\n\
        Examples:\n  \
        deephole hd --d 3 --p 7\n  \
        deephole search --q 13 --k 4 --f 3,1\n  \
        deephole deephole --q 7 --k 2 --f 0,0,1      # T^2\n  \
        deephole thresholds --q 401 --k 19 --d 3 --epsilon 1/2"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Single-threaded canonical-order search and `timing_ms = 0`, so output
    /// is byte-identical across runs.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads; defaults to `DEEPHOLE_THREADS` or the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_u64)]
    pub seed: u64,
    /// Number of randomized trials.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Field selection: `--q` alone, or `--p` with optional `--s`.
#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Field size q = p^s.
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree (default 1 when only --p is given).
    #[arg(long)]
    pub s: Option<u32>,
    /// Monic irreducible modulus, low degree first, e.g. `2,4,1`.
    #[arg(long)]
    pub modulus: Option<String>,
}

/// A top polynomial `T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k`.
#[derive(Args, Debug, Clone)]
pub struct TopArgs {
    #[arg(long)]
    pub k: usize,
    /// Low coefficients `f_0,...,f_{d-1}` as canonical reps; omit for the monomial.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Degree excess d; implied by the length of --f.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a finite field.
    Field(FieldArgs),
    /// H_d in the elementary-symmetric basis: `{"(i_1,...,i_d)": coeff}`.
    Hd {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = HdMethod::Recursive)]
        method: HdMethod,
    },
    /// H_f and its gradient at a point.
    HfEval {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        top: TopArgs,
        /// Point with k+1 coordinates.
        #[arg(long)]
        x: String,
    },
    /// Search for a zero of H_f with nonzero pairwise-distinct coordinates.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        top: TopArgs,
        /// Maximum number of H_f evaluations.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Brute-force deep-hole verdict for a full polynomial.
    ///
    /// `--f` lists every coefficient low degree first, so `--f 0,0,1` is T^2.
    Deephole {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Exact symbolic Jacobian identities plus seeded evaluation cross-checks.
    VerifyIdentities {
        #[command(flatten)]
        field: FieldArgs,
        /// Largest number of variables checked symbolically (2..=6).
        #[arg(long, default_value_t = 4)]
        max_kplus1: usize,
    },
    /// Exhaustive rational singular points of V_f.
    SingularScan {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        top: TopArgs,
    },
    /// Exhaustive rational singular points at infinity (affine cone).
    InfinityScan {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        top: TopArgs,
    },
    /// Artin-Schreier witness for the monomial T^{k+d}.
    ArtinSchreier {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Exact point-count bounds.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long, value_enum, default_value_t = BoundKind::All)]
        kind: BoundKind,
    },
    /// Hypotheses of the nonexistence theorems.
    Thresholds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        /// Rational epsilon a/b with 0 < epsilon < 1.
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        large_char: bool,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Compare brute-force deep-hole verdicts with witness search for every f.
    EquivalenceSweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Only the first N polynomials in enumeration order.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HdMethod {
    Recursive,
    Explicit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    All,
    Gl,
    Csm,
    Affine,
    N1,
    N2,
    Useful,
    LargeChar,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid integer {s:?}: {e}"))
}

fn configure_threads(cli: &Cli) -> Result<(), CliError> {
    let env = std::env::var("DEEPHOLE_THREADS").ok();
    let threads = if cli.deterministic {
        Some(1)
    } else if let Some(n) = cli.threads {
        Some(n)
    } else {
        match env {
            Some(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Invalid(format!("DEEPHOLE_THREADS={v:?} is not a count")))?,
            ),
            None => None,
        }
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Invalid("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(&cli) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(Outcome {
            name,
            params,
            result,
            rows,
            exit,
        }) => {
            let timing_ms = if cli.deterministic {
                0
            } else {
                start.elapsed().as_millis() as u64
            };
            let text = match cli.format {
                Format::Json => {
                    let envelope = json!({
                        "command": name,
                        "params": params,
                        "result": result,
                        "timing_ms": timing_ms,
                        "version": env!("CARGO_PKG_VERSION"),
                    });
                    Ok(render::json(&envelope))
                }
                Format::Csv => render::csv(&rows),
            };
            match text {
                Ok(t) => {
                    print!("{t}");
                    ExitCode::from(exit)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
