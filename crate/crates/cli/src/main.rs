//! `qcrit`: characteristic polynomials and critical exponents of
//! q-polymatroids from rank-metric codes.

mod input;
mod table;
mod verbs;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcrit_core::qpm::AxiomLevel;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qcrit_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qcrit_core::Error::ResourceLimit { .. }) => 2,
            _ => 1,
        }
    }
}

/// What a verb produced.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// A check the verb ran did not hold.
    pub failed: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "qcrit",
    version,
    about = "Critical exponents of q-polymatroids from rank-metric codes"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration cap for lattices and codewords (library defaults:
    /// 10000000 lattice elements, 2^24 codewords).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Axiom validation: off, covers, sampled[:N] or exhaustive.
    #[arg(long, global = true, default_value = "sampled:1000", value_parser = parse_validation)]
    validation: AxiomLevel,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Characteristic polynomial of a code or weighted lattice.
    Charpoly {
        /// Code or wlat file, or a built-in fixture name.
        input: String,
        /// Also print the rank of every subspace.
        #[arg(long)]
        ranks: bool,
    },
    /// Critical exponent.
    Crit {
        input: String,
        /// Print the supports of a minimal set of codewords spanning the space.
        #[arg(long)]
        witness: bool,
    },
    /// Rank weight distribution, cross-checked against the weight enumerator.
    Weights { input: String },
    /// Singleton defect and MRD, QMRD, dually QMRD and 1-BMD membership.
    Classify { input: String },
    /// Dual code, as a code file.
    Dual {
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Puncture `c ↦ (cA)` with the listed coordinates deleted.
    Puncture {
        input: String,
        /// 0-based coordinates to delete, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<usize>,
        /// Invertible n×n matrix file, one row per line (default: identity).
        #[arg(long)]
        matrix: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Number of t-tuples of codewords whose supports sum to a subspace.
    Count {
        input: String,
        #[arg(long)]
        t: u32,
        /// `full`, or a file of basis rows.
        #[arg(long, default_value = "full")]
        support: String,
    },
    /// Run a verification suite.
    Verify {
        input: String,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Reproduce the built-in examples and table.
    Table {
        #[arg(value_enum, default_value_t = Section::All)]
        section: Section,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// Characteristic polynomial decomposition identities.
    Section3,
    /// Critical exponent bounds, family rules and inequalities.
    Critical,
    /// Dual polymatroid against the dual code.
    Duality,
    /// Rank function axioms.
    Axioms,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Section {
    Appendix,
    Examples,
    All,
}

fn parse_validation(s: &str) -> Result<AxiomLevel, String> {
    match s {
        "off" => Ok(AxiomLevel::Off),
        "covers" => Ok(AxiomLevel::Covers),
        "exhaustive" => Ok(AxiomLevel::Exhaustive),
        "sampled" => Ok(AxiomLevel::default()),
        _ => match s.strip_prefix("sampled:") {
            Some(n) => n
                .parse()
                .map(AxiomLevel::Sampled)
                .map_err(|_| format!("bad sample count {n:?}")),
            None => Err(format!("unknown validation level {s:?}")),
        },
    }
}

pub struct Ctx {
    pub cap: Option<u64>,
    pub validation: AxiomLevel,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let ctx = Ctx {
        cap: cli.cap,
        validation: cli.validation,
    };
    match cli.verb {
        Verb::Charpoly { input, ranks } => verbs::charpoly(&ctx, &input, ranks),
        Verb::Crit { input, witness } => verbs::crit(&ctx, &input, witness),
        Verb::Weights { input } => verbs::weights(&ctx, &input),
        Verb::Classify { input } => verbs::classify(&ctx, &input),
        Verb::Dual { input, output } => verbs::dual(&ctx, &input, output.as_deref()),
        Verb::Puncture {
            input,
            drop,
            matrix,
            output,
        } => verbs::puncture(&ctx, &input, &drop, matrix.as_deref(), output.as_deref()),
        Verb::Count { input, t, support } => verbs::count(&ctx, &input, t, &support),
        Verb::Verify { input, suite } => verbs::verify(&ctx, &input, suite),
        Verb::Table { section } => table::table(section),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json value serialises")
                );
            } else {
                print!("{}", out.text);
            }
            if out.failed {
                eprintln!("verification failed");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
