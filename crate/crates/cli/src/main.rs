//! Command-line front end: polynomial printers, brute-force enumeration
//! checks, the three-way series verification, profile decomposition and
//! per-case coefficient tables, with text or JSON output.
//!
//! Exit codes are part of the interface:
//!
//! - 0: success (and, where applicable, agreement)
//! - 1: a verification or agreement check failed
//! - 2: usage error or malformed input
//! - 3: an enumeration limit was exceeded
//! - 4: profile invariant violation

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use biegf::algebra::WeightPoly;
use biegf::hermite::{hermite_pair_poly, hermite_poly};
use biegf::mehler::verify;
use biegf::profiles::{
    case_series, decompose, enumerate_full, enumerate_marital, partial_matchings, CaseTag,
    Component, LimitExceeded, Profile, ProfileError, DEFAULT_FULL_LIMIT, DEFAULT_MARITAL_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "biegf",
    version,
    about = "Exact bivariate EGF calculus and Mehler identity checker"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matching enumerator H_{m,n}(x)
    Hermite { m: u32, n: u32 },

    /// Enumerate matchings (or matching pairs with --full) by brute force
    /// and compare against the closed formula
    Enumerate {
        m: u32,
        n: u32,
        /// Enumerate marriage/affair pairs instead of single matchings
        #[arg(long)]
        full: bool,
        /// Override the enumeration limit
        #[arg(long)]
        limit: Option<u32>,
    },

    /// Build the three series forms and compare every coefficient
    Verify {
        #[arg(long, required = true)]
        max_m: usize,
        #[arg(long, required = true)]
        max_n: usize,
    },

    /// Decompose a profile (from --file, stdin, or --random) into its
    /// connected components
    Decompose {
        /// Read the profile as JSON from this file (default: stdin)
        #[arg(long, conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Generate a random profile instead of reading one
        #[arg(long, requires_all = ["seed", "max_m", "max_n"])]
        random: bool,
        /// RNG seed for --random
        #[arg(long)]
        seed: Option<u64>,
        /// Number of men for --random
        #[arg(long)]
        max_m: Option<u32>,
        /// Number of women for --random
        #[arg(long)]
        max_n: Option<u32>,
        /// Override the size limit for --random
        #[arg(long)]
        limit: Option<u32>,
    },

    /// Print the nonzero labelled coefficients of one component case
    CaseSeries {
        /// One of I, Ia, II, IIa, III, IIIa, IV
        tag: String,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(#[from] LimitExceeded),
    #[error("{0}")]
    Profile(#[from] ProfileError),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Limit(_) => ExitCode::from(3),
            CliError::Profile(_) => ExitCode::from(4),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Hermite { m, n } => cmd_hermite(m, n, cli.format),
        Command::Enumerate { m, n, full, limit } => cmd_enumerate(m, n, full, limit, cli.format),
        Command::Verify { max_m, max_n } => cmd_verify(max_m, max_n, cli.format),
        Command::Decompose {
            file,
            random,
            seed,
            max_m,
            max_n,
            limit,
        } => {
            let profile = if random {
                random_profile(
                    seed.expect("clap enforces --seed"),
                    max_m.expect("clap enforces --max-m"),
                    max_n.expect("clap enforces --max-n"),
                    limit.unwrap_or(DEFAULT_MARITAL_LIMIT),
                )?
            } else {
                read_profile(file.as_deref())?
            };
            cmd_decompose(&profile, cli.format)
        }
        Command::CaseSeries { tag, max_m, max_n } => {
            cmd_case_series(&tag, max_m, max_n, cli.format)
        }
    }
}

fn cmd_hermite(m: u32, n: u32, format: Format) -> Result<ExitCode, CliError> {
    let poly = hermite_poly(m as usize, n as usize);
    match format {
        Format::Text => println!("{poly}"),
        Format::Json => print_json(&serde_json::json!({
            "m": m,
            "n": n,
            "poly": poly,
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    m: u32,
    n: u32,
    full: bool,
    limit: Option<u32>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let (enumerated, formula) = if full {
        (
            enumerate_full(m, n, limit.unwrap_or(DEFAULT_FULL_LIMIT))?,
            hermite_pair_poly(m as usize, n as usize),
        )
    } else {
        (
            enumerate_marital(m, n, limit.unwrap_or(DEFAULT_MARITAL_LIMIT))?,
            hermite_poly(m as usize, n as usize),
        )
    };
    let agrees = enumerated == formula;
    match format {
        Format::Text => {
            if agrees {
                println!("{enumerated} — AGREES with formula");
            } else {
                println!("{enumerated} — DISAGREES with formula {formula}");
            }
        }
        Format::Json => print_json(&serde_json::json!({
            "m": m,
            "n": n,
            "full": full,
            "enumerated": enumerated,
            "formula": formula,
            "agrees": agrees,
        })),
    }
    Ok(if agrees {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(max_m: usize, max_n: usize, format: Format) -> Result<ExitCode, CliError> {
    let report = verify(max_m, max_n);
    match format {
        Format::Text => {
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!("{verdict} ({} cells, 3 forms)", report.cells());
            for mismatch in &report.mismatches {
                println!(
                    "  mismatch at ({}, {}) [{}]: expected {}, got {}",
                    mismatch.m, mismatch.n, mismatch.forms, mismatch.expected, mismatch.actual
                );
            }
        }
        Format::Json => print_json(&report),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Mirror of the profile JSON schema, deserialized before validation so
/// that malformed JSON (exit 2) and invariant violations (exit 4) stay
/// distinguishable.
#[derive(Debug, Deserialize)]
struct ProfileInput {
    m: u32,
    n: u32,
    marriages: Vec<(u32, u32)>,
    affairs: Vec<(u32, u32)>,
}

fn read_profile(file: Option<&std::path::Path>) -> Result<Profile, CliError> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))?,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|err| CliError::Input(format!("cannot read stdin: {err}")))?;
            buffer
        }
    };
    let input: ProfileInput = serde_json::from_str(&text)
        .map_err(|err| CliError::Input(format!("malformed profile JSON: {err}")))?;
    Ok(Profile::new(
        input.m,
        input.n,
        input.marriages,
        input.affairs,
    )?)
}

/// Draw the marriage and affair matchings independently and uniformly
/// over all partial matchings on (m, n).
fn random_profile(seed: u64, m: u32, n: u32, limit: u32) -> Result<Profile, CliError> {
    if m > limit || n > limit {
        return Err(CliError::Limit(LimitExceeded { m, n, limit }));
    }
    let matchings = partial_matchings(m, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let marriages = matchings[rng.random_range(0..matchings.len())].clone();
    let affairs = matchings[rng.random_range(0..matchings.len())].clone();
    Ok(Profile::new(m, n, marriages, affairs)?)
}

#[derive(Debug, Serialize)]
struct ComponentReport {
    case: String,
    k: usize,
    men: Vec<u32>,
    women: Vec<u32>,
    weight: WeightPoly,
}

fn cmd_decompose(profile: &Profile, format: Format) -> Result<ExitCode, CliError> {
    let components = decompose(profile);
    let profile_weight = profile.weight();
    let product = components
        .iter()
        .fold(WeightPoly::one(), |acc, c| &acc * &c.weight());
    let check_ok = product == profile_weight;

    match format {
        Format::Text => {
            for c in &components {
                println!("{}", render_component(c));
            }
            println!(
                "weight check: product {product} = profile {profile_weight} — {}",
                if check_ok { "OK" } else { "MISMATCH" }
            );
        }
        Format::Json => {
            let reports: Vec<ComponentReport> = components
                .iter()
                .map(|c| ComponentReport {
                    case: c.tag.to_string(),
                    k: c.k,
                    men: c.men.clone(),
                    women: c.women.clone(),
                    weight: c.weight(),
                })
                .collect();
            print_json(&serde_json::json!({
                "m": profile.men(),
                "n": profile.women(),
                "marriages": profile.marriages(),
                "affairs": profile.affairs(),
                "profile_weight": profile_weight,
                "components": reports,
                "weight_check": if check_ok { "ok" } else { "mismatch" },
            }));
        }
    }
    Ok(if check_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_component(c: &Component) -> String {
    match c.tag {
        CaseTag::I => format!("Case I (man {}), weight 1", c.men[0]),
        CaseTag::Ia => format!("Case Ia (woman {}), weight 1", c.women[0]),
        _ => format!(
            "Case {}, k={}, weight {}, men {:?}, women {:?}",
            c.tag,
            c.k,
            c.weight(),
            c.men,
            c.women
        ),
    }
}

fn cmd_case_series(
    tag: &str,
    max_m: usize,
    max_n: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    let tag: CaseTag = tag
        .parse()
        .map_err(|err: biegf::profiles::UnknownCaseTag| CliError::Input(err.to_string()))?;
    let series = case_series(tag, max_m, max_n);
    let rows: Vec<(usize, usize, &WeightPoly)> = (0..=max_m)
        .flat_map(|m| (0..=max_n).map(move |n| (m, n)))
        .filter_map(|(m, n)| {
            let poly = series.coeff(m, n);
            (!poly.is_zero()).then_some((m, n, poly))
        })
        .collect();
    match format {
        Format::Text => {
            for (m, n, poly) in &rows {
                println!("({m}, {n}): {poly}");
            }
        }
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(m, n, poly)| serde_json::json!({ "m": m, "n": n, "poly": poly }))
                .collect();
            print_json(&serde_json::json!({
                "tag": tag.to_string(),
                "max_m": max_m,
                "max_n": max_n,
                "rows": json_rows,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report types serialize")
    );
}
