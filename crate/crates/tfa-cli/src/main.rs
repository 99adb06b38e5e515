//! `tfa`: command-line front end for the time-frequency analysis library.
//!
//! Every subcommand reads/writes the TFSIG1/TFSUR1 formats and prints its
//! report to stdout, as flat `key=value` text by default or as JSON with
//! `--json`. Exit codes: 0 success, 1 precondition violation (including
//! I/O and malformed manifests), 2 numerical failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use tfa_core::detector::{detect, equality_case_probe};
use tfa_core::fourier::{fourier, inverse_fourier};
use tfa_core::functionals::{
    bh_functional, bh_functional_split, cowling_price, default_radii, gelfand_shilov,
    gelfand_shilov_ambiguity, hardy_check, hba_functionals, FunctionalTrace,
};
use tfa_core::gauss::SpecJson;
use tfa_core::hermite::hermite_function;
use tfa_core::io::{read_signal, write_signal, write_surface};
use tfa_core::report::{to_json, to_text};
use tfa_core::signal::sample_spec;
use tfa_core::transforms::{ambiguity, moyal_norm, stft, wigner};
use tfa_core::uncertainty::{heisenberg_ambiguity, heisenberg_fourier};
use tfa_core::verify::run_all;
use tfa_core::{GaussHermiteSpec, Grid, HermiteIndex, Result, Signal, TfaError};

#[derive(Parser)]
#[command(name = "tfa", version, about = "Time-frequency analysis toolkit")]
struct Cli {
    /// Emit reports as JSON instead of key=value text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for surface computations (also env TFU_THREADS);
    /// output is identical for any thread count
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Half-extent of the sampling box [-L, L]^d
    #[arg(long = "L", default_value_t = 8.0)]
    l: f64,
    /// Samples per axis (even)
    #[arg(short, long, default_value_t = 256)]
    n: usize,
}

#[derive(Args)]
struct PairArgs {
    /// First input signal (TFSIG1)
    #[arg(short)]
    u: PathBuf,
    /// Second input signal (TFSIG1)
    #[arg(short)]
    v: PathBuf,
}

#[derive(Args)]
struct RadiiArgs {
    /// Truncation radii (comma-separated); default 8 geometric values
    /// from L/4 to L
    #[arg(long, value_delimiter = ',')]
    radii: Vec<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a signal from a spec string: `gauss`, `hermite:<k>`
    /// (comma-separated multi-index for d=2), or `spec:<file>` (JSON)
    Gen {
        #[arg(long)]
        spec: String,
        /// Dimension for `gauss` (1 or 2); inferred for the other specs
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(short)]
        output: PathBuf,
    },
    /// Fourier transform of a signal
    Fourier {
        #[arg(short)]
        input: PathBuf,
        #[arg(short)]
        output: PathBuf,
        /// Apply the inverse transform instead
        #[arg(long)]
        inverse: bool,
    },
    /// Ambiguity function A(u,v) as a TFSUR1 surface
    Ambiguity {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short)]
        output: PathBuf,
    },
    /// Wigner transform W(u,v) as a TFSUR1 surface
    Wigner {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short)]
        output: PathBuf,
    },
    /// Windowed Fourier transform S_v u as a TFSUR1 surface
    Stft {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short)]
        output: PathBuf,
    },
    /// Moyal identity check: ‖A(u,v)‖₂ against ‖u‖‖v‖
    Moyal {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Sharp Heisenberg inequality: Fourier form with `-f`, ambiguity
    /// form with `-u`/`-v`
    Heisenberg {
        #[arg(short, conflicts_with_all = ["u", "v"])]
        f: Option<PathBuf>,
        #[arg(short, requires = "v")]
        u: Option<PathBuf>,
        #[arg(short, requires = "u")]
        v: Option<PathBuf>,
        /// Axis of the moment pair
        #[arg(long, default_value_t = 0)]
        axis: usize,
        /// Time-side center (default: density mean)
        #[arg(long)]
        center_a: Option<f64>,
        /// Frequency-side center (default: density mean)
        #[arg(long)]
        center_b: Option<f64>,
    },
    /// Covariance analysis of |A(u,v)|² with the equality-case probe
    Covariance {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Beurling–Hörmander functional (joint and split weights)
    Bh {
        #[arg(short)]
        f: PathBuf,
        /// Weight exponent N
        #[arg(long, default_value_t = 0.0)]
        n_weight: f64,
        #[command(flatten)]
        radii: RadiiArgs,
    },
    /// Cowling–Price functional pair
    CowlingPrice {
        #[arg(short)]
        f: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 2.0)]
        n_weight: f64,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[command(flatten)]
        radii: RadiiArgs,
    },
    /// Gel'fand–Shilov functional pair: Fourier form with `-f`,
    /// ambiguity form with `-u`/`-v`
    GelfandShilov {
        #[arg(short, conflicts_with_all = ["u", "v"])]
        f: Option<PathBuf>,
        #[arg(short, requires = "v")]
        u: Option<PathBuf>,
        #[arg(short, requires = "u")]
        v: Option<PathBuf>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[command(flatten)]
        radii: RadiiArgs,
    },
    /// Hardy-type envelope check against Gaussians e^{−π⟨Ax,x⟩}
    Hardy {
        #[arg(short)]
        f: PathBuf,
        /// Matrix A, row-major comma-separated (1 or 4 entries)
        #[arg(long = "mat-a", value_delimiter = ',')]
        a: Vec<f64>,
        /// Matrix B, row-major comma-separated (1 or 4 entries)
        #[arg(long = "mat-b", value_delimiter = ',')]
        b: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        n_weight: f64,
    },
    /// Ambiguity-surface functionals (joint and marginal weights)
    Hba {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.0)]
        n_weight: f64,
        #[command(flatten)]
        radii: RadiiArgs,
    },
    /// Detect polynomial-times-Gaussian form from samples alone
    Detect {
        #[arg(short)]
        f: PathBuf,
    },
    /// Run the full verification suite
    VerifyAll {
        /// Only criteria whose name contains this string (or whose id
        /// equals it)
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Serialize)]
struct MoyalReport {
    surface_norm: f64,
    product_norm: f64,
    absolute_gap: f64,
    relative_gap: f64,
}

#[derive(Serialize)]
struct BhReport {
    n_weight: f64,
    standard: FunctionalTrace,
    split: FunctionalTrace,
    verdicts_agree: bool,
}

#[derive(Serialize)]
struct CowlingPriceReport {
    a: f64,
    b: f64,
    ab: f64,
    trace_f: FunctionalTrace,
    trace_fhat: FunctionalTrace,
}

fn precondition(msg: impl Into<String>) -> TfaError {
    TfaError::Precondition(msg.into())
}

fn render<T: Serialize>(report: &T, json: bool) -> Result<String> {
    if json {
        to_json(report)
    } else {
        to_text(report)
    }
}

fn check_distinct(inputs: &[&Path], output: &Path) -> Result<()> {
    if inputs.contains(&output) {
        return Err(precondition("output path must differ from input paths"));
    }
    Ok(())
}

fn parse_gen_spec(spec: &str, dim: usize, grid: Grid) -> Result<Signal> {
    if spec == "gauss" {
        return sample_spec(&GaussHermiteSpec::gaussian(grid.dim), grid);
    }
    if let Some(ks) = spec.strip_prefix("hermite:") {
        let k: std::result::Result<Vec<u32>, _> = ks.split(',').map(str::parse).collect();
        let k = k.map_err(|_| precondition(format!("invalid hermite index {ks:?}")))?;
        if k.len() != grid.dim {
            return Err(precondition(format!(
                "hermite index has {} components but the grid is {}-dimensional",
                k.len(),
                grid.dim
            )));
        }
        return hermite_function(&HermiteIndex::new(k)?, grid);
    }
    if let Some(path) = spec.strip_prefix("spec:") {
        let text = std::fs::read_to_string(path)?;
        let j: SpecJson = serde_json::from_str(&text)
            .map_err(|e| precondition(format!("invalid spec JSON in {path}: {e}")))?;
        if j.dim != dim && dim != 1 {
            return Err(precondition("spec dimension conflicts with --dim"));
        }
        let parsed = GaussHermiteSpec::from_json(&j)?;
        let grid = Grid::new(parsed.dim, grid.half_extent, grid.points_per_axis)?;
        return sample_spec(&parsed, grid);
    }
    Err(precondition(format!(
        "unknown spec {spec:?}: expected gauss, hermite:<k>, or spec:<file>"
    )))
}

fn radii_or_default(radii: &[f64], half_extent: f64) -> Vec<f64> {
    if radii.is_empty() {
        default_radii(half_extent)
    } else {
        radii.to_vec()
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut report = String::new();
    let mut all_pass = true;
    match &cli.command {
        Command::Gen { spec, dim, grid, output } => {
            let g = Grid::new(if spec.contains(',') { 2 } else { *dim }, grid.l, grid.n)?;
            let s = parse_gen_spec(spec, *dim, g)?;
            write_signal(output, &s)?;
        }
        Command::Fourier { input, output, inverse } => {
            check_distinct(&[input], output)?;
            let s = read_signal(input)?;
            let out = if *inverse { inverse_fourier(&s) } else { fourier(&s) };
            write_signal(output, &out)?;
        }
        Command::Ambiguity { pair, output } => {
            check_distinct(&[&pair.u, &pair.v], output)?;
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            write_surface(output, &ambiguity(&u, &v)?)?;
        }
        Command::Wigner { pair, output } => {
            check_distinct(&[&pair.u, &pair.v], output)?;
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            write_surface(output, &wigner(&u, &v)?)?;
        }
        Command::Stft { pair, output } => {
            check_distinct(&[&pair.u, &pair.v], output)?;
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            write_surface(output, &stft(&u, &v)?)?;
        }
        Command::Moyal { pair } => {
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            let (surface_norm, product_norm) = moyal_norm(&u, &v)?;
            let absolute_gap = (surface_norm - product_norm).abs();
            report = render(
                &MoyalReport {
                    surface_norm,
                    product_norm,
                    absolute_gap,
                    relative_gap: absolute_gap / product_norm,
                },
                cli.json,
            )?;
        }
        Command::Heisenberg { f, u, v, axis, center_a, center_b } => {
            let r = match (f, u, v) {
                (Some(f), None, None) => {
                    heisenberg_fourier(&read_signal(f)?, *axis, *center_a, *center_b)?
                }
                (None, Some(u), Some(v)) => heisenberg_ambiguity(
                    &read_signal(u)?,
                    &read_signal(v)?,
                    *axis,
                    *center_a,
                    *center_b,
                )?,
                _ => return Err(precondition("heisenberg requires either -f or both -u and -v")),
            };
            report = render(&r, cli.json)?;
        }
        Command::Covariance { pair } => {
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            report = render(&equality_case_probe(&u, &v)?, cli.json)?;
        }
        Command::Bh { f, n_weight, radii } => {
            let s = read_signal(f)?;
            let radii = radii_or_default(&radii.radii, s.grid.half_extent);
            let standard = bh_functional(&s, *n_weight, &radii)?;
            let split = bh_functional_split(&s, *n_weight, &radii)?;
            let verdicts_agree = standard.verdict == split.verdict;
            report =
                render(&BhReport { n_weight: *n_weight, standard, split, verdicts_agree }, cli.json)?;
        }
        Command::CowlingPrice { f, a, b, n_weight, axis, radii } => {
            let s = read_signal(f)?;
            let radii = radii_or_default(&radii.radii, s.grid.half_extent);
            let (trace_f, trace_fhat) = cowling_price(&s, *a, *b, *n_weight, *axis, &radii)?;
            report = render(
                &CowlingPriceReport { a: *a, b: *b, ab: a * b, trace_f, trace_fhat },
                cli.json,
            )?;
        }
        Command::GelfandShilov { f, u, v, p, a, b, axis, radii } => {
            let r = match (f, u, v) {
                (Some(f), None, None) => {
                    let s = read_signal(f)?;
                    let radii = radii_or_default(&radii.radii, s.grid.half_extent);
                    gelfand_shilov(&s, *p, *a, *b, *axis, &radii)?
                }
                (None, Some(u), Some(v)) => {
                    let (u, v) = (read_signal(u)?, read_signal(v)?);
                    let radii = radii_or_default(&radii.radii, u.grid.half_extent);
                    gelfand_shilov_ambiguity(&u, &v, *p, *a, *b, *axis, &radii)?
                }
                _ => {
                    return Err(precondition("gelfand-shilov requires either -f or both -u and -v"))
                }
            };
            report = render(&r, cli.json)?;
        }
        Command::Hardy { f, a, b, n_weight } => {
            let s = read_signal(f)?;
            report = render(&hardy_check(&s, a, b, *n_weight)?, cli.json)?;
        }
        Command::Hba { pair, n_weight, radii } => {
            let (u, v) = (read_signal(&pair.u)?, read_signal(&pair.v)?);
            let radii = radii_or_default(&radii.radii, u.grid.half_extent);
            report = render(&hba_functionals(&u, &v, *n_weight, &radii)?, cli.json)?;
        }
        Command::Detect { f } => {
            let s = read_signal(f)?;
            report = render(&detect(&s.raw())?, cli.json)?;
        }
        Command::VerifyAll { filter } => {
            let results = run_all(filter.as_deref())?;
            if results.is_empty() {
                return Err(precondition("filter matched no criteria"));
            }
            all_pass = results.iter().all(|r| r.passed);
            if cli.json {
                report = to_json(&results)?;
            } else {
                for r in &results {
                    let status = if r.passed { "pass" } else { "FAIL" };
                    report.push_str(&format!(
                        "criterion {:2} {:<26} {status}  {}\n",
                        r.id, r.name, r.details
                    ));
                }
            }
        }
    }
    print!("{report}");
    Ok(all_pass)
}

fn exit_code(e: &TfaError) -> i32 {
    match e {
        TfaError::Numerical(_) => 2,
        _ => 1,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("tfa: error: precondition violated: {first}");
            std::process::exit(1);
        }
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var("TFU_THREADS").ok().and_then(|t| t.parse().ok()));
    if let Some(t) = threads {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("tfa: error: precondition violated: could not configure thread pool");
            std::process::exit(1);
        }
    }
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("tfa: error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
