//! Argument parsing and command dispatch for the `kmroots` binary.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use kmroots_core::filters::{cond1, cond2};
use kmroots_core::lattice::classify;
use kmroots_core::peterson::multiplicity;
use kmroots_core::sampler::DEFAULT_CHUNK_SIZE;
use kmroots_core::string_data::{is_dyck, littelmann_valid, parse_word, weight_of, word_to_runs};
use kmroots_core::{FilterLevel, Rank2Cartan, RootClass, SamplingPlan, Weight};
use num_bigint::BigUint;
use serde::Serialize;

use crate::parallel::{self, Listing};
use crate::report::{object_csv, table_csv, BoundJson, EstimateJson, MultJson, StatsJson, ValidateJson};
use crate::table::{build_rows, Family};

const ROOT_HELP: &str = "Root as c0,c1: the coefficients of alpha0 and alpha1. \
The matching Dyck paths end at (n, m) = (c0, c1), i.e. c0 right steps (letter 0) and c1 up steps (letter 1)";

#[derive(Debug, Parser)]
#[command(
    name = "kmroots",
    version,
    about = "Root multiplicities and Dyck-path upper bounds for rank-2 hyperbolic Kac-Moody algebras"
)]
pub struct Cli {
    /// Worker threads for enumeration and sampling (default: all cores).
    #[arg(long, global = true, env = "KMROOTS_THREADS")]
    pub threads: Option<usize>,

    /// Emit JSON (default for single results).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV (default for tables).
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class and multiplicity of a root.
    Mult(MultArgs),
    /// Exact counts of Dyck paths passing the stability conditions.
    Bound(BoundArgs),
    /// Monte Carlo estimate of a bound.
    Estimate(EstimateArgs),
    /// Check a binary word against every criterion.
    Validate(ValidateArgs),
    /// Multiplicity and bounds along a family of roots.
    Table(TableArgs),
    /// Mean number of visits to a line above the diagonal by random paths.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct MultArgs {
    /// Off-diagonal Cartan entry magnitude (at least 3).
    #[arg(long = "r", value_parser = parse_cartan)]
    pub cartan: Rank2Cartan,
    #[arg(long, value_parser = parse_root, help = ROOT_HELP)]
    pub root: Weight,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Off-diagonal Cartan entry magnitude (at least 3).
    #[arg(long = "r", value_parser = parse_cartan)]
    pub cartan: Rank2Cartan,
    #[arg(long, value_parser = parse_root, help = ROOT_HELP)]
    pub root: Weight,
    /// 1: consecutive-ratio condition; 2: both conditions.
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: FilterLevel,
    /// Also output the passing paths as binary words.
    #[arg(long)]
    pub list: bool,
    /// Refuse to list more than this many paths.
    #[arg(long, default_value_t = kmroots_core::counting::DEFAULT_LIST_LIMIT)]
    pub list_limit: usize,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Off-diagonal Cartan entry magnitude (at least 3).
    #[arg(long = "r", value_parser = parse_cartan)]
    pub cartan: Rank2Cartan,
    #[arg(long, value_parser = parse_root, help = ROOT_HELP)]
    pub root: Weight,
    /// 1: consecutive-ratio condition; 2: both conditions.
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: FilterLevel,
    /// Number of sampled paths, e.g. 10000000 or 1e7.
    #[arg(long, value_parser = parse_samples)]
    pub samples: u64,
    /// RNG seed, decimal or 0x-prefixed hex.
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    pub seed: u64,
    /// Samples per independently seeded chunk; part of the reproducibility key.
    #[arg(long, value_parser = parse_chunk, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk: u64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Off-diagonal Cartan entry magnitude (at least 3).
    #[arg(long = "r", value_parser = parse_cartan)]
    pub cartan: Rank2Cartan,
    /// Binary word, e.g. 1101000.
    #[arg(long)]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Off-diagonal Cartan entry magnitude (at least 3).
    #[arg(long = "r", value_parser = parse_cartan)]
    pub cartan: Rank2Cartan,
    /// staircase (n+1, n), antistaircase (n, n+1), or custom (with --root).
    #[arg(long, default_value = "staircase")]
    pub family: String,
    /// Last n for staircase and antistaircase.
    #[arg(long, default_value_t = 6)]
    pub max_n: u64,
    /// Roots for the custom family, repeatable; rows are numbered from 1.
    #[arg(long, value_parser = parse_root)]
    pub root: Vec<Weight>,
    /// Skip bound enumeration for roots with more Dyck paths than this.
    #[arg(long)]
    pub skip_bounds_above: Option<BigUint>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Paths run to (k + 1, k).
    #[arg(long)]
    pub k: u64,
    /// Count points (x, y) with y - x equal to this.
    #[arg(long, default_value_t = 1)]
    pub distance: u64,
    /// Number of sampled paths, e.g. 100000 or 1e5.
    #[arg(long, value_parser = parse_samples)]
    pub samples: u64,
    /// RNG seed, decimal or 0x-prefixed hex.
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    pub seed: u64,
    /// Samples per independently seeded chunk.
    #[arg(long, value_parser = parse_chunk, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk: u64,
}

fn parse_cartan(s: &str) -> Result<Rank2Cartan, String> {
    let r: u64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    Rank2Cartan::new(r).map_err(|e| e.to_string())
}

pub fn parse_root(s: &str) -> Result<Weight, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected c0,c1 but got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("c0: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("c1: {e}"))?;
    Ok(Weight::new(a, b))
}

fn parse_theorem(s: &str) -> Result<FilterLevel, String> {
    match s.parse() {
        Ok(FilterLevel::Dyck) | Err(()) => Err(format!("expected 1 or 2, got {s:?}")),
        Ok(level) => Ok(level),
    }
}

/// Decimal or `0x` hex.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// A positive count written as digits (underscores allowed) or as
/// `<digits>e<exponent>`.
pub fn parse_samples(s: &str) -> Result<u64, String> {
    let clean: String = s.trim().chars().filter(|&c| c != '_').collect();
    let value = match clean.split_once(['e', 'E']) {
        Some((mantissa, exp)) => {
            let mantissa: u64 = mantissa
                .parse()
                .map_err(|e| format!("invalid sample count {s:?}: {e}"))?;
            let exp: u32 = exp.parse().map_err(|e| format!("invalid sample count {s:?}: {e}"))?;
            10u64
                .checked_pow(exp)
                .and_then(|p| p.checked_mul(mantissa))
                .ok_or_else(|| format!("sample count {s:?} does not fit in 64 bits"))?
        }
        None => clean.parse().map_err(|e| format!("invalid sample count {s:?}: {e}"))?,
    };
    if value == 0 {
        return Err("need at least one sample".into());
    }
    Ok(value)
}

fn parse_chunk(s: &str) -> Result<u64, String> {
    match s.trim().parse::<u64>() {
        Ok(0) => Err("chunk size must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(format!("invalid chunk size {s:?}: {e}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl Cli {
    fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            default
        }
    }
}

fn render<T: Serialize>(value: &T, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => object_csv(&serde_json::to_value(value)?),
    })
}

/// Runs the command on the configured thread pool and returns the
/// payload for standard output.
pub fn run(cli: &Cli) -> anyhow::Result<String> {
    match cli.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("building thread pool")?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<String> {
    match &cli.command {
        Command::Mult(a) => cmd_mult(cli, a),
        Command::Bound(a) => cmd_bound(cli, a),
        Command::Estimate(a) => cmd_estimate(cli, a),
        Command::Validate(a) => cmd_validate(cli, a),
        Command::Table(a) => cmd_table(cli, a),
        Command::Stats(a) => cmd_stats(cli, a),
    }
}

fn cmd_mult(cli: &Cli, a: &MultArgs) -> anyhow::Result<String> {
    let class = classify(&a.root, &a.cartan)?;
    let mult = multiplicity(&a.root, &a.cartan)?;
    render(
        &MultJson::new(&a.root, a.cartan.r(), class, &mult),
        cli.format(Format::Json),
    )
}

fn warn_unless_imaginary(root: &Weight, cartan: &Rank2Cartan) -> anyhow::Result<RootClass> {
    let class = classify(root, cartan)?;
    if class != RootClass::ImaginaryRoot {
        eprintln!("warning: {root} is {class}, not an imaginary root; the count is not a multiplicity bound");
    }
    Ok(class)
}

fn cmd_bound(cli: &Cli, a: &BoundArgs) -> anyhow::Result<String> {
    let class = warn_unless_imaginary(&a.root, &a.cartan)?;
    let listing = a.list.then_some(Listing {
        filter: a.theorem,
        limit: a.list_limit,
    });
    let report = parallel::bound_report(&a.root, &a.cartan, listing)?;
    eprintln!("enumerated in {:.3}s", report.elapsed.as_secs_f64());
    let json = BoundJson::new(&report, a.theorem, class);
    match (cli.format(Format::Json), &json.paths) {
        (Format::Csv, Some(paths)) => {
            let mut out = String::from("word\n");
            for p in paths {
                out.push_str(p);
                out.push('\n');
            }
            Ok(out)
        }
        (format, _) => render(&json, format),
    }
}

fn cmd_estimate(cli: &Cli, a: &EstimateArgs) -> anyhow::Result<String> {
    warn_unless_imaginary(&a.root, &a.cartan)?;
    let report = parallel::estimate(
        &a.root,
        &a.cartan,
        a.theorem,
        a.samples,
        a.seed,
        SamplingPlan::new(a.chunk),
    )?;
    render(&EstimateJson::from(&report), cli.format(Format::Json))
}

fn cmd_validate(cli: &Cli, a: &ValidateArgs) -> anyhow::Result<String> {
    let word = parse_word(a.word.trim())?;
    let data = word_to_runs(&word);
    let (c0, c1) = weight_of(&data).small()?;
    let out = ValidateJson {
        word: a.word.trim().to_owned(),
        r: a.cartan.r(),
        runs: data.runs().to_vec(),
        weight: [c0, c1],
        littelmann_valid: littelmann_valid(&data, &a.cartan),
        is_dyck: is_dyck(&data),
        cond1: cond1(&data, &a.cartan),
        cond2: cond2(&data, &a.cartan).ok(),
    };
    render(&out, cli.format(Format::Json))
}

fn cmd_table(cli: &Cli, a: &TableArgs) -> anyhow::Result<String> {
    let roots = if a.family == "custom" {
        if a.root.is_empty() {
            bail!("the custom family needs at least one --root");
        }
        a.root
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (i as u64 + 1, w))
            .collect()
    } else {
        if !a.root.is_empty() {
            bail!("--root is only used with --family custom");
        }
        let family: Family = a.family.parse().map_err(anyhow::Error::msg)?;
        family.roots(a.max_n)
    };
    for (_, w) in &roots {
        warn_unless_imaginary(w, &a.cartan)?;
    }
    let rows = build_rows(&roots, &a.cartan, a.skip_bounds_above.as_ref())?;
    match cli.format(Format::Csv) {
        Format::Csv => Ok(table_csv(&rows)),
        Format::Json => render(&rows, Format::Json),
    }
}

fn cmd_stats(cli: &Cli, a: &StatsArgs) -> anyhow::Result<String> {
    let stats = parallel::visits(a.k, a.distance, a.samples, a.seed, SamplingPlan::new(a.chunk))?;
    render(&StatsJson::from(&stats), cli.format(Format::Json))
}
