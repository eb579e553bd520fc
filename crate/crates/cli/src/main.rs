//! `binfind`: decide whether an ideal contains a binomial and compute its
//! binomial part from a problem file.

mod problem;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use binfind::artinian::{relation_finder, Completeness};
use binfind::pipeline::{
    binomial_part_laurent, brute_force_binomials, contains_binomial, contains_monomial, PipelineConfig,
};
use binfind::tropical::{ray_finder, tropical_span};
use clap::{Parser, ValueEnum};

use problem::{parse_problem, ProblemFile};
use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Binomial part of the Laurent extension.
    Bin,
    /// Whether the ideal contains a binomial, with a witness.
    Decide,
    /// Whether the ideal contains a monomial.
    Monomial,
    /// Basis of the linear span of the tropical variety.
    Tropspan,
    /// All binomials up to `--degree`, by brute force.
    Oracle,
}

#[derive(Debug, Parser)]
#[command(name = "binfind", version, about = "Find binomials in polynomial ideals over the rationals")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem file, or `-` for standard input.
    file: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Degree bound for `oracle`.
    #[arg(long)]
    degree: Option<u32>,
    /// Entry bound for exhaustive tropical ray search.
    #[arg(long)]
    fallback_bound: Option<i64>,
    /// Starting precision of relation discovery.
    #[arg(long)]
    precision_bits: Option<usize>,
    /// Largest witness degree tried when the Laurent extension is the unit ideal.
    #[arg(long)]
    witness_cap: Option<u32>,
    /// Relation finder: eigen-lll or box-search.
    #[arg(long)]
    relations: Option<String>,
    /// Tropical ray finder: projection or exhaustive.
    #[arg(long)]
    rays: Option<String>,
    #[arg(long)]
    json: bool,
    /// Leave out the wall-clock time so reports compare byte for byte.
    #[arg(long)]
    no_timing: bool,
}

/// Exit statuses.
const OK: u8 = 0;
const INPUT_ERROR: u8 = 1;
const INCOMPLETE: u8 = 2;

struct Failure(String);

fn input<T: std::fmt::Display>(e: T) -> Failure {
    Failure(e.to_string())
}

fn option<T: FromStr>(file: &ProblemFile, key: &str, flag: Option<T>) -> Result<Option<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match file.options.get(key) {
        None => Ok(None),
        Some(v) => v.parse().map(Some).map_err(|e| Failure(format!("option `{key}`: {e}"))),
    }
}

const KNOWN_OPTIONS: [&str; 8] =
    ["seed", "degree", "fallback_bound", "precision_bits", "max_bits", "witness_cap", "relations", "rays"];

fn settings(cli: &Cli, file: &ProblemFile) -> Result<(PipelineConfig, Option<u32>, BTreeMap<String, String>), Failure> {
    if let Some(k) = file.options.keys().find(|k| !KNOWN_OPTIONS.contains(&k.as_str())) {
        return Err(Failure(format!("unknown option `{k}` (known: {})", KNOWN_OPTIONS.join(", "))));
    }
    let mut cfg = PipelineConfig::default();
    if let Some(s) = option(file, "seed", cli.seed)? {
        cfg.tropical.seed = s;
    }
    if let Some(b) = option(file, "fallback_bound", cli.fallback_bound)? {
        cfg.tropical.fallback_bound = b;
    }
    if let Some(p) = option(file, "precision_bits", cli.precision_bits)? {
        cfg.relations.start_bits = p;
    }
    if let Some(p) = option::<usize>(file, "max_bits", None)? {
        cfg.relations.max_bits = p;
    }
    if cfg.relations.max_bits < cfg.relations.start_bits {
        cfg.relations.max_bits = cfg.relations.start_bits;
    }
    if let Some(r) = option(file, "relations", cli.relations.clone())? {
        cfg.relations.strategy = r;
    }
    if let Some(r) = option(file, "rays", cli.rays.clone())? {
        cfg.tropical.ray_finder = r;
    }
    relation_finder(&cfg.relations.strategy).map_err(input)?;
    ray_finder(&cfg.tropical.ray_finder).map_err(input)?;
    cfg.witness_degree_cap = option(file, "witness_cap", cli.witness_cap)?;
    let degree = option(file, "degree", cli.degree)?;

    let mut shown = BTreeMap::new();
    shown.insert("seed".into(), cfg.tropical.seed.to_string());
    shown.insert("fallback_bound".into(), cfg.tropical.fallback_bound.to_string());
    shown.insert("precision_bits".into(), cfg.relations.start_bits.to_string());
    shown.insert("max_bits".into(), cfg.relations.max_bits.to_string());
    shown.insert("relations".into(), cfg.relations.strategy.clone());
    shown.insert("rays".into(), cfg.tropical.ray_finder.clone());
    shown.insert(
        "witness_cap".into(),
        cfg.witness_degree_cap.unwrap_or(PipelineConfig::DEFAULT_WITNESS_CAP).to_string(),
    );
    if let Some(d) = degree {
        shown.insert("degree".into(), d.to_string());
    }
    Ok((cfg, degree, shown))
}

fn run(cli: &Cli) -> Result<(Report, u8), Failure> {
    let text = if cli.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(input)?
    } else {
        std::fs::read_to_string(&cli.file).map_err(|e| Failure(format!("{}: {e}", cli.file.display())))?
    };
    let file = parse_problem(&text).map_err(input)?;
    let (cfg, degree, options) = settings(cli, &file)?;
    let ideal = file.ideal();
    let ring = &file.ring;
    let laurent = ring.as_laurent();
    let mut report = Report {
        command: format!("{:?}", cli.command).to_lowercase(),
        ring: ring.names().to_vec(),
        ideal: file.sources.clone(),
        options,
        ..Report::default()
    };
    let start = Instant::now();
    let mut completeness = None;
    match cli.command {
        Command::Bin => {
            let res = binomial_part_laurent(&ideal, &cfg).map_err(input)?;
            report.status = res.status.to_string();
            report.basis = res.lattice.rows_i64();
            report.lambdas = res.lambdas.iter().map(ToString::to_string).collect();
            report.generators = res.generators.iter().map(|g| g.display(&laurent).to_string()).collect();
            report.certificates = res.certificates;
            completeness = Some(res.completeness);
        }
        Command::Decide => {
            let d = contains_binomial(&ideal, &cfg).map_err(input)?;
            report.status = d.contains.to_string();
            if let Some(w) = &d.witness {
                report.witness = Some(w.display(ring).to_string());
                report.certificates = vec![ideal.contains(w)];
            }
            completeness = Some(d.completeness);
        }
        Command::Monomial => report.status = contains_monomial(&ideal).to_string(),
        Command::Tropspan => {
            let span = tropical_span(&ideal, &cfg.tropical).map_err(input)?;
            report.status = format!("rank {}", span.rank());
            report.basis = span.vectors;
        }
        Command::Oracle => {
            let d = degree.ok_or_else(|| Failure("oracle needs --degree".into()))?;
            if d == 0 {
                return Err(Failure("--degree must be at least 1".into()));
            }
            let found = brute_force_binomials(&ideal, d);
            report.status = (!found.is_empty()).to_string();
            report.certificates = found.iter().map(|b| ideal.contains(&b.to_poly())).collect();
            report.generators = found.iter().map(|b| b.to_poly().display(ring).to_string()).collect();
        }
    }
    if !cli.no_timing {
        report.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report.completeness = completeness.map(|c| c.to_string());
    let code = if completeness == Some(Completeness::FallbackExhausted) { INCOMPLETE } else { OK };
    Ok((report, code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { OK });
        }
    };
    match run(&cli) {
        Ok((report, code)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if code == INCOMPLETE {
                eprintln!("warning: search budget exhausted; the lattice may be incomplete");
            }
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

