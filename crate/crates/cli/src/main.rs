use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagproj::flags::{check_general_position, exchange_comparison, random_general_position_subspace, v_dminus1_exact, v_k_th2};
use flagproj::harness::{install_workers, run_suite, RunConfig, Status, Suite, VerificationReport};
use flagproj::polytope::{fixtures, io, project_and_volume, Polytope};
use flagproj::{MCEstimate, RandomStream, Subspace};

/// Projection functions of convex polytopes and their verification.
#[derive(Parser)]
#[command(name = "flagproj", version)]
struct Cli {
    /// Size of the worker pool.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a polytope fixture as JSON.
    GenPolytope {
        #[arg(value_enum)]
        shape: Shape,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=6))]
        dim: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate v_k(P, E) by every available route.
    Project {
        /// Polytope JSON file.
        polytope: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Explicit basis of E: rows separated by ';', entries by ','.
        /// Without it E is drawn at random in general position.
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Normal-cone proposals per face.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per face and per Grassmannian integral.
        #[arg(long)]
        samples: Option<u64>,
        /// Fixture dimensions, comma separated.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge verification reports; exits 1 if any merged check failed.
    ReportMerge {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Cube,
    Simplex,
    Crosspolytope,
    Random,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.workers == 0 {
        bail!("--workers must be positive");
    }
    install_workers(cli.workers)?;
    match cli.command {
        Command::GenPolytope { shape, dim, seed, out } => {
            let d = dim as usize;
            let p = match shape {
                Shape::Cube => fixtures::cube(d)?,
                Shape::Simplex => fixtures::simplex(d)?,
                Shape::Crosspolytope => fixtures::cross_polytope(d)?,
                Shape::Random => fixtures::random_gaussian(d, 2 * d * d, &mut RandomStream::new(seed, 0))?,
            };
            emit(out.as_deref(), &io::to_json(&p)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { polytope, k, basis, seed, samples, out } => {
            let text = fs::read_to_string(&polytope).with_context(|| format!("reading {}", polytope.display()))?;
            let p = io::from_json(&text).with_context(|| format!("parsing {}", polytope.display()))?;
            let report = project(&p, k, basis.as_deref(), seed, samples, cli.workers)?;
            emit(out.as_deref(), &flagproj::json::to_string(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, samples, dims, out } => {
            let suite = Suite::parse(&suite)?;
            let defaults = RunConfig::default();
            let config = RunConfig {
                seed: seed.unwrap_or(defaults.seed),
                samples_per_face: samples.unwrap_or(defaults.samples_per_face),
                grassmannian_samples: samples.unwrap_or(defaults.grassmannian_samples),
                dims: dims.unwrap_or(defaults.dims),
                workers: cli.workers,
                ..defaults
            };
            let report = run_suite(suite, &config)?;
            summarize(&report);
            emit(out.as_deref(), &report.to_json()?)?;
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::ReportMerge { reports, out } => {
            let parsed = reports
                .iter()
                .map(|path| {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    VerificationReport::from_json(&text).with_context(|| format!("parsing {}", path.display()))
                })
                .collect::<Result<Vec<_>>>()?;
            let merged = VerificationReport::merge(parsed)?;
            summarize(&merged);
            emit(out.as_deref(), &merged.to_json()?)?;
            Ok(ExitCode::from(merged.exit_code() as u8))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn summarize(report: &VerificationReport) {
    for r in &report.records {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        eprintln!("{status:4} {:26} {}", r.check_id, r.detail);
    }
}

fn parse_basis(text: &str, d: usize) -> Result<Subspace> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad basis entry {x:?}")))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != d) {
        bail!("basis vectors must have {d} entries");
    }
    Ok(Subspace::orthonormalize(d, &rows)?)
}

fn estimate_json(e: &MCEstimate) -> Value {
    json!({ "value": e.mean, "stderr": e.stderr, "n": e.n })
}

fn project(p: &Polytope, k: Option<usize>, basis: Option<&str>, seed: u64, samples: u64, workers: usize) -> Result<Value> {
    let d = p.dim();
    let rng = RandomStream::new(seed, 0);
    let e = match (basis, k) {
        (Some(text), _) => {
            let e = parse_basis(text, d)?;
            if k.is_some_and(|k| k != e.dim()) {
                bail!("--k {} disagrees with a basis of rank {}", k.unwrap_or(0), e.dim());
            }
            e
        }
        (None, Some(k)) => {
            if !(1..d).contains(&k) {
                bail!("--k must lie in 1..={} for a {d}-polytope", d - 1);
            }
            random_general_position_subspace(p, k, 100, &mut rng.substream(0))?
        }
        (None, None) => bail!("give --k, --basis, or both"),
    };
    let k = e.dim();
    if !(1..d).contains(&k) {
        bail!("E must have dimension in 1..={}", d - 1);
    }

    let mut routes: Vec<(&str, MCEstimate)> = vec![("direct", MCEstimate::exact(project_and_volume(p, &e)?))];
    if k + 1 == d {
        let normal = e.complement().basis()[0].clone();
        routes.push(("exact", MCEstimate::exact(v_dminus1_exact(p, &normal)?)));
    }
    let mut skipped = Value::Null;
    match check_general_position(p, &e) {
        Ok(()) => {
            let ex = exchange_comparison(p, &e, samples, &rng.substream(1))?;
            routes.push(("prop31", ex.prop31));
            routes.push(("th1", ex.th1));
            routes.push(("th2", v_k_th2(p, &e, samples, &rng.substream(2))?));
        }
        Err(err) => skipped = json!(format!("prop31, th1 and th2 skipped: {err}")),
    }

    let mut values = serde_json::Map::new();
    for (name, est) in &routes {
        values.insert((*name).into(), estimate_json(est));
    }
    let mut z = serde_json::Map::new();
    for (i, (a, ea)) in routes.iter().enumerate() {
        for (b, eb) in &routes[i + 1..] {
            z.insert(format!("{a}-{b}"), json!(ea.z_score(eb)));
        }
    }
    Ok(json!({
        "dim": d,
        "k": k,
        "subspace": e.basis(),
        "seed": seed,
        "samples_per_face": samples,
        "workers": workers,
        "estimates": values,
        "z_scores": z,
        "skipped": skipped,
    }))
}
