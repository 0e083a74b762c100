//! `maoea`: command-line front end for the optimizer, the indicators and the
//! experiment harness.
//!
//! Exit codes: 0 on success, 2 on a configuration error, 3 on an I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use maoea_core::engine::{run, run_random_baseline, EngineConfig, RunRecord};
use maoea_core::harness::{
    compare_cells, nadir_experiment, read_cell_csv, run_experiment, write_nadir_csv,
    ExperimentSpec, NadirBenchSpec,
};
use maoea_core::metrics::{hv_exact, hv_monte_carlo, igd, EXACT_MAX_OBJECTIVES};
use maoea_core::nadir::{run_dnpe, DnpeConfig};
use maoea_core::problems::problem_by_id;
use maoea_core::refpoints::{to_utopian, two_layer, LayerConfig};
use maoea_core::{Error, RandomSource, Result};

#[derive(Parser)]
#[command(name = "maoea", version, about = "IGD-driven many-objective optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write reference points, one per line.
    Refpoints {
        #[arg(long)]
        m: usize,
        /// Outer divisions, optionally followed by inner divisions: `3` or `3,2`.
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        divisions: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        nadir: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the nadir point of a benchmark and write the report as JSON.
    Nadir {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100.0)]
        lambda: f64,
        /// Total evaluations, shared evenly by the objectives.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print an indicator value of a front against reference data.
    Metric {
        #[arg(long, value_enum)]
        kind: MetricKind,
        #[arg(long)]
        front: PathBuf,
        /// Reference front for IGD, a single reference point for HV.
        #[arg(long)]
        reference: PathBuf,
        /// Monte Carlo samples for HV; forces the estimator even when exact is possible.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One optimizer run; writes `run.json` and `trajectory.csv`.
    Run {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Run the random-search baseline instead of the optimizer.
        #[arg(long)]
        baseline: bool,
    },
    /// Multi-seed experiment described by a JSON spec.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Nadir estimation benchmark; writes `nadir.csv`.
    NadirBench {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
    /// Rank-sum comparison of two cell tables, printed as CSV.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricKind {
    Igd,
    Igdplus,
    Hv,
}

fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path)?;
    let mut points = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| {
                Error::Config(format!("{}:{}: {e}", path.display(), line_no + 1))
            })?;
        if let Some(first) = points.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Dimension {
                    expected: first,
                    found: row.len(),
                });
            }
        }
        points.push(row);
    }
    if points.is_empty() {
        return Err(Error::Empty("point file"));
    }
    Ok(points)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn refpoints(
    m: usize,
    divisions: &[usize],
    ideal: Option<Vec<f64>>,
    nadir: Option<Vec<f64>>,
    out: &Path,
) -> Result<()> {
    let layers = match *divisions {
        [d] => LayerConfig::single(d),
        [outer, inner] => LayerConfig::two(outer, inner),
        _ => return Err(Error::Config("give one or two division counts".into())),
    };
    let mut points = two_layer(m, &layers)?;
    if ideal.is_some() || nadir.is_some() {
        let ideal = ideal.unwrap_or_else(|| vec![0.0; m]);
        let nadir = nadir.unwrap_or_else(|| vec![1.0; m]);
        points = to_utopian(&points, &ideal, &nadir)?;
    }
    let mut text = String::new();
    for p in &points.points {
        let row: Vec<String> = p.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(text, "{}", row.join(",")).expect("writing to a String");
    }
    write_text(out, &text)
}

fn nadir(problem: &str, m: usize, lambda: f64, budget: u64, seed: u64, out: &Path) -> Result<()> {
    let p = problem_by_id(problem, m)?;
    let per_axis = budget / m as u64;
    if per_axis == 0 {
        return Err(Error::Config(format!("budget {budget} is below one evaluation per objective")));
    }
    let cfg = DnpeConfig {
        lambda,
        per_extreme_eval_budget: Some(per_axis),
        ..DnpeConfig::default()
    };
    let report = run_dnpe(&p, &cfg, &mut RandomSource::new(seed))?;
    let value = json!({
        "extreme_points": report.extreme_points,
        "nadir": report.nadir,
        "ideal": report.ideal,
        "evaluations": report.evaluations,
        "error": report.error,
    });
    write_text(out, &(serde_json::to_string_pretty(&value)? + "\n"))
}

fn metric(
    kind: MetricKind,
    front: &Path,
    reference: &Path,
    samples: Option<u64>,
    seed: u64,
) -> Result<f64> {
    let front = read_points(front)?;
    let reference = read_points(reference)?;
    match kind {
        MetricKind::Igd => igd(&reference, &front, false),
        MetricKind::Igdplus => igd(&reference, &front, true),
        MetricKind::Hv => {
            if reference.len() != 1 {
                return Err(Error::Config(format!(
                    "hypervolume needs exactly one reference point, got {}",
                    reference.len()
                )));
            }
            let r = &reference[0];
            let m = r.len();
            if samples.is_none() && m <= EXACT_MAX_OBJECTIVES {
                return hv_exact(&front, r);
            }
            // Lower corner: component-wise minimum of the front.
            let lower: Vec<f64> = (0..m)
                .map(|j| front.iter().map(|y| y[j]).fold(f64::INFINITY, f64::min))
                .collect();
            if lower.iter().zip(r).any(|(lo, hi)| lo >= hi) {
                return Ok(0.0);
            }
            let samples = samples.unwrap_or(maoea_core::metrics::DEFAULT_SAMPLES);
            hv_monte_carlo(&front, r, &lower, samples, &mut RandomSource::new(seed))
        }
    }
}

fn trajectory_csv(record: &RunRecord) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut text = String::from("generation,evaluations,igd,best_min_proximity,mean_min_proximity,r1,r2,r3\n");
    for g in &record.generations {
        let census = match g.census {
            Some([a, b, c]) => format!("{a},{b},{c}"),
            None => ",,".into(),
        };
        writeln!(
            text,
            "{},{},{},{},{},{census}",
            g.generation,
            g.evaluations,
            opt(g.igd),
            opt(g.best_min_proximity),
            opt(g.mean_min_proximity),
        )
        .expect("writing to a String");
    }
    text
}

fn run_once(problem: &str, m: usize, budget: u64, seed: u64, out: &Path, baseline: bool) -> Result<()> {
    let cfg = EngineConfig::new(problem, m, budget, seed);
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let record = if baseline {
        run_random_baseline(&cfg)?
    } else {
        run(&cfg)?
    };
    write_text(&out.join("run.json"), &(record.to_json()? + "\n"))?;
    write_text(&out.join("trajectory.csv"), &trajectory_csv(&record))?;
    if let Some(last) = record.generations.last() {
        match last.igd {
            Some(v) => println!("{} evaluations, final igd {v}", record.evaluations),
            None => println!("{} evaluations", record.evaluations),
        }
    }
    Ok(())
}

fn experiment(spec_path: &Path) -> Result<()> {
    let text = fs::read_to_string(spec_path)?;
    let spec = ExperimentSpec::from_json(&text)?;
    let summary = run_experiment(&spec)?;
    println!("{} summary rows written to {}", summary.len(), spec.out.join("summary.csv").display());
    Ok(())
}

fn nadir_bench(out: &Path, seeds: usize, seed: u64, cap: u64) -> Result<()> {
    let spec = NadirBenchSpec {
        seeds,
        seed,
        cap,
        ..NadirBenchSpec::default()
    };
    fs::create_dir_all(out)?;
    let rows = nadir_experiment(&spec)?;
    write_nadir_csv(&out.join("nadir.csv"), &rows)
}

fn compare(a: &Path, b: &Path) -> Result<()> {
    let rows = compare_cells(&read_cell_csv(a)?, &read_cell_csv(b)?)?;
    println!("indicator,median_a,median_b,u,p_value,mark");
    for c in rows {
        println!(
            "{},{},{},{},{},{}",
            c.indicator,
            c.median_a,
            c.median_b,
            c.u,
            c.p_value,
            c.mark.symbol()
        );
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Refpoints {
            m,
            divisions,
            ideal,
            nadir: nad,
            out,
        } => refpoints(m, &divisions, ideal, nad, &out),
        Command::Nadir {
            problem,
            m,
            lambda,
            budget,
            seed,
            out,
        } => nadir(&problem, m, lambda, budget, seed, &out),
        Command::Metric {
            kind,
            front,
            reference,
            samples,
            seed,
        } => {
            let v = metric(kind, &front, &reference, samples, seed)?;
            println!("{v:.11e}");
            Ok(())
        }
        Command::Run {
            problem,
            m,
            budget,
            seed,
            out,
            baseline,
        } => run_once(&problem, m, budget, seed, &out, baseline),
        Command::Experiment { spec } => experiment(&spec),
        Command::NadirBench {
            out,
            seeds,
            seed,
            cap,
        } => nadir_bench(&out, seeds, seed, cap),
        Command::Compare { a, b } => compare(&a, &b),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
