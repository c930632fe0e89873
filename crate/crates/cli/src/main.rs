//! Command line front end. Every verb reads JSON configs, writes JSON/CSV
//! artifacts, and exits 0 when all checks pass, 1 when a check fails, and
//! 2 when the configuration or its hypotheses are invalid.

use anyhow::Context;
use clap::{Parser, Subcommand};
use recon_cli::{
    run_certify, run_sweep, run_verify, run_window, write_sweep_csv, BetaPolicy, CertifyConfig,
    CliError, ExperimentConfig, SweepConfig,
};
use recon_core::complex::rips_complex_bounded;
use recon_core::homology::betti_numbers;
use recon_core::io::{
    read_complex_json, read_matrix_csv, read_points_csv, write_complex_json, write_matrix_csv,
    write_points_csv,
};
use recon_core::metric::PointCloud;
use recon_core::models::SampleSpec;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "recon",
    version,
    about = "Homology reconstruction from finite samples via Rips complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and report Betti numbers against ground truth.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Directory to write report.json into (stdout always gets the report).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the scale policy with an explicit value.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        zeta: Option<f64>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Override the sampler seed (random samplers) and the noise seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a (n, beta, zeta) grid and emit a CSV matrix.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the inequality campaign for a model.
    Certify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw the configured sample and emit its points as CSV.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a Rips complex from a CSV point cloud (or distance matrix).
    Rips {
        /// Input CSV: one point per row, or a square matrix with --matrix.
        input: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Treat the input as a distance matrix instead of coordinates.
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers of a stored complex.
    Homology {
        input: PathBuf,
    },
    /// Compute the admissible scale window for a configuration.
    Window {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        zeta: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            let failure = Failure { failure: format!("{err:#}") };
            let text = serde_json::to_string_pretty(&failure)
                .unwrap_or_else(|_| format!("{{\"failure\": \"{err}\"}}"));
            eprintln!("{text}");
            ExitCode::from(exit_code_of(&err) as u8)
        }
    }
}

#[derive(Serialize)]
struct Failure {
    failure: String,
}

fn exit_code_of(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CliError>() {
        Some(e) => e.exit_code(),
        None => 2,
    }
}

fn dispatch(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Verify { config, out, beta, zeta, max_dim, seed } => {
            let mut cfg: ExperimentConfig = read_config(&config)?;
            if let Some(value) = beta {
                cfg.beta = BetaPolicy::Explicit { value };
            }
            if let Some(z) = zeta {
                cfg.zeta = z;
            }
            if let Some(k) = max_dim {
                cfg.max_dim = k;
            }
            if let Some(s) = seed {
                if let SampleSpec::Random { n, .. } = cfg.sampler {
                    cfg.sampler = SampleSpec::Random { n, seed: s };
                }
                cfg.noise_seed = s;
            }
            let report = run_verify(&cfg)?;
            emit_json(&report, out.as_deref(), "report.json")?;
            Ok(pass_code(report.pass))
        }
        Command::Sweep { config, out } => {
            let cfg: SweepConfig = read_config(&config)?;
            let outcome = run_sweep(&cfg)?;
            match &out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    let path = dir.join("sweep.csv");
                    let file = std::fs::File::create(&path)?;
                    write_sweep_csv(file, &outcome, cfg.max_dim)?;
                    eprintln!("wrote {}", path.display());
                }
                None => write_sweep_csv(std::io::stdout().lock(), &outcome, cfg.max_dim)?,
            }
            if outcome.violations.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "guarantee violated in rows {:?}: window membership without Betti match",
                    outcome.violations
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Certify { config, out, seed } => {
            let mut cfg: CertifyConfig = read_config(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = run_certify(&cfg)?;
            emit_json(&report, out.as_deref(), "certify.json")?;
            Ok(pass_code(report.valid))
        }
        Command::Sample { config, out, seed } => {
            let mut cfg: ExperimentConfig = read_config(&config)?;
            if let Some(s) = seed {
                if let SampleSpec::Random { n, .. } = cfg.sampler {
                    cfg.sampler = SampleSpec::Random { n, seed: s };
                }
            }
            cfg.validate().map_err(anyhow::Error::from)?;
            let sample = cfg.model.sample(cfg.sampler).map_err(CliError::from)?;
            match &out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    let path = dir.join("sample.csv");
                    write_points_csv(&path, &sample.points).map_err(CliError::from)?;
                    let metric = cfg.model.metric_space_of(&sample.points)
                        .map_err(CliError::from)?;
                    let matrix_path = dir.join("metric.csv");
                    write_matrix_csv(&matrix_path, &metric).map_err(CliError::from)?;
                    eprintln!(
                        "wrote {} ({} points) and {}",
                        path.display(),
                        sample.points.len(),
                        matrix_path.display()
                    );
                }
                None => {
                    let mut buf = Vec::new();
                    {
                        let mut w = csv::Writer::from_writer(&mut buf);
                        for row in &sample.points {
                            w.write_record(row.iter().map(|v| format!("{v}")))?;
                        }
                        w.flush()?;
                    }
                    print!("{}", String::from_utf8_lossy(&buf));
                }
            }
            eprintln!("fill bound {}", sample.fill_bound);
            Ok(ExitCode::SUCCESS)
        }
        Command::Rips { input, beta, max_dim, matrix, out } => {
            let ms = if matrix {
                read_matrix_csv(&input).map_err(CliError::from)?
            } else {
                let rows = read_points_csv(&input).map_err(CliError::from)?;
                PointCloud::new(rows)
                    .and_then(|c| c.to_metric_space())
                    .map_err(CliError::from)?
            };
            let complex = rips_complex_bounded(&ms, beta, max_dim, recon_cli::SIMPLEX_BUDGET)
                .map_err(CliError::from)?;
            let target = match &out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    dir.join("complex.json")
                }
                None => PathBuf::from("complex.json"),
            };
            write_complex_json(&target, &complex).map_err(CliError::from)?;
            eprintln!("wrote {} (sizes {:?})", target.display(), complex.counts());
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { input } => {
            let complex = read_complex_json(&input).map_err(CliError::from)?;
            let report = betti_numbers(&complex);
            #[derive(Serialize)]
            struct HomologyOut {
                counts: Vec<usize>,
                betti: Vec<u64>,
                exact: Vec<bool>,
                euler: i64,
            }
            let out = HomologyOut {
                counts: report.counts,
                betti: report.betti,
                exact: report.exact,
                euler: report.euler,
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Window { config, out, zeta } => {
            let mut cfg: ExperimentConfig = read_config(&config)?;
            if let Some(z) = zeta {
                cfg.zeta = z;
            }
            let report = run_window(&cfg)?;
            emit_json(&report, out.as_deref(), "window.json")?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_config<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let cfg = serde_json::from_str(&text)
        .with_context(|| format!("parsing config {}", path.display()))?;
    Ok(cfg)
}

/// Prints the report to stdout and mirrors it into `<out>/<name>` when an
/// output directory was given.
fn emit_json<T: Serialize>(report: &T, out: Option<&Path>, name: &str) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    println!("{text}");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(name);
        std::fs::write(&path, format!("{text}\n"))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn pass_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
