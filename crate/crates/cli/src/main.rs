use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use penta_cli::emit::{emit_csv, CsvRequest, GeodesicScenario};
use penta_cli::{parse_convention, run_suite, write_report, CliError, Format, RunConfig, Status, Suite, DEFAULT_SEED};
use penta_core::clifford::convention_search;

/// Verification suites for five-dimensional Clifford, curvature, geodesic
/// and spinor-map identities.
///
/// Exit status: 0 when every pass/fail check passed, 1 when any failed,
/// 2 on configuration or I/O errors. Measured checks never change it.
#[derive(Parser)]
#[command(name = "penta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every sampled point in the run.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output directory for reports and CSV files.
    #[arg(long, default_value = "penta-out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Convention id such as `+----:+i:-:-` (see `penta conventions`).
    #[arg(long, allow_hyphen_values = true)]
    convention: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write `report_<suite>.<json|md>`.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate a preferred geodesic and write `geodesic.csv`
    /// (columns s,x0,x1,x2,x3,x4).
    Geodesic {
        /// JSON scenario `{metric: {potential, g4?, lambda?, chi?, omega?}, start, ds, steps}`
        /// with s-expression components; defaults to a constant potential.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        ds: Option<f64>,
        #[arg(long, default_value = "penta-out")]
        out: PathBuf,
    },
    /// Write the 1° stereographic double-angle sweep to `stereo.csv`
    /// (columns phi,theta,residual).
    Stereo {
        #[arg(long, default_value = "penta-out")]
        out: PathBuf,
    },
    /// Score all 32 conventions against every Clifford identity.
    Conventions {
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { suite, common } => {
            let cfg = RunConfig {
                suite,
                convention_override: common.convention.as_deref().map(parse_convention).transpose()?,
                seed: common.seed,
                output_dir: common.out,
                format: common.format,
            };
            let report = run_suite(&cfg)?;
            let path = write_report(&cfg, &report)?;
            for c in &report.checks {
                println!("{:<8} {:<48} {}", c.status.as_str(), c.check_id, c.residual);
            }
            println!(
                "{} pass, {} fail, {} measured -> {}",
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Measured),
                path.display()
            );
            Ok(!report.has_failures())
        }
        Command::Geodesic { config, steps, ds, out } => {
            let mut sc = match config {
                Some(p) => GeodesicScenario::load(&p)?,
                None => GeodesicScenario::default(),
            };
            if let Some(n) = steps {
                sc.steps = n;
            }
            if let Some(h) = ds {
                sc.ds = h;
            }
            let (path, rows) = emit_csv(&CsvRequest::Geodesic(sc), &out)?;
            println!("{rows} rows -> {}", path.display());
            Ok(true)
        }
        Command::Stereo { out } => {
            let (path, rows) = emit_csv(&CsvRequest::Stereographic, &out)?;
            println!("{rows} rows -> {}", path.display());
            Ok(true)
        }
        Command::Conventions { format } => {
            let search = convention_search();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&search).expect("serializable")),
                Format::Markdown => {
                    println!("| convention | score | holds |\n|---|---|---|");
                    for s in &search.ranking {
                        let held: Vec<&str> = s.records.iter().filter(|r| r.pass).map(|r| r.identity_id.as_str()).collect();
                        println!("| `{}` | {} | {} |", s.id, s.score, held.join(", "));
                    }
                    for c in &search.conflicts {
                        println!("\nconflict: {c}");
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
