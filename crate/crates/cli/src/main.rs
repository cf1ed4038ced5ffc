use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use swmix::demo::DemoParams;
use swmix::error::CliError;
use swmix::scenario::Scenario;
use swmix::tasks::{self, Status};

#[derive(Parser)]
#[command(name = "swmix", version, about = "Certificates for switched piecewise-affine systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Output directory; overrides the scenario's `out`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The built-in tent-map example.
    TentDemo {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        horizon: usize,
        /// Quadruples in the weak-mixing batch.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Re-verify a certificate file.
    Verify { certificate: PathBuf },
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SWMIX_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Invalid(format!("SWMIX_THREADS=`{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Invalid(e.to_string()))
}

fn finish(out: &tasks::RunOutput, dir: &Path) -> Result<u8, CliError> {
    let written = swmix::write_outputs(dir, out)?;
    let mut summary = json!({
        "status": out.report["status"],
        "files": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    });
    if let Status::BudgetExceeded(r) | Status::CheckFailed(r) = &out.status {
        summary["reason"] = json!(r);
    }
    println!("{summary}");
    Ok(out.status.exit_code())
}

fn main_inner(cli: Cli) -> Result<u8, CliError> {
    threads()?;
    match cli.command {
        Command::Run { scenario, out } => {
            let text = std::fs::read_to_string(&scenario)?;
            let sc = Scenario::from_json(&text)?;
            let dir = out.or_else(|| sc.out.clone()).unwrap_or_else(|| PathBuf::from("out"));
            let result = tasks::run(&sc)?;
            finish(&result, &dir)
        }
        Command::TentDemo { samples, horizon, trials, seed, out } => {
            let sc = Scenario::from_json(
                &json!({
                    "task": "tent-demo",
                    "seed": seed,
                    "params": serde_json::to_value(DemoParams { samples, horizon, trials, ..DemoParams::default() })?,
                })
                .to_string(),
            )?;
            finish(&tasks::run(&sc)?, &out)
        }
        Command::Verify { certificate } => {
            let (kind, ok) = swmix::verify_file(&certificate)?;
            println!("{}", json!({ "kind": kind, "verified": ok }));
            Ok(if ok { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
