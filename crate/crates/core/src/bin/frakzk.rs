use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use frakzk::harness::{run, Experiment, ExperimentConfig};
use frakzk::spectral_core::read_snapshot;

#[derive(Parser)]
#[command(name = "frakzk", version, about = "Fractional ZK-KP simulation and estimate-verification lab")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// JSON config; the shipped defaults are used when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// output directory (default: frakzk-out/<experiment>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// overrides the seed of the config
    #[arg(long)]
    seed: Option<u64>,
    /// worker threads
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    Simulate(RunArgs),
    Conserve(RunArgs),
    Scaling(RunArgs),
    Decay(RunArgs),
    Strichartz(RunArgs),
    Energy(RunArgs),
    BonaSmith(RunArgs),
    FlowContinuity(RunArgs),
    GnInequality(RunArgs),
    Illposed(RunArgs),
    /// Check a config against the schema without running it
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Inspect snapshot files
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Print grid and norms of a snapshot
    Info { file: PathBuf },
}

fn load(path: &Path) -> anyhow::Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ExperimentConfig::from_json(&text)?)
}

fn run_experiment(name: &str, args: &RunArgs) -> anyhow::Result<bool> {
    let mut cfg = match &args.config {
        Some(p) => load(p)?,
        None => ExperimentConfig::for_experiment(Experiment::default_for(name)?),
    };
    if cfg.experiment.name() != name {
        bail!("config holds a {:?} experiment, not {name:?}", cfg.experiment.name());
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from("frakzk-out").join(name));
    let report = run(&cfg, Some(&out))?;
    for s in &report.results {
        let status = match s.pass {
            Some(true) => "ok  ",
            Some(false) => "FAIL",
            None => "    ",
        };
        println!("{status} {:<50} {:.6e}", s.name, s.value);
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    println!(
        "{name}: {} in {:.1} s, report in {}",
        if report.pass { "pass" } else { "FAIL" },
        report.wall_time_s,
        out.display()
    );
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Simulate(a) => run_experiment("simulate", a),
        Cmd::Conserve(a) => run_experiment("conserve", a),
        Cmd::Scaling(a) => run_experiment("scaling", a),
        Cmd::Decay(a) => run_experiment("decay", a),
        Cmd::Strichartz(a) => run_experiment("strichartz", a),
        Cmd::Energy(a) => run_experiment("energy", a),
        Cmd::BonaSmith(a) => run_experiment("bona-smith", a),
        Cmd::FlowContinuity(a) => run_experiment("flow-continuity", a),
        Cmd::GnInequality(a) => run_experiment("gn-inequality", a),
        Cmd::Illposed(a) => run_experiment("illposed", a),
        Cmd::Validate { config } => load(config).map(|c| {
            println!("{}: valid {} config", config.display(), c.experiment.name());
            true
        }),
        Cmd::Field { cmd: FieldCmd::Info { file } } => read_snapshot(file).map_err(Into::into).map(|f| {
            let g = f.grid();
            let info = serde_json::json!({
                "nx": g.nx(), "ny": g.ny(), "lx": g.lx(), "ly": g.ly(),
                "l2": f.l2_norm(), "sup": f.sup_norm(), "mass": f.mass(),
                "hermitian_defect": f.hermitian_defect(),
            });
            println!("{}", serde_json::to_string_pretty(&info).expect("plain json"));
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
