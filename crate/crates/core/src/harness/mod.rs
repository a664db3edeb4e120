//! Experiment registry, configuration, deterministic data and report output.

mod config;
mod data;
mod experiments;
mod report;

use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};

pub use config::*;
pub use data::{gen_data, DataSpec};
pub use experiments::{group_suite, transform_suite};
pub use report::{Bound, ExperimentReport, Recorder, Scalar, Source, SCHEMA_VERSION};

use crate::{Error, Result};

/// SHA-256 of the canonical JSON form of the config.
pub fn inputs_digest(cfg: &ExperimentConfig) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// Runs one experiment, writing `report.json`, `results.csv` and any artifacts
/// into `out_dir` when given.
pub fn run(cfg: &ExperimentConfig, out_dir: Option<&Path>) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rec = Recorder::default();
    let name = cfg.experiment.name();
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d)?;
    }
    experiments::dispatch(cfg, out_dir, &mut rec).map_err(|e| match e {
        Error::Experiment { .. } => e,
        other => Error::Experiment { name: name.to_string(), source: Box::new(other) },
    })?;
    let pass = rec.results.iter().all(|s| s.pass != Some(false));
    let report = ExperimentReport {
        schema_version: SCHEMA_VERSION,
        name: name.to_string(),
        seed: cfg.seed,
        inputs_digest: inputs_digest(cfg),
        results: rec.results,
        notes: rec.notes,
        files: rec.files,
        pass,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    if let Some(d) = out_dir {
        report.write(d)?;
    }
    Ok(report)
}
