use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Where a number's target comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// a closed-form exponent or constant from the theory
    Theory,
    /// an exact identity of the discretization
    Derived,
    /// a constant fitted from the runs themselves
    Fitted,
    /// a tolerance of the artifact (no analytic content)
    Artifact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Bound {
    Within { target: f64, tol: f64 },
    AtMost { limit: f64 },
    AtLeast { limit: f64 },
    /// computed and reported, never asserted
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub source: Source,
    /// `None` for reported-only values
    pub pass: Option<bool>,
}

impl Scalar {
    pub fn new(name: impl Into<String>, value: f64, bound: Bound, source: Source) -> Self {
        let pass = match bound {
            Bound::Within { target, tol } => Some((value - target).abs() <= tol),
            Bound::AtMost { limit } => Some(value <= limit),
            Bound::AtLeast { limit } => Some(value >= limit),
            Bound::Report => None,
        };
        // NaN never passes
        let pass = pass.map(|p| p && !value.is_nan());
        Self { name: name.into(), value, bound, source, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub inputs_digest: String,
    pub results: Vec<Scalar>,
    pub notes: Vec<String>,
    pub files: Vec<String>,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.results.iter().find(|s| s.name == name)
    }

    pub fn failures(&self) -> Vec<&Scalar> {
        self.results.iter().filter(|s| s.pass == Some(false)).collect()
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(self)?)?;
        let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join("results.csv"))?);
        writeln!(f, "name,value,bound,source,pass")?;
        for s in &self.results {
            let bound = match s.bound {
                Bound::Within { target, tol } => format!("{target}+-{tol}"),
                Bound::AtMost { limit } => format!("<={limit}"),
                Bound::AtLeast { limit } => format!(">={limit}"),
                Bound::Report => "report".into(),
            };
            let pass = match s.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "",
            };
            writeln!(f, "{},{:e},{},{:?},{}", s.name, s.value, bound, s.source, pass)?;
        }
        f.flush()?;
        Ok(())
    }
}

/// Collects scalars while an experiment runs.
#[derive(Debug, Default)]
pub struct Recorder {
    pub results: Vec<Scalar>,
    pub notes: Vec<String>,
    pub files: Vec<String>,
}

impl Recorder {
    pub fn push(&mut self, name: impl Into<String>, value: f64, bound: Bound, source: Source) {
        self.results.push(Scalar::new(name, value, bound, source));
    }

    pub fn report(&mut self, name: impl Into<String>, value: f64) {
        self.push(name, value, Bound::Report, Source::Fitted);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(Scalar::new("a", 1.05, Bound::Within { target: 1.0, tol: 0.1 }, Source::Theory).pass, Some(true));
        assert_eq!(Scalar::new("a", 2.0, Bound::AtMost { limit: 1.0 }, Source::Artifact).pass, Some(false));
        assert_eq!(Scalar::new("a", f64::NAN, Bound::AtLeast { limit: 0.0 }, Source::Artifact).pass, Some(false));
        assert_eq!(Scalar::new("a", 0.0, Bound::Report, Source::Fitted).pass, None);
    }
}
