use serde::{Deserialize, Serialize};

use super::data::DataSpec;
use crate::evolution::SolverConfig;
use crate::illposed::F3Quadrature;
use crate::propagator::DispersionSpec;
use crate::spectral_core::SpectralGrid;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

impl GridParams {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Self {
        Self { nx, ny, lx, ly }
    }

    pub fn build(&self) -> Result<SpectralGrid> {
        SpectralGrid::new(self.nx, self.ny, self.lx, self.ly)
    }
}

/// One run: shared grid/dispersion/solver blocks plus exactly one experiment block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    /// grid, dispersion and solver blocks are read by `simulate` only; the
    /// other experiments carry their own inside the experiment block
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    Simulate(SimulateParams),
    Conserve(ConserveParams),
    Scaling(ScalingParams),
    Decay(DecayParams),
    Strichartz(StrichartzParams),
    Energy(EnergyParams),
    BonaSmith(BonaSmithParams),
    FlowContinuity(FlowParams),
    GnInequality(GnParams),
    Illposed(IllposedParams),
}

pub const EXPERIMENTS: [&str; 10] = [
    "simulate",
    "conserve",
    "scaling",
    "decay",
    "strichartz",
    "energy",
    "bona-smith",
    "flow-continuity",
    "gn-inequality",
    "illposed",
];

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Simulate(_) => "simulate",
            Experiment::Conserve(_) => "conserve",
            Experiment::Scaling(_) => "scaling",
            Experiment::Decay(_) => "decay",
            Experiment::Strichartz(_) => "strichartz",
            Experiment::Energy(_) => "energy",
            Experiment::BonaSmith(_) => "bona-smith",
            Experiment::FlowContinuity(_) => "flow-continuity",
            Experiment::GnInequality(_) => "gn-inequality",
            Experiment::Illposed(_) => "illposed",
        }
    }

    /// The block with every field at its shipped default.
    pub fn default_for(name: &str) -> Result<Self> {
        serde_json::from_value(serde_json::json!({ name: {} }))
            .map_err(|e| Error::Config(format!("unknown experiment {name:?}: {e}")))
    }
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn for_experiment(exp: Experiment) -> Self {
        Self { seed: 0, grid: None, dispersion: None, solver: None, experiment: exp }
    }

    pub fn validate(&self) -> Result<()> {
        let shared = self.grid.is_some() || self.dispersion.is_some() || self.solver.is_some();
        if shared && !matches!(self.experiment, Experiment::Simulate(_)) {
            return Err(Error::Config(format!(
                "top-level grid/dispersion/solver are not read by {}; set them inside the experiment block",
                self.experiment.name()
            )));
        }
        if let Some(g) = &self.grid {
            g.build()?;
        }
        if let Some(d) = &self.dispersion {
            d.validate()?;
        }
        if let Some(s) = &self.solver {
            s.steps()?;
        }
        Ok(())
    }

    pub fn grid_or(&self, default: GridParams) -> GridParams {
        self.grid.unwrap_or(default)
    }

    pub fn dispersion_or(&self, alpha: f64) -> DispersionSpec {
        self.dispersion.unwrap_or(DispersionSpec { alpha })
    }

    pub fn solver_or(&self, default: SolverConfig) -> SolverConfig {
        self.solver.unwrap_or(default)
    }
}

macro_rules! defaults {
    ($($f:ident: $t:ty = $v:expr;)*) => {
        $(fn $f() -> $t { $v })*
    };
}

defaults! {
    d_true: bool = true;
    d_sim_data: DataSpec = DataSpec::Gaussian { amplitude: 1.0, sigma: [1.5, 1.5], center: None, zero_x_mean: false };
    d_suite_grid: GridParams = GridParams::new(256, 256, 40.0, 40.0);
    d_suite_tol: f64 = 1e-11;
    d_group_times: Vec<f64> = vec![0.3, 1.7];
    d_alphas3: Vec<f64> = vec![1.0, 0.0, -1.0];
    d_cons_grid: GridParams = GridParams::new(256, 256, 40.0, 40.0);
    d_cons_data: DataSpec = DataSpec::Gaussian { amplitude: 1.0, sigma: [1.5, 1.5], center: None, zero_x_mean: false };
    d_order_data: DataSpec = DataSpec::Gaussian { amplitude: 2.0, sigma: [1.5, 1.5], center: None, zero_x_mean: false };
    d_cons_dt: f64 = 1e-3;
    d_one: f64 = 1.0;
    d_order_dts: Vec<f64> = vec![0.01, 0.005, 0.0025];
    d_l2_tol: f64 = 1e-8;
    d_mass_tol: f64 = 1e-12;
    d_ham_tol: f64 = 1e-6;
    d_four: f64 = 4.0;
    d_order_tol: f64 = 0.3;
    d_lambda: f64 = 2.0;
    d_scal_grid: GridParams = GridParams::new(128, 128, 40.0, 40.0);
    d_scal_data: DataSpec = DataSpec::Gaussian { amplitude: 1.5, sigma: [1.5, 1.5], center: None, zero_x_mean: false };
    d_scal_dt: f64 = 2e-3;
    d_scal_tol: f64 = 1e-6;
    d_decay_grid: GridParams = GridParams::new(512, 512, 400.0, 400.0);
    d_decay_sigma: f64 = 0.4;
    d_decay_cases: Vec<[f64; 2]> = vec![[1.0, 0.0], [0.0, 0.0], [-1.0, 0.0], [1.0, 0.2]];
    d_decay_t: [f64; 2] = [1.0, 16.0];
    d_nine: usize = 9;
    d_pad: usize = 4;
    d_slope_tol: f64 = 0.07;
    d_resid_tol: f64 = 0.1;
    d_kernel: Option<KernelCheckParams> = Some(KernelCheckParams::default());
    d_strich_cases: Vec<f64> = vec![1.0, 0.0];
    d_strich_report: Vec<f64> = vec![-1.0];
    d_eps05: f64 = 0.05;
    d_l2c_tol: f64 = 1e-12;
    d_energy_grid: GridParams = GridParams::new(128, 128, 40.0, 40.0);
    d_ten: usize = 10;
    d_spread: f64 = 3.0;
    d_margin: f64 = 1.5;
    d_energy_s: [f64; 2] = [2.0, 2.0];
    d_energy_solver: SolverConfig = SolverConfig::new(0.005, 2.0);
    d_energy_amp: [f64; 2] = [4.0, 8.0];
    d_energy_sigma: [f64; 2] = [2.0, 3.0];
    d_bs_grid: GridParams = GridParams::new(2048, 2048, 2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI);
    d_bs_s1: Vec<f64> = vec![1.0, 2.0];
    d_bs_rel: f64 = 0.1;
    d_bs_tau: Vec<[f64; 2]> = vec![[2e-3, 2e-2], [1e-5, 1e-3]];
    d_bs_c: f64 = 2.0;
    d_flow_grid: GridParams = GridParams::new(128, 128, 40.0, 40.0);
    d_five: usize = 5;
    d_flow_solver: SolverConfig = SolverConfig::new(0.005, 2.0);
    d_flow_pert: f64 = 0.05;
    d_flow_c: f64 = 1.0;
    d_gn_grids: [usize; 2] = [128, 256];
    d_gn_l: f64 = 20.0;
    d_hundred: usize = 100;
    d_two: f64 = 2.0;
    d_gn_band: f64 = 6.0;
    d_stable3: f64 = 3.0;
    d_fifty: usize = 50;
    d_ill_cases: Vec<[f64; 2]> = vec![[-1.0, 0.01], [-0.5, 0.02]];
    d_ill_control: Option<[f64; 2]> = Some([0.5, 0.02]);
    d_ill_ns: Vec<u32> = vec![6, 7, 8, 9, 10, 11, 12];
    d_ill_samples: usize = 20_000;
    d_ill_oracle_n: f64 = 32.0;
    d_ill_lattice: usize = 16;
    d_ill_q: usize = 32;
    d_ill_oracle_tol: f64 = 0.01;
    d_ill_growth_tol: f64 = 0.05;
    d_ill_ratio_tol: f64 = 2.0;
    d_ill_sym: usize = 100_000;
    d_ill_sym_tol: f64 = 1e-12;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateParams {
    #[serde(default = "d_sim_data")]
    pub data: DataSpec,
    /// run the transform and group self-checks before integrating
    #[serde(default = "d_true")]
    pub preflight: bool,
    #[serde(default = "d_suite_grid")]
    pub suite_grid: GridParams,
    #[serde(default = "d_suite_tol")]
    pub suite_tol: f64,
    #[serde(default = "d_group_times")]
    pub group_times: Vec<f64>,
    #[serde(default = "d_true")]
    pub write_trajectory: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConserveParams {
    #[serde(default = "d_alphas3")]
    pub alphas: Vec<f64>,
    #[serde(default = "d_cons_grid")]
    pub grid: GridParams,
    #[serde(default = "d_cons_data")]
    pub data: DataSpec,
    #[serde(default = "d_cons_dt")]
    pub dt: f64,
    #[serde(default = "d_one")]
    pub t_end: f64,
    #[serde(default = "d_l2_tol")]
    pub l2_tol: f64,
    #[serde(default = "d_mass_tol")]
    pub mass_tol: f64,
    /// relative Hamiltonian drift of the main run
    #[serde(default = "d_ham_tol")]
    pub hamiltonian_tol: f64,
    /// the order study runs on its own (coarser) grid
    #[serde(default = "d_scal_grid")]
    pub order_grid: GridParams,
    #[serde(default = "d_order_data")]
    pub order_data: DataSpec,
    #[serde(default = "d_order_dts")]
    pub order_dts: Vec<f64>,
    #[serde(default = "d_four")]
    pub order_target: f64,
    #[serde(default = "d_order_tol")]
    pub order_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingParams {
    #[serde(default = "d_lambda")]
    pub lambda: f64,
    #[serde(default = "d_one")]
    pub alpha: f64,
    #[serde(default = "d_scal_grid")]
    pub grid: GridParams,
    #[serde(default = "d_scal_data")]
    pub data: DataSpec,
    #[serde(default = "d_scal_dt")]
    pub dt: f64,
    #[serde(default = "d_one")]
    pub t_end: f64,
    #[serde(default = "d_scal_tol")]
    pub tol: f64,
    #[serde(default = "d_true")]
    pub reflection: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelCheckParams {
    pub grid: GridParams,
    pub sigma: f64,
    pub times: Vec<f64>,
    /// asserted `(alpha, beta)` pairs
    pub cases: Vec<[f64; 2]>,
    /// pairs that are computed and reported only
    pub report_cases: Vec<[f64; 2]>,
    pub points: Vec<[f64; 2]>,
    pub rel_tol: f64,
}

impl Default for KernelCheckParams {
    fn default() -> Self {
        Self {
            grid: GridParams::new(1024, 1024, 400.0, 400.0),
            sigma: 1.0,
            times: vec![1.0, 4.0],
            cases: vec![[1.0, 0.0], [0.0, 0.0], [1.0, 0.2]],
            report_cases: vec![[-1.0, 0.0]],
            points: vec![
                [0.3, 0.2],
                [-1.0, 0.5],
                [1.0, -0.7],
                [0.0, 0.0],
                [-2.0, 1.0],
                [0.5, 1.5],
                [-0.5, -1.0],
                [1.5, 0.3],
                [-1.5, 0.0],
                [0.8, -1.5],
            ],
            rel_tol: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayParams {
    #[serde(default = "d_decay_grid")]
    pub grid: GridParams,
    #[serde(default = "d_decay_sigma")]
    pub sigma: f64,
    #[serde(default = "d_decay_cases")]
    pub cases: Vec<[f64; 2]>,
    #[serde(default = "d_decay_t")]
    pub t_range: [f64; 2],
    #[serde(default = "d_nine")]
    pub n_times: usize,
    #[serde(default = "d_pad")]
    pub pad: usize,
    #[serde(default)]
    pub strict: bool,
    #[serde(default = "d_slope_tol")]
    pub slope_tol: f64,
    #[serde(default = "d_resid_tol")]
    pub residual_tol: f64,
    #[serde(default = "d_kernel")]
    pub kernel: Option<KernelCheckParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrichartzParams {
    #[serde(default = "d_decay_grid")]
    pub grid: GridParams,
    #[serde(default = "d_decay_sigma")]
    pub sigma: f64,
    #[serde(default = "d_strich_cases")]
    pub alphas: Vec<f64>,
    #[serde(default = "d_strich_report")]
    pub report_alphas: Vec<f64>,
    #[serde(default = "d_eps05")]
    pub eps: f64,
    #[serde(default = "d_decay_t")]
    pub t_range: [f64; 2],
    #[serde(default = "d_nine")]
    pub n_times: usize,
    #[serde(default = "d_pad")]
    pub pad: usize,
    #[serde(default = "d_slope_tol")]
    pub slope_tol: f64,
    #[serde(default = "d_resid_tol")]
    pub residual_tol: f64,
    #[serde(default = "d_l2c_tol")]
    pub l2_tol: f64,
    #[serde(default = "d_true")]
    pub refined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyParams {
    #[serde(default = "d_energy_grid")]
    pub grid: GridParams,
    #[serde(default = "d_one")]
    pub alpha: f64,
    #[serde(default = "d_energy_s")]
    pub s: [f64; 2],
    #[serde(default = "d_energy_solver")]
    pub solver: SolverConfig,
    #[serde(default = "d_ten")]
    pub fit_runs: usize,
    #[serde(default = "d_ten")]
    pub holdout_runs: usize,
    #[serde(default = "d_energy_amp")]
    pub amplitude: [f64; 2],
    #[serde(default = "d_energy_sigma")]
    pub sigma: [f64; 2],
    #[serde(default = "d_spread")]
    pub spread_tol: f64,
    /// fitted constant = margin * max over the fit runs
    #[serde(default = "d_margin")]
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BonaSmithParams {
    #[serde(default = "d_bs_grid")]
    pub grid: GridParams,
    #[serde(default = "d_bs_s1")]
    pub s1: Vec<f64>,
    #[serde(default = "d_one")]
    pub s2: f64,
    /// fitting window of tau for each entry of `s1`
    #[serde(default = "d_bs_tau")]
    pub tau_ranges: Vec<[f64; 2]>,
    #[serde(default = "d_nine")]
    pub n_tau: usize,
    #[serde(default = "d_bs_rel")]
    pub slope_rel_tol: f64,
    #[serde(default = "d_bs_c")]
    pub c_tol: f64,
    #[serde(default = "d_ten")]
    pub n_fields: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowParams {
    #[serde(default = "d_flow_grid")]
    pub grid: GridParams,
    #[serde(default = "d_one")]
    pub alpha: f64,
    #[serde(default = "d_flow_solver")]
    pub solver: SolverConfig,
    #[serde(default = "d_five")]
    pub pairs: usize,
    #[serde(default = "d_energy_amp")]
    pub amplitude: [f64; 2],
    #[serde(default = "d_energy_sigma")]
    pub sigma: [f64; 2],
    /// relative size of the perturbation
    #[serde(default = "d_flow_pert")]
    pub perturbation: f64,
    #[serde(default = "d_flow_c")]
    pub c_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnParams {
    #[serde(default = "d_alphas3")]
    pub alphas: Vec<f64>,
    #[serde(default = "d_two")]
    pub p: f64,
    #[serde(default = "d_gn_grids")]
    pub sizes: [usize; 2],
    #[serde(default = "d_gn_l")]
    pub length: f64,
    #[serde(default = "d_hundred")]
    pub n_fields: usize,
    /// largest wavenumber of the random fields
    #[serde(default = "d_gn_band")]
    pub band: f64,
    #[serde(default = "d_stable3")]
    pub stability_tol: f64,
    #[serde(default = "d_fifty")]
    pub interpolation_fields: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IllposedParams {
    /// asserted `(alpha, eps)` sweeps
    #[serde(default = "d_ill_cases")]
    pub cases: Vec<[f64; 2]>,
    #[serde(default = "d_ill_control")]
    pub control: Option<[f64; 2]>,
    /// sweep over `N = 2^k`
    #[serde(default = "d_ill_ns")]
    pub log2_n: Vec<u32>,
    #[serde(default = "d_one")]
    pub t: f64,
    #[serde(default = "d_ill_samples")]
    pub chi_samples: usize,
    #[serde(default)]
    pub quadrature: F3Quadrature,
    #[serde(default = "d_ill_oracle_n")]
    pub oracle_n: f64,
    #[serde(default = "d_ill_lattice")]
    pub oracle_points: usize,
    #[serde(default = "d_ill_q")]
    pub oracle_quad_steps: usize,
    #[serde(default = "d_ill_oracle_tol")]
    pub oracle_tol: f64,
    #[serde(default = "d_ill_growth_tol")]
    pub growth_tol: f64,
    #[serde(default = "d_ill_ratio_tol")]
    pub ratio_spread_tol: f64,
    #[serde(default = "d_ill_sym")]
    pub symmetry_samples: usize,
    #[serde(default = "d_ill_sym_tol")]
    pub symmetry_tol: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_experiment_has_defaults() {
        for n in EXPERIMENTS {
            let e = Experiment::default_for(n).unwrap();
            assert_eq!(e.name(), n);
        }
        assert!(Experiment::default_for("nope").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ExperimentConfig::from_json(r#"{"experiment": {"decay": {"slope_tol": 0.1}}}"#).is_ok());
        assert!(ExperimentConfig::from_json(r#"{"experiment": {"decay": {"slop_tol": 0.1}}}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"seed": 1, "extra": 2, "experiment": {"decay": {}}}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"experiment": {"decay": {}, "energy": {}}}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"grid": {"nx": 3, "ny": 4, "lx": 1, "ly": 1}, "experiment": {"simulate": {}}}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"grid": {"nx": 8, "ny": 8, "lx": 1, "ly": 1}, "experiment": {"simulate": {}}}"#).is_ok());
        assert!(ExperimentConfig::from_json(r#"{"grid": {"nx": 8, "ny": 8, "lx": 1, "ly": 1}, "experiment": {"decay": {}}}"#).is_err());
    }
}
