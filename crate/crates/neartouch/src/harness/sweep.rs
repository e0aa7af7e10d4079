//! Sweep execution: one solve, measurement and prediction per grid point.

use super::config::ExperimentConfig;
use crate::asymptotics::{predicted_lambda_gap, Prediction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{Disk, DiskPair};
use crate::solver::{
    assemble_and_solve, max_gap_gradient, BoundaryModel, IncidentField, Solution, SolverOptions,
};
use crate::vec2::Vec2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Quantities measured on a solved configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub n_nodes: usize,
    pub boundary_residual: f64,
    pub condition_estimate: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda_gap_abs: f64,
    pub flux: [Complex64; 2],
    pub max_grad: f64,
    pub max_grad_at: Vec2,
    pub max_grad_on_segment: bool,
    pub recip_defect: Complex64,
    /// 1 + |u^i(P1)| + |u^i(P2)|, the scale of the reciprocity tolerance.
    pub recip_scale: f64,
    pub warnings: Vec<String>,
}

impl Measured {
    pub fn from_solution(sol: &Solution) -> Self {
        let gap = max_gap_gradient(sol);
        let fp = sol.pair.fixed_points();
        let finite = |v: f64| if v.is_finite() { v } else { f64::MAX };
        Measured {
            n_nodes: sol.n_nodes(),
            boundary_residual: finite(sol.boundary_residual),
            condition_estimate: finite(sol.condition_estimate),
            lambda1: sol.lambda1(),
            lambda2: sol.lambda2(),
            lambda_gap_abs: (sol.lambda2() - sol.lambda1()).norm(),
            flux: [sol.boundary_flux(Disk::One), sol.boundary_flux(Disk::Two)],
            max_grad: gap.value,
            max_grad_at: gap.location,
            max_grad_on_segment: gap.on_segment,
            recip_defect: sol.reciprocity_defect(),
            recip_scale: 1.0
                + sol.incident.value(fp.point1()).norm()
                + sol.incident.value(fp.point2()).norm(),
            warnings: sol.warnings.clone(),
        }
    }

    /// |defect| / (1 + |u^i(P1)| + |u^i(P2)|).
    pub fn relative_recip_defect(&self) -> f64 {
        self.recip_defect.norm() / self.recip_scale
    }
}

/// One row of an experiment table.  Every record carries enough to re-run it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: usize,
    pub pair: DiskPair,
    pub k: f64,
    pub model: BoundaryModel,
    pub incident: IncidentField,
    pub solver: SolverOptions,
    pub measured: Option<Measured>,
    pub predicted: Prediction,
    /// |lambda2 - lambda1| / |predicted lambda gap|.
    pub ratio_lambda: Option<f64>,
    /// max_grad / predicted gradient scale.
    pub ratio_grad: Option<f64>,
    /// Error cause when the solve failed or missed its residual target.
    pub error: Option<String>,
}

fn ratio(a: f64, b: f64) -> Option<f64> {
    (b > 0.0 && a.is_finite() && b.is_finite()).then(|| a / b)
}

impl SweepRecord {
    /// Solves and measures one configuration.  Failures are kept in-band.
    pub fn run(
        index: usize,
        pair: DiskPair,
        model: BoundaryModel,
        incident: IncidentField,
        solver: SolverOptions,
    ) -> Self {
        let k = incident.k;
        let (measured, error) = match assemble_and_solve(&pair, k, model, &incident, &solver) {
            Ok(sol) => (Some(Measured::from_solution(&sol)), None),
            Err(Error::NotConverged { best, .. }) => {
                let msg = format!(
                    "solver stopped at residual {:e} above target {:e}",
                    best.boundary_residual, solver.target_residual
                );
                (Some(Measured::from_solution(&best)), Some(msg))
            }
            Err(e) => (None, Some(e.to_string())),
        };
        Self::assemble(index, pair, model, incident, solver, measured, error)
    }

    /// Prediction-only record.
    pub fn predict(
        index: usize,
        pair: DiskPair,
        model: BoundaryModel,
        incident: IncidentField,
        solver: SolverOptions,
    ) -> Self {
        Self::assemble(index, pair, model, incident, solver, None, None)
    }

    fn assemble(
        index: usize,
        pair: DiskPair,
        model: BoundaryModel,
        incident: IncidentField,
        solver: SolverOptions,
        measured: Option<Measured>,
        error: Option<String>,
    ) -> Self {
        let predicted = predicted_lambda_gap(&pair, incident.k, &incident);
        let (ratio_lambda, ratio_grad) = match &measured {
            Some(m) => (
                ratio(m.lambda_gap_abs, predicted.lambda_gap.norm()),
                ratio(m.max_grad, predicted.gradient_scale),
            ),
            None => (None, None),
        };
        SweepRecord {
            index,
            pair,
            k: incident.k,
            model,
            incident,
            solver,
            measured,
            predicted,
            ratio_lambda,
            ratio_grad,
            error,
        }
    }

    /// Re-runs the record from its own fields.
    pub fn rerun(&self) -> Self {
        Self::run(
            self.index,
            self.pair,
            self.model,
            self.incident,
            self.solver,
        )
    }

    pub fn succeeded(&self) -> bool {
        self.error.is_none() && self.measured.is_some()
    }
}

fn build_points(config: &ExperimentConfig) -> Result<Vec<(usize, DiskPair, IncidentField)>> {
    config
        .grid()
        .into_iter()
        .map(|p| {
            Ok((
                p.index,
                config.pair.build(p.eps)?,
                config.incident.build(p.k)?,
            ))
        })
        .collect()
}

/// Runs every grid point; records come back in grid order.
pub fn run_sweep(config: &ExperimentConfig, exec: Execution) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let points = build_points(config)?;
    Ok(exec.map(&points, |(i, pair, inc)| {
        SweepRecord::run(*i, *pair, config.model, *inc, config.solver)
    }))
}

/// Predictions only, without solving.
pub fn predict_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    Ok(build_points(config)?
        .into_iter()
        .map(|(i, pair, inc)| SweepRecord::predict(i, pair, config.model, inc, config.solver))
        .collect())
}
