//! Closed-form predictors for the potential gap and the gap gradient, the
//! singular comparator profile in the gap, and log-log power-law fits.
//!
//! Sign convention: the predicted `lambda_gap` is the leading term
//! 4 sqrt(r1 r2 / (r1 + r2)) sqrt(eps) d_{x2} u^i(0).  With disk 1 above the
//! gap and nu the outward normal of the disks, the solver finds
//! lambda_1 - lambda_2 equal to this term, so measured and predicted values
//! are compared by magnitude.

use crate::error::{Error, Result};
use crate::geometry::{Disk, DiskPair, RegimeReport};
use crate::solver::IncidentField;
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub lambda_gap: Complex64,
    pub gradient_scale: f64,
    pub regime: RegimeReport,
    /// 4 sqrt(r1 r2 / (r1 + r2)) in the blowup regime, 1 for the order-only
    /// small-disk estimate eps d_{x2} u^i.
    pub leading_constant: f64,
    /// Set when only the order of magnitude is predicted.
    pub order_only: bool,
    /// d_{x2} u^i at the origin.
    pub gap_derivative: Complex64,
    /// min and max of |d_{x2} u^i| over the gap segment {(0, t): |t| <= eps},
    /// bracketing the unknown evaluation point of the order-only estimate.
    pub derivative_bracket: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub log_intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Exact d_{x2} u^i(0).
pub fn incident_gap_derivative(incident: &IncidentField) -> Complex64 {
    incident.gradient(Vec2::ZERO).x2
}

/// Leading-order potential gap and gradient scale.
pub fn predicted_lambda_gap(pair: &DiskPair, k: f64, incident: &IncidentField) -> Prediction {
    let regime = pair.regime_classify(k);
    let d = incident_gap_derivative(incident);
    let ends = [
        incident.gradient(Vec2::new(0.0, -pair.eps)).x2.norm(),
        incident.gradient(Vec2::new(0.0, pair.eps)).x2.norm(),
        d.norm(),
    ];
    let bracket = [
        ends.iter().copied().fold(f64::INFINITY, f64::min),
        ends.iter().copied().fold(0.0, f64::max),
    ];
    let (leading_constant, lambda_gap, order_only) = if regime.blowup_regime {
        let c = 4.0 * (pair.r1 * pair.r2 / (pair.r1 + pair.r2)).sqrt();
        (c, d * (c * pair.eps.sqrt()), false)
    } else {
        (1.0, d * pair.eps, true)
    };
    Prediction {
        lambda_gap,
        gradient_scale: lambda_gap.norm() / (2.0 * pair.eps),
        regime,
        leading_constant,
        order_only,
        gap_derivative: d,
        derivative_bracket: bracket,
    }
}

/// Value of the comparator (lambda1 - lambda2) p1(x) + lambda2 in the gap.
pub fn gap_profile_value(
    pair: &DiskPair,
    lambda1: Complex64,
    lambda2: Complex64,
    x: Vec2,
) -> Result<Complex64> {
    let (p1, _) = profile_weight(pair, x)?;
    Ok((lambda1 - lambda2) * p1 + lambda2)
}

/// Gradient of the comparator (lambda1 - lambda2) p1(x) + lambda2 with
/// p1 = (x2 + eps + g2(x1)) / delta(x1).
pub fn gap_profile_prediction(
    pair: &DiskPair,
    lambda1: Complex64,
    lambda2: Complex64,
    x: Vec2,
) -> Result<CVec2> {
    let (_, grad) = profile_weight(pair, x)?;
    let dl = lambda1 - lambda2;
    Ok(CVec2::new(dl * grad.x1, dl * grad.x2))
}

/// p1 and its gradient, checking that x lies in the gap neighbourhood.
fn profile_weight(pair: &DiskPair, x: Vec2) -> Result<(f64, Vec2)> {
    let r0 = 0.5 * pair.min_radius();
    if !(x.x1.abs() < r0) {
        return Err(Error::Domain(format!(
            "|x1| = {} is outside the gap neighbourhood (r0 = {r0})",
            x.x1.abs()
        )));
    }
    let g1 = pair.arc_height(Disk::One, x.x1)?;
    let g2 = pair.arc_height(Disk::Two, x.x1)?;
    let (top, bottom) = (pair.eps + g1, -(pair.eps + g2));
    if !(x.x2 >= bottom && x.x2 <= top) {
        return Err(Error::Domain(format!(
            "({}, {}) is not between the two arcs",
            x.x1, x.x2
        )));
    }
    let delta = pair.gap_width(x.x1)?;
    let num = x.x2 + pair.eps + g2;
    let d_delta = pair.gap_width_slope(x.x1)?;
    let d_g2 = pair.arc_slope(Disk::Two, x.x1)?;
    let p1 = num / delta;
    let grad = Vec2::new(
        (d_g2 * delta - num * d_delta) / (delta * delta),
        1.0 / delta,
    );
    Ok((p1, grad))
}

/// Unweighted least squares of log value against log parameter.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    if let Some(&(p, v)) = samples
        .iter()
        .find(|(p, v)| !(*p > 0.0 && *v > 0.0 && p.is_finite() && v.is_finite()))
    {
        return Err(Error::Domain(format!(
            "power-law fit needs positive samples, got ({p}, {v})"
        )));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain(
            "power-law fit needs distinct parameters".into(),
        ));
    }
    let exponent = sxy / sxx;
    let log_intercept = my - exponent * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - log_intercept - exponent * x).powi(2))
        .sum();
    let r_squared = if syy <= 1e-300 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(PowerLawFit {
        exponent,
        log_intercept,
        r_squared,
        n_points: samples.len(),
    })
}
