//! Exterior Helmholtz solver for the two-disk problem.
//!
//! The total field is represented as
//!
//!   u = u^i + sum_l lambda_l G_l - S[psi],
//!
//! where S is the single layer with kernel (i/4) H_0(k|x - y|), psi is the
//! exterior normal derivative of u on the circles, and
//!
//!   G_l(x) = -(i pi k r_l / 2) J_1(k r_l) H_0(k |x - c_l|)
//!
//! is the exterior field produced by the constant boundary value on circle l.
//! Collocating u = lambda_j at the Gauss nodes of graded panels gives a
//! first-kind Nystrom system, bordered by the two constraint rows of the
//! boundary model.  The scattered field is radiating by construction and its
//! multipole coefficients in both local frames are read off the density.

pub mod gap;
pub mod incident;
pub mod layer;
pub mod linalg;
pub mod panels;

pub use gap::{max_gap_gradient, GapMaximum};
pub use incident::{IncidentField, IncidentKind};
pub use panels::Discretization;

use crate::error::{Error, Result};
use crate::gauss::{GL16, PANEL_ORDER};
use crate::geometry::{Disk, DiskPair};
use crate::singular::{h_k_eval, h_k_gradient};
use crate::specfun::{bessel_j, hankel1_01, MAX_ORDER};
use crate::vec2::{CVec2, Vec2};
use layer::{panel_weights, CPair, SingleLayer, SingleLayerGradient};
use linalg::{Lu, Matrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundaryModel {
    /// u = lambda_j on dD_j with zero total flux through each circle.
    ZeroFlux,
    /// lambda_j = -tau / (k^2 pi r_j^2) times the flux through dD_j.
    FluxCoupled { tau: f64 },
    /// u = 0 on both circles.
    Pec,
}

impl BoundaryModel {
    pub fn validate(&self) -> Result<()> {
        if let BoundaryModel::FluxCoupled { tau } = *self {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "tau must be positive, got {tau}"
                )));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &'static str {
        match self {
            BoundaryModel::ZeroFlux => "zero_flux",
            BoundaryModel::FluxCoupled { .. } => "flux_coupled",
            BoundaryModel::Pec => "pec",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    /// Stop refining once sup |u - lambda_j| on the check grid is below this.
    pub target_residual: f64,
    /// Panel length bound relative to the distance to the nearest fixed point.
    pub initial_grading: f64,
    /// Number of grading halvings tried after the first solve.
    pub max_refinements: usize,
    /// Refinement stops before a discretisation exceeds this many nodes.
    pub max_nodes: usize,
    /// Condition estimates above this attach a warning.
    pub condition_warning: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            target_residual: 1e-8,
            initial_grading: 1.0,
            max_refinements: 3,
            max_nodes: 4096,
            condition_warning: 1e12,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if !(self.target_residual > 0.0) || !(self.initial_grading > 0.0) || self.max_nodes == 0 {
            return Err(Error::InvalidArgument(format!(
                "invalid solver options {self:?}"
            )));
        }
        Ok(())
    }
}

/// A solved configuration.  Immutable once built and safe to share.
#[derive(Debug, Clone)]
pub struct Solution {
    pub pair: DiskPair,
    pub k: f64,
    pub model: BoundaryModel,
    pub incident: IncidentField,
    pub disc: Discretization,
    /// Exterior normal derivative of u at the nodes.
    pub density: Vec<Complex64>,
    pub lambda: [Complex64; 2],
    /// sup |u - lambda_j| over off-node check points on both circles.
    pub boundary_residual: f64,
    pub condition_estimate: f64,
    pub warnings: Vec<String>,
    /// Radiating coefficients A_n, n = -order..=order, in the frames of c1, c2.
    pub coeffs: [Vec<Complex64>; 2],
    pub order: usize,
    /// Prefactors -(i pi k r_l / 2) J_1(k r_l) of G_l.
    g: [Complex64; 2],
}

fn constant_field_prefactor(k: f64, r: f64) -> Complex64 {
    Complex64::new(0.0, -0.5 * PI * k * r) * bessel_j(1, k * r).unwrap_or(0.0)
}

/// Solves with grading refinement until the residual target is met.
pub fn assemble_and_solve(
    pair: &DiskPair,
    k: f64,
    model: BoundaryModel,
    incident: &IncidentField,
    opts: &SolverOptions,
) -> Result<Solution> {
    opts.validate()?;
    let mut grading = opts.initial_grading;
    let mut best: Option<Solution> = None;
    for attempt in 0..=opts.max_refinements {
        let disc = Discretization::build(pair, grading);
        if attempt > 0 && disc.len() > opts.max_nodes {
            break;
        }
        let sol = solve_on(disc, k, model, incident, opts)?;
        if sol.boundary_residual <= opts.target_residual {
            return Ok(sol);
        }
        if best
            .as_ref()
            .map_or(true, |b| sol.boundary_residual < b.boundary_residual)
        {
            best = Some(sol);
        }
        grading *= 0.5;
    }
    let best = best.expect("at least one solve is attempted");
    Err(Error::NotConverged {
        residual: best.boundary_residual,
        target: opts.target_residual,
        best: Box::new(best),
    })
}

/// Solves on a fixed discretisation.
pub fn solve_on(
    disc: Discretization,
    k: f64,
    model: BoundaryModel,
    incident: &IncidentField,
    opts: &SolverOptions,
) -> Result<Solution> {
    model.validate()?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if incident.k != k {
        return Err(Error::InvalidArgument(format!(
            "incident wavenumber {} differs from solve wavenumber {k}",
            incident.k
        )));
    }
    let pair = disc.pair;
    let g = [
        constant_field_prefactor(k, pair.r1),
        constant_field_prefactor(k, pair.r2),
    ];
    let n = disc.len();
    let with_lambda = model != BoundaryModel::Pec;
    let m = if with_lambda { n + 2 } else { n };
    let mut a = Matrix::zeros(m);
    let mut rhs = vec![ZERO; m];
    for (i, node) in disc.nodes.iter().enumerate() {
        let kern = SingleLayer { k, x: node.pos };
        let row = a.row_mut(i);
        for p in &disc.panels {
            let w = panel_weights(&disc, p, node.pos, &kern);
            row[p.first..p.first + PANEL_ORDER].copy_from_slice(&w);
        }
        if with_lambda {
            for l in Disk::BOTH {
                let rho = node.pos.dist(pair.center(l));
                let own = if l == node.disk { ONE } else { ZERO };
                row[n + l.index()] = own - g[l.index()] * hankel1_01(k * rho).0;
            }
        }
        rhs[i] = incident.value(node.pos);
    }
    if with_lambda {
        for j in Disk::BOTH {
            let r = n + j.index();
            for (i, node) in disc.nodes.iter().enumerate() {
                if node.disk == j {
                    a.set(r, i, Complex64::from(node.weight));
                }
            }
            if let BoundaryModel::FluxCoupled { tau } = model {
                let rj = pair.radius(j);
                a.set(r, r, Complex64::from(k * k * PI * rj * rj / tau));
            }
        }
    }
    let anorm = a.norm1();
    let lu = Lu::factor(a)?;
    let x = lu.solve(&rhs);
    let condition_estimate = anorm * lu.inverse_norm1_estimate();
    let density = x[..n].to_vec();
    let lambda = if with_lambda {
        [x[n], x[n + 1]]
    } else {
        [ZERO; 2]
    };
    let mut sol = Solution {
        pair,
        k,
        model,
        incident: *incident,
        disc,
        density,
        lambda,
        boundary_residual: 0.0,
        condition_estimate,
        warnings: Vec::new(),
        coeffs: [Vec::new(), Vec::new()],
        order: 0,
        g,
    };
    if condition_estimate > opts.condition_warning {
        sol.warnings.push(format!(
            "ill-conditioned system (estimate {condition_estimate:.3e})"
        ));
    }
    if pair.below_eps_floor() {
        sol.warnings.push(format!(
            "eps = {:e} is below the conditioning floor",
            pair.eps
        ));
    }
    sol.boundary_residual = sol.measure_residual();
    sol.compute_multipoles();
    Ok(sol)
}

impl Solution {
    pub fn lambda1(&self) -> Complex64 {
        self.lambda[0]
    }

    pub fn lambda2(&self) -> Complex64 {
        self.lambda[1]
    }

    /// Number of boundary nodes.
    pub fn n_nodes(&self) -> usize {
        self.disc.len()
    }

    fn layer_sum<K>(&self, x: Vec2, kern: &K) -> K::Out
    where
        K: layer::Kernel,
        K::Out: std::ops::Mul<Complex64, Output = K::Out>,
    {
        let mut acc = K::Out::default();
        for p in &self.disc.panels {
            let w = panel_weights(&self.disc, p, x, kern);
            for (m, wm) in w.iter().enumerate() {
                acc += *wm * self.density[p.first + m];
            }
        }
        acc
    }

    fn constant_fields(&self, x: Vec2) -> Complex64 {
        let mut s = ZERO;
        if self.model != BoundaryModel::Pec {
            for l in Disk::BOTH {
                let rho = x.dist(self.pair.center(l));
                s += self.lambda[l.index()] * self.g[l.index()] * hankel1_01(self.k * rho).0;
            }
        }
        s
    }

    fn check_outside(&self, x: Vec2, closed: bool) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("non-finite evaluation point".into()));
        }
        for j in Disk::BOTH {
            let d = x.dist(self.pair.center(j));
            let r = self.pair.radius(j);
            let inside = if closed {
                d <= r
            } else {
                d < r * (1.0 - 1e-14)
            };
            if inside {
                return Err(Error::Domain(format!(
                    "({}, {}) lies inside disk {}",
                    x.x1,
                    x.x2,
                    j.index() + 1
                )));
            }
        }
        Ok(())
    }

    /// Total field at an exterior point (boundary points give the exterior limit).
    pub fn field(&self, x: Vec2) -> Result<Complex64> {
        self.check_outside(x, false)?;
        let s = self.layer_sum(x, &SingleLayer { k: self.k, x });
        Ok(self.incident.value(x) + self.constant_fields(x) - s)
    }

    /// Total field from the truncated multipole series.  Near-touching
    /// densities need high orders on the circles themselves, so this is
    /// accurate only at some distance from both disks.
    pub fn field_multipole(&self, x: Vec2) -> Result<Complex64> {
        self.check_outside(x, true)?;
        let mut u = self.incident.value(x);
        for j in Disk::BOTH {
            let v = x - self.pair.center(j);
            let rho = v.norm();
            let th = v.x2.atan2(v.x1);
            let h = hankel_sequence(self.order, self.k * rho);
            let c = &self.coeffs[j.index()];
            let mid = self.order;
            u += c[mid] * h[0];
            for (n, hn) in h.iter().enumerate().skip(1) {
                if !(hn.re.is_finite() && hn.im.is_finite()) {
                    break;
                }
                let e = Complex64::from_polar(1.0, n as f64 * th);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                u += *hn * (c[mid + n] * e + c[mid - n] * sign * e.conj());
            }
        }
        Ok(u)
    }

    /// Gradient at a point strictly outside both closed disks.
    pub fn gradient(&self, x: Vec2) -> Result<CVec2> {
        self.check_outside(x, true)?;
        let s: CVec2 = self
            .layer_sum(x, &SingleLayerGradient { k: self.k, x })
            .into();
        let mut grad = self.incident.gradient(x) - s;
        if self.model != BoundaryModel::Pec {
            for l in Disk::BOTH {
                let v = x - self.pair.center(l);
                let rho = v.norm();
                let (_, h1) = hankel1_01(self.k * rho);
                let coef = self.lambda[l.index()] * self.g[l.index()] * h1 * (-self.k / rho);
                grad = grad + CVec2::along(coef, v);
            }
        }
        Ok(grad)
    }

    /// Exterior normal derivative of u on circle j at parameter phi.
    pub fn boundary_density(&self, j: Disk, phi: f64) -> Complex64 {
        self.disc
            .interpolate(j, phi, &self.density)
            .unwrap_or_default()
    }

    /// Gradient on circle j: u is constant there, so grad u = psi nu.
    pub fn boundary_gradient(&self, j: Disk, phi: f64) -> CVec2 {
        CVec2::along(
            self.boundary_density(j, phi),
            self.disc.circle(j).normal(phi),
        )
    }

    /// oint_{dD_j} d_nu u ds with nu the outward normal of D_j.
    pub fn boundary_flux(&self, j: Disk) -> Complex64 {
        self.disc
            .nodes
            .iter()
            .zip(&self.density)
            .filter(|(n, _)| n.disk == j)
            .map(|(n, d)| d * n.weight)
            .sum()
    }

    /// Midpoint-rule flux of the interpolated density on `points` equal
    /// angles, an independent check of `boundary_flux`.
    pub fn boundary_flux_trapezoid(&self, j: Disk, points: usize) -> Complex64 {
        let c = self.disc.circle(j);
        let h = 2.0 * PI / points as f64;
        (0..points)
            .map(|q| {
                let phi = -PI + (q as f64 + 0.5) * h;
                self.boundary_density(j, phi) * (h * c.radius)
            })
            .sum()
    }

    /// LHS - RHS of the h_k potential identity
    ///   sum_j oint (d_nu h_k u - d_nu u h_k) ds = u^i(P1) - u^i(P2),
    /// with nu the outward normal of each disk.
    pub fn reciprocity_defect(&self) -> Complex64 {
        let (lhs, rhs) = self.reciprocity_sides();
        lhs - rhs
    }

    /// Both sides of the potential identity.
    pub fn reciprocity_sides(&self) -> (Complex64, Complex64) {
        let mut lhs = ZERO;
        for (node, psi) in self.disc.nodes.iter().zip(&self.density) {
            let lam = self.lambda[node.disk.index()];
            let h = h_k_eval(&self.pair, self.k, node.pos)
                .map(|e| e.hk)
                .unwrap_or_default();
            let dh = h_k_gradient(&self.pair, self.k, node.pos)
                .map(|g| g.dot_real(node.normal))
                .unwrap_or_default();
            lhs += (dh * lam - psi * h) * node.weight;
        }
        let fp = self.pair.fixed_points();
        let rhs = self.incident.value(fp.point1()) - self.incident.value(fp.point2());
        (lhs, rhs)
    }

    /// A_n in the frame of c_j, n in -order..=order (zero outside).
    pub fn coefficient(&self, j: Disk, n: i64) -> Complex64 {
        let o = self.order as i64;
        if n.abs() > o {
            return ZERO;
        }
        self.coeffs[j.index()][(n + o) as usize]
    }

    /// sup |u - lambda_j| over the midpoints between consecutive Gauss nodes
    /// and the panel endpoints.
    fn measure_residual(&self) -> f64 {
        let g = &*GL16;
        let mut ts: Vec<f64> = vec![-1.0];
        for q in 0..PANEL_ORDER - 1 {
            ts.push(0.5 * (g.nodes[q] + g.nodes[q + 1]));
        }
        let mut worst: f64 = 0.0;
        for p in &self.disc.panels {
            let c = self.disc.circle(p.disk);
            for &t in &ts {
                let x = c.point(p.phi_of(t));
                let s = self.layer_sum(x, &SingleLayer { k: self.k, x });
                let u = self.incident.value(x) + self.constant_fields(x) - s;
                let d = (u - self.lambda[p.disk.index()]).norm();
                worst = worst.max(if d.is_finite() { d } else { f64::INFINITY });
            }
        }
        worst
    }

    fn compute_multipoles(&mut self) {
        let cap = MAX_ORDER;
        let mut moments: [Vec<Complex64>; 2] = [vec![ZERO; 2 * cap + 1], vec![ZERO; 2 * cap + 1]];
        for (node, psi) in self.disc.nodes.iter().zip(&self.density) {
            let v = node.pos - self.pair.center(node.disk);
            let th = v.x2.atan2(v.x1);
            let mom = &mut moments[node.disk.index()];
            let base = psi * node.weight;
            let step = Complex64::from_polar(1.0, -th);
            let mut e = ONE;
            mom[cap] += base;
            for n in 1..=cap {
                e *= step;
                mom[cap + n] += base * e;
                mom[cap - n] += base * e.conj();
            }
        }
        // Each term of the series on circle j has size about |M_n| / (4 pi n).
        let mut order = 0;
        for mom in &moments {
            let top = mom.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let floor = 1e-14 * top.max(f64::MIN_POSITIVE);
            let mut need = cap;
            while need > 0 {
                let n = need;
                let size = mom[cap + n].norm().max(mom[cap - n].norm()) / n as f64;
                if size > floor {
                    break;
                }
                need -= 1;
            }
            order = order.max(need);
        }
        self.order = order;
        for j in Disk::BOTH {
            let r = self.pair.radius(j);
            let kr = self.k * r;
            let mom = &moments[j.index()];
            let mut c = vec![ZERO; 2 * order + 1];
            for n in 0..=order {
                let jn = bessel_j(n as i64, kr).unwrap_or(0.0);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let q = Complex64::new(0.0, -0.25) * jn;
                c[order + n] = q * mom[cap + n];
                c[order - n] = q * sign * mom[cap - n];
            }
            c[order] += self.lambda[j.index()] * self.g[j.index()];
            self.coeffs[j.index()] = c;
        }
    }
}

/// H_0..=H_n at x by forward recurrence (stable for the Y part; the J part
/// is negligible wherever its recurrence loses accuracy).
fn hankel_sequence(n: usize, x: f64) -> Vec<Complex64> {
    let (h0, h1) = hankel1_01(x);
    let mut h = vec![h0];
    if n >= 1 {
        h.push(h1);
    }
    for m in 1..n {
        let next = h[m] * (2.0 * m as f64 / x) - h[m - 1];
        h.push(next);
    }
    h
}

impl std::ops::Mul<Complex64> for CPair {
    type Output = CPair;
    fn mul(self, s: Complex64) -> CPair {
        CPair(self.0 * s, self.1 * s)
    }
}
