//! Brute-force reference numerics: adaptive disk quadrature, trapezoid
//! boundary quadrature and central finite differences.
//!
//! Nothing here knows about the closed forms it is used to check.

use crate::error::{Error, Result};
use crate::gauss::GL20;
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub estimated_error: f64,
    pub evaluations: usize,
}

const MAX_BISECTIONS: usize = 40;
const MAX_EVALUATIONS: usize = 4_000_000;
const MIN_ANGULAR: usize = 64;
const MAX_ANGULAR: usize = 1 << 12;

/// Central-difference step (machine epsilon)^{1/3} times `scale`.
pub fn default_fd_step(scale: f64) -> f64 {
    f64::EPSILON.cbrt() * scale
}

/// Adaptive Gauss-Legendre integration of a complex function of one
/// variable on [a, b]: a panel is accepted once it agrees with the sum of its
/// two halves to within its share of `tol`.
pub fn adaptive_gauss<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    adaptive_gauss_split(f, a, b, 1, tol)
}

/// As `adaptive_gauss`, starting from `pieces` equal panels.
pub fn adaptive_gauss_split<F>(
    mut f: F,
    a: f64,
    b: f64,
    pieces: usize,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    let mut evals = 0usize;
    let mut rule = |lo: f64, hi: f64, evals: &mut usize| -> Complex64 {
        let g = &*GL20;
        let h = 0.5 * (hi - lo);
        let m = 0.5 * (hi + lo);
        let mut s = Complex64::new(0.0, 0.0);
        for (&t, &w) in g.nodes.iter().zip(&g.weights) {
            s += f(m + h * t) * w;
        }
        *evals += g.len();
        s * h
    };
    let pieces = pieces.max(1);
    let step = (b - a) / pieces as f64;
    let mut stack = Vec::with_capacity(64);
    for i in (0..pieces).rev() {
        let lo = a + step * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + step };
        let v = rule(lo, hi, &mut evals);
        stack.push((lo, hi, v, 0usize));
    }
    let scale: f64 = stack.iter().map(|p| p.2.norm()).sum();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut exhausted = false;
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, val, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule(lo, mid, &mut evals);
        let right = rule(mid, hi, &mut evals);
        let diff = (left + right - val).norm();
        let frac = (hi - lo).abs() / width;
        let share = (tol * frac)
            .max(1e-15 * scale)
            .max(1e-14 * (left + right).norm());
        let out_of_budget = evals > MAX_EVALUATIONS;
        if diff <= share || depth >= MAX_BISECTIONS || out_of_budget {
            if diff > share {
                exhausted = true;
            }
            total += left + right;
            err += diff;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    let res = QuadratureResult {
        value: total,
        estimated_error: err,
        evaluations: evals,
    };
    if exhausted && err > tol {
        return Err(Error::Accuracy {
            best: total,
            estimate: err,
            tol,
        });
    }
    Ok(res)
}

/// Trapezoid rule over the circle |x - center| = r at `n` equispaced angles.
pub fn boundary_quadrature<F>(f: F, center: Vec2, r: f64, n: usize) -> Complex64
where
    F: Fn(Vec2) -> Complex64,
{
    assert!(n > 0, "need at least one point");
    let h = 2.0 * PI / n as f64;
    let s: Complex64 = (0..n)
        .map(|m| {
            let t = h * m as f64;
            f(center + Vec2::new(t.cos(), t.sin()) * r)
        })
        .sum();
    s * (h * r)
}

/// Periodic trapezoid of `g(theta)` over [0, 2 pi), doubling the point count
/// until two successive values agree within `tol`.
fn adaptive_trapezoid<G>(g: G, tol: f64, evals: &mut usize) -> (Complex64, f64, bool)
where
    G: Fn(f64) -> Complex64,
{
    let (v, d, ok) = trapezoid_doubling(&g, tol, evals);
    if ok {
        return (v, d, ok);
    }
    // Sharply peaked integrand (singular point close to this radius):
    // bisection concentrates the nodes where the trapezoid grid cannot.
    match adaptive_gauss_split(&g, 0.0, 2.0 * PI, 16, tol) {
        Ok(r) => {
            *evals += r.evaluations;
            (r.value, r.estimated_error, true)
        }
        Err(_) => (v, d, false),
    }
}

fn trapezoid_doubling<G>(g: &G, tol: f64, evals: &mut usize) -> (Complex64, f64, bool)
where
    G: Fn(f64) -> Complex64,
{
    let mut n = MIN_ANGULAR;
    let mut h = 2.0 * PI / n as f64;
    let mut sum: Complex64 = (0..n).map(|m| g(h * m as f64)).sum();
    *evals += n;
    let mut prev = sum * h;
    loop {
        // Add the midpoints of the current grid.
        let mids: Complex64 = (0..n).map(|m| g(h * (m as f64 + 0.5))).sum();
        *evals += n;
        sum += mids;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        if diff <= tol.max(1e-14 * cur.norm()) {
            return (cur, diff, true);
        }
        if n >= MAX_ANGULAR {
            return (cur, diff, false);
        }
        prev = cur;
    }
}

/// Adaptive trapezoid quadrature over a circle.
pub fn boundary_quadrature_adaptive<F>(
    f: F,
    center: Vec2,
    r: f64,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(Vec2) -> Complex64,
{
    let mut evals = 0;
    let (v, d, ok) = adaptive_trapezoid(
        |t| f(center + Vec2::new(t.cos(), t.sin()) * r) * r,
        tol,
        &mut evals,
    );
    if !ok {
        return Err(Error::Accuracy {
            best: v,
            estimate: d,
            tol,
        });
    }
    Ok(QuadratureResult {
        value: v,
        estimated_error: d,
        evaluations: evals,
    })
}

/// Integral of `f` over the disk of radius `r` about `center`.
pub fn disk_quadrature<F>(f: F, center: Vec2, r: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Vec2) -> Complex64,
{
    disk_quadrature_with_breaks(f, center, r, &[], tol)
}

/// Polar disk quadrature with extra radial breakpoints where the integrand
/// has a point singularity (|x_sing - center|).
///
/// Radially: composite adaptive Gauss-Legendre between breakpoints.
/// Angularly: adaptive periodic trapezoid at every radial node.
pub fn disk_quadrature_with_breaks<F>(
    f: F,
    center: Vec2,
    r: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(Vec2) -> Complex64,
{
    if !(r > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "disk quadrature needs r, tol > 0 (r={r}, tol={tol})"
        )));
    }
    let mut pts: Vec<f64> = vec![0.0, r];
    pts.extend(breaks.iter().copied().filter(|&b| b > 0.0 && b < r));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut evals = 0usize;
    let mut angular_failed = false;
    // An angular error e at every radius perturbs the area integral by at
    // most e r^2 / 2.
    let angular_tol = 0.5 * tol / (r * r);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let pieces = pts.len() - 1;
    for w in pts.windows(2) {
        let radial = |rho: f64| -> Complex64 {
            let (v, _, ok) = adaptive_trapezoid(
                |t| f(center + Vec2::new(t.cos(), t.sin()) * rho),
                angular_tol,
                &mut evals,
            );
            if !ok {
                angular_failed = true;
            }
            v * rho
        };
        let res = adaptive_gauss(radial, w[0], w[1], tol / pieces as f64)?;
        total += res.value;
        err += res.estimated_error;
    }
    let out = QuadratureResult {
        value: total,
        estimated_error: err,
        evaluations: evals,
    };
    if angular_failed || err > tol {
        return Err(Error::Accuracy {
            best: total,
            estimate: err,
            tol,
        });
    }
    Ok(out)
}

/// For radially symmetric integrands: 2 pi  int_0^r rho f(rho) d rho.
pub fn radial_quadrature<F>(f: F, r: f64, breaks: &[f64], tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    let mut pts: Vec<f64> = vec![0.0, r];
    pts.extend(breaks.iter().copied().filter(|&b| b > 0.0 && b < r));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut total = QuadratureResult {
        value: Complex64::new(0.0, 0.0),
        estimated_error: 0.0,
        evaluations: 0,
    };
    for w in pts.windows(2) {
        let res = adaptive_gauss(|rho| f(rho) * (2.0 * PI * rho), w[0], w[1], tol)?;
        total.value += res.value;
        total.estimated_error += res.estimated_error;
        total.evaluations += res.evaluations;
    }
    Ok(total)
}

fn stencil<F>(f: &F, x: Vec2) -> Result<Complex64>
where
    F: Fn(Vec2) -> Result<Complex64>,
{
    f(x).map_err(|e| match e {
        Error::Domain(m) => Error::Domain(m),
        other => Error::Domain(format!(
            "stencil point ({}, {}) not admissible: {other}",
            x.x1, x.x2
        )),
    })
}

/// Central-difference gradient with step `h`.
pub fn fd_gradient<F>(f: F, x: Vec2, h: f64) -> Result<CVec2>
where
    F: Fn(Vec2) -> Result<Complex64>,
{
    let e1 = Vec2::new(h, 0.0);
    let e2 = Vec2::new(0.0, h);
    let d1 = (stencil(&f, x + e1)? - stencil(&f, x - e1)?) / (2.0 * h);
    let d2 = (stencil(&f, x + e2)? - stencil(&f, x - e2)?) / (2.0 * h);
    Ok(CVec2::new(d1, d2))
}

/// Five-point Laplacian plus k^2 f.
pub fn fd_helmholtz_residual<F>(f: F, k: f64, x: Vec2, h: f64) -> Result<Complex64>
where
    F: Fn(Vec2) -> Result<Complex64>,
{
    let e1 = Vec2::new(h, 0.0);
    let e2 = Vec2::new(0.0, h);
    let c = stencil(&f, x)?;
    let lap =
        (stencil(&f, x + e1)? + stencil(&f, x - e1)? + stencil(&f, x + e2)? + stencil(&f, x - e2)?
            - c * 4.0)
            / (h * h);
    Ok(lap + c * (k * k))
}

/// Five-point Laplacian of a real function.
pub fn fd_laplacian<F>(f: F, x: Vec2, h: f64) -> f64
where
    F: Fn(Vec2) -> f64,
{
    let e1 = Vec2::new(h, 0.0);
    let e2 = Vec2::new(0.0, h);
    (f(x + e1) + f(x - e1) + f(x + e2) + f(x - e2) - 4.0 * f(x)) / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn area_of_disk() {
        let q = disk_quadrature(|_| c(1.0), Vec2::new(0.3, -1.0), 2.0, 1e-12).unwrap();
        assert!((q.value.re - 4.0 * PI).abs() < 1e-11);
        assert!(q.value.im == 0.0);
    }

    #[test]
    fn log_at_center() {
        let ctr = Vec2::new(1.0, 2.0);
        let q =
            disk_quadrature(|y| c((y - ctr).norm().ln() / (2.0 * PI)), ctr, 1.0, 1e-11).unwrap();
        assert!((q.value.re + 0.25).abs() < 1e-10, "{}", q.value);
        let rad = radial_quadrature(|t| c(t.ln() / (2.0 * PI)), 1.0, &[], 1e-12).unwrap();
        assert!((rad.value.re + 0.25).abs() < 1e-12);
        assert!((q.value - rad.value).norm() < 1e-9);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let q = disk_quadrature(|y| c(y.x1 * (1.0 + y.x2 * y.x2)), Vec2::ZERO, 1.5, 1e-12).unwrap();
        assert!(q.value.norm() < 1e-12);
    }

    #[test]
    fn off_center_log_singularity() {
        // (1/2pi) int_{D_1(0)} ln|x - y| dy at |x| = 0.4 equals (a^2 - 1)/4.
        let x = Vec2::new(0.4 * 0.6, 0.4 * 0.8);
        let q = disk_quadrature_with_breaks(
            |y| c((y - x).norm().ln() / (2.0 * PI)),
            Vec2::ZERO,
            1.0,
            &[0.4],
            1e-11,
        )
        .unwrap();
        assert!(
            (q.value.re - (0.16 - 1.0) / 4.0).abs() < 1e-10,
            "{}",
            q.value
        );
    }

    #[test]
    fn circle_rules() {
        let ctr = Vec2::new(0.5, 0.5);
        let len = boundary_quadrature(|_| c(1.0), ctr, 3.0, 17);
        assert!((len.re - 6.0 * PI).abs() < 1e-13);
        let cos = boundary_quadrature(|y| c((y.x1 - ctr.x1) / 3.0), ctr, 3.0, 32);
        assert!(cos.norm() < 1e-13);
        let f = |y: Vec2| Complex64::new(0.0, y.x2).exp() / (2.0 + y.x1);
        let a = boundary_quadrature(f, ctr, 0.7, 64);
        let b = boundary_quadrature(f, ctr, 0.7, 128);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn finite_differences() {
        let lin = |y: Vec2| Ok(c(3.0 * y.x1 - 2.0 * y.x2 + 1.0));
        let g = fd_gradient(lin, Vec2::new(0.2, 0.1), 1e-3).unwrap();
        assert!((g.x1 - 3.0).norm() < 1e-10 && (g.x2 + 2.0).norm() < 1e-10);
        let sq = |y: Vec2| Ok(c(y.norm_sqr()));
        let g = fd_gradient(sq, Vec2::new(1.0, 2.0), 1e-4).unwrap();
        assert!((g.x1 - 2.0).norm() < 1e-8 && (g.x2 - 4.0).norm() < 1e-8);
        let k = 0.1;
        let wave = |y: Vec2| Ok(Complex64::new(0.0, k * y.x2).exp());
        let r = fd_helmholtz_residual(wave, k, Vec2::new(0.3, 0.7), 1e-4).unwrap();
        assert!(r.norm() < 1e-6);
    }

    #[test]
    fn stencil_outside_domain() {
        let f = |y: Vec2| {
            if y.x1 > 1.0 {
                Err(Error::Domain("outside".into()))
            } else {
                Ok(c(1.0))
            }
        };
        assert!(matches!(
            fd_gradient(f, Vec2::new(1.0, 0.0), 1e-3),
            Err(Error::Domain(_))
        ));
    }
}
