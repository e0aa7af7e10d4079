//! The singular function h_k anchored at the fixed points, its boundary
//! constants, the disk potentials f_r and g_r, and integrals over the disks.

use crate::error::{Error, Result};
use crate::geometry::{Disk, DiskPair};
use crate::oracle::{self, QuadratureResult};
use crate::specfun::{fundamental_solution, fundamental_solution_gradient};
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularEval {
    pub at: Vec2,
    /// (1/2 pi) ln(|x - P1| / |x - P2|).
    pub h0: f64,
    /// hk - h0.
    pub h1: Complex64,
    pub hk: Complex64,
}

fn distances(pair: &DiskPair, x: Vec2) -> Result<(Vec2, Vec2)> {
    let fp = pair.fixed_points();
    let a = x - fp.point1();
    let b = x - fp.point2();
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::Singularity(format!(
            "h_k evaluated at a fixed point ({}, {})",
            x.x1, x.x2
        )));
    }
    Ok((a, b))
}

/// h_k(x) = Gamma_k(x - P1) - Gamma_k(x - P2) with its static part.
pub fn h_k_eval(pair: &DiskPair, k: f64, x: Vec2) -> Result<SingularEval> {
    let (a, b) = distances(pair, x)?;
    let hk = fundamental_solution(k, a)? - fundamental_solution(k, b)?;
    let h0 = (a.norm() / b.norm()).ln() / (2.0 * PI);
    Ok(SingularEval {
        at: x,
        h0,
        h1: hk - h0,
        hk,
    })
}

/// Gradient of h_k.
pub fn h_k_gradient(pair: &DiskPair, k: f64, x: Vec2) -> Result<CVec2> {
    let (a, b) = distances(pair, x)?;
    Ok(fundamental_solution_gradient(k, a)? - fundamental_solution_gradient(k, b)?)
}

/// Gradient of h_0.
pub fn h0_gradient(pair: &DiskPair, x: Vec2) -> Result<Vec2> {
    let (a, b) = distances(pair, x)?;
    Ok((a * (1.0 / a.norm_sqr()) - b * (1.0 / b.norm_sqr())) * (1.0 / (2.0 * PI)))
}

/// Exact value of h_0 on circle j, from the Apollonius ratio of the inverse
/// points: C_1 = (1/2pi) ln(r1/|p2 - c1|), C_2 = (1/2pi) ln(|p1 - c2|/r2).
pub fn boundary_constant(pair: &DiskPair, j: Disk) -> f64 {
    let d = pair.fixed_point_distances();
    match j {
        Disk::One => (pair.r1 / d.p2_c1).ln() / (2.0 * PI),
        Disk::Two => (d.p1_c2 / pair.r2).ln() / (2.0 * PI),
    }
}

/// Leading term ((-1)^j / pi) sqrt(r_{3-j} / (r_j (r1 + r2))) sqrt(eps).
pub fn boundary_constant_leading(pair: &DiskPair, j: Disk) -> f64 {
    let rj = pair.radius(j);
    let ro = pair.radius(j.other());
    -j.sign() / PI * (ro / (rj * (pair.r1 + pair.r2))).sqrt() * pair.eps.sqrt()
}

/// f_r(x) = (1/2 pi) int_{D_r(center)} ln|x - y| dy.
pub fn log_disk_potential(center: Vec2, r: f64, x: Vec2) -> f64 {
    let a = x.dist(center);
    if a <= r {
        0.25 * (a * a - r * r) + 0.5 * r * r * r.ln()
    } else {
        0.5 * r * r * a.ln()
    }
}

/// g_r(x) = (1/8 pi) int_{D_r(center)} |x - y|^2 ln|x - y| dy.
///
/// Outside the disk the biharmonic mean-value property gives
/// g_r = (r^2/8)(a^2 ln a + (r^2/2)(ln a + 1)).
pub fn biharmonic_disk_potential(center: Vec2, r: f64, x: Vec2) -> f64 {
    let a = x.dist(center);
    let (r2, a2) = (r * r, a * a);
    if a <= r {
        (a2 * a2 - r2 * r2) / 64.0 + r2 / 16.0 * (2.0 * a2 * r.ln() + a2 + r2 * r.ln())
    } else {
        r2 * a2 * a.ln() / 8.0 + r2 * r2 / 16.0 * (a.ln() + 1.0)
    }
}

/// Closed form of int_{D_j} h_0.
pub fn disk_integral_h0(pair: &DiskPair, j: Disk) -> f64 {
    let fp = pair.fixed_points();
    let c = pair.center(j);
    let r = pair.radius(j);
    log_disk_potential(c, r, fp.point1()) - log_disk_potential(c, r, fp.point2())
}

/// Leading term -2 r1 sqrt(r1 r2/(r1+r2)) sqrt(eps) of int_{D_1} h_k; for
/// disk 2 the sign flips and r1 becomes r2.
pub fn disk_integral_leading(pair: &DiskPair, j: Disk) -> f64 {
    let s = (pair.r1 * pair.r2 / (pair.r1 + pair.r2)).sqrt() * pair.eps.sqrt();
    -j.sign() * 2.0 * pair.radius(j) * s
}

/// Radius, about c_j, of the fixed point inside disk j.
fn inner_fixed_radius(pair: &DiskPair, j: Disk) -> f64 {
    let d = pair.fixed_point_distances();
    match j {
        Disk::One => d.p1_c1,
        Disk::Two => d.p2_c2,
    }
}

/// int_{D_j} h_k by adaptive polar quadrature.
pub fn disk_integral_hk(pair: &DiskPair, k: f64, j: Disk, tol: f64) -> Result<Complex64> {
    Ok(disk_integral_hk_detailed(pair, k, j, tol)?.value)
}

pub fn disk_integral_hk_detailed(
    pair: &DiskPair,
    k: f64,
    j: Disk,
    tol: f64,
) -> Result<QuadratureResult> {
    let fp = pair.fixed_points();
    let (p1, p2) = (fp.point1(), fp.point2());
    let f = |y: Vec2| {
        fundamental_solution(k, y - p1).unwrap_or_default()
            - fundamental_solution(k, y - p2).unwrap_or_default()
    };
    oracle::disk_quadrature_with_breaks(
        f,
        pair.center(j),
        pair.radius(j),
        &[inner_fixed_radius(pair, j)],
        tol,
    )
}

/// Left side of  oint_{dD_j} d_nu h_k ds + k^2 int_{D_j} h_k dx = (-1)^{j+1},
/// with nu the outward normal of D_j.
pub fn flux_identity_lhs(pair: &DiskPair, k: f64, j: Disk, tol: f64) -> Result<Complex64> {
    let c = pair.center(j);
    let r = pair.radius(j);
    let flux = oracle::boundary_quadrature_adaptive(
        |y| {
            let nu = (y - c) * (1.0 / r);
            h_k_gradient(pair, k, y)
                .map(|g| g.dot_real(nu))
                .unwrap_or_default()
        },
        c,
        r,
        0.1 * tol,
    )?;
    let area_tol = (0.5 * tol / (k * k)).min(1e-4);
    let area = disk_integral_hk(pair, k, j, area_tol)?;
    Ok(flux.value + area * (k * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{disk_quadrature_with_breaks, fd_helmholtz_residual, fd_laplacian};

    fn unit(eps: f64) -> DiskPair {
        DiskPair::new(1.0, 1.0, eps).unwrap()
    }

    #[test]
    fn h0_vanishes_on_symmetry_line() {
        let p = unit(0.01);
        for x1 in [-2.0, 0.0, 0.3, 5.0] {
            assert!(h_k_eval(&p, 0.1, Vec2::new(x1, 0.0)).unwrap().h0.abs() < 1e-16);
        }
    }

    #[test]
    fn hk_solves_helmholtz() {
        let p = unit(0.01);
        let k = 0.1;
        let r = fd_helmholtz_residual(|x| Ok(h_k_eval(&p, k, x)?.hk), k, Vec2::new(0.5, 0.0), 1e-3)
            .unwrap();
        assert!(r.norm() < 1e-6, "{r}");
    }

    #[test]
    fn h0_constant_on_circles() {
        let p = DiskPair::new(1.3, 0.4, 0.02).unwrap();
        for j in Disk::BOTH {
            let c = p.center(j);
            let r = p.radius(j);
            let vals: Vec<f64> = (0..64)
                .map(|m| {
                    let t = 2.0 * PI * m as f64 / 64.0;
                    h_k_eval(&p, 0.1, c + Vec2::new(t.cos(), t.sin()) * r)
                        .unwrap()
                        .h0
                })
                .collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(hi - lo < 1e-13);
            assert!((vals[0] - boundary_constant(&p, j)).abs() < 1e-13);
        }
    }

    #[test]
    fn boundary_constant_examples() {
        let p = unit(0.01);
        let c1 = boundary_constant(&p, Disk::One);
        assert!((c1 + 0.022_489_193_4).abs() < 1e-10);
        assert!((boundary_constant(&p, Disk::Two) + c1).abs() < 1e-16);
        let lead = boundary_constant_leading(&p, Disk::One);
        assert!((lead + 0.0225079).abs() < 1e-7);
        assert!((c1 / lead - 1.0).abs() < 1e-2);
    }

    #[test]
    fn potentials_at_center_and_edge() {
        let o = Vec2::ZERO;
        assert!((log_disk_potential(o, 1.0, o) + 0.25).abs() < 1e-16);
        assert!((biharmonic_disk_potential(o, 1.0, o) + 1.0 / 64.0).abs() < 1e-16);
        let r: f64 = 1.7;
        let edge = Vec2::new(0.0, r);
        let inside = 0.25 * 0.0 + 0.5 * r * r * r.ln();
        assert!((log_disk_potential(o, r, edge) - inside).abs() < 1e-15);
        let g_edge = (3.0 * r.powi(4) * r.ln() + r.powi(4)) / 16.0;
        assert!((biharmonic_disk_potential(o, r, edge) - g_edge).abs() < 1e-14);
        assert!((log_disk_potential(o, 0.5, Vec2::new(2.0, 0.0)) - 0.0866434).abs() < 1e-7);
    }

    #[test]
    fn potentials_match_quadrature() {
        let cases = [(0.5, 2.0), (1.0, 2.0), (1.0, 0.3), (2.0, 1.99), (0.7, 0.0)];
        for (r, a) in cases {
            let x = Vec2::new(a * 0.6, a * 0.8);
            let f = disk_quadrature_with_breaks(
                |y| Complex64::from((y - x).norm().ln() / (2.0 * PI)),
                Vec2::ZERO,
                r,
                &[a],
                1e-12,
            )
            .unwrap()
            .value
            .re;
            let g = disk_quadrature_with_breaks(
                |y| {
                    let d = (y - x).norm();
                    Complex64::from(if d == 0.0 {
                        0.0
                    } else {
                        d * d * d.ln() / (8.0 * PI)
                    })
                },
                Vec2::ZERO,
                r,
                &[a],
                1e-12,
            )
            .unwrap()
            .value
            .re;
            let fc = log_disk_potential(Vec2::ZERO, r, x);
            let gc = biharmonic_disk_potential(Vec2::ZERO, r, x);
            assert!(
                (f - fc).abs() <= 1e-8 * fc.abs(),
                "f_r r={r} a={a}: {f} vs {fc}"
            );
            assert!(
                (g - gc).abs() <= 1e-8 * gc.abs(),
                "g_r r={r} a={a}: {g} vs {gc}"
            );
        }
        // r = 1, a = 2 exterior value of g_r.
        let g = biharmonic_disk_potential(Vec2::ZERO, 1.0, Vec2::new(2.0, 0.0));
        assert!((g - (0.5 * 2f64.ln() + (2f64.ln() + 1.0) / 16.0)).abs() < 1e-15);
    }

    #[test]
    fn laplacian_chain() {
        let c = Vec2::new(0.1, -0.2);
        let r = 0.9;
        for x in [Vec2::new(0.3, 0.1), Vec2::new(1.5, -0.7)] {
            let lap = fd_laplacian(|y| biharmonic_disk_potential(c, r, y), x, 1e-3);
            let want = log_disk_potential(c, r, x) + 0.5 * r * r;
            assert!((lap - want).abs() < 1e-5, "{lap} vs {want}");
        }
    }

    #[test]
    fn disk_integrals_h0() {
        let p = unit(1e-4);
        let i1 = disk_integral_h0(&p, Disk::One);
        let i2 = disk_integral_h0(&p, Disk::Two);
        assert!(i1 < 0.0 && i2 > 0.0);
        assert!((i1 + i2).abs() < 1e-15);
        let ratio = i1 / disk_integral_leading(&p, Disk::One);
        assert!((0.95..=1.05).contains(&ratio), "{ratio}");
    }

    #[test]
    fn static_limit_of_hk_integral() {
        let p = unit(1e-2);
        let i0 = disk_integral_h0(&p, Disk::One);
        let ik = disk_integral_hk(&p, 1e-4, Disk::One, 1e-10).unwrap();
        assert!((ik.re - i0).abs() < 1e-6, "{ik} vs {i0}");
        let i2 = disk_integral_hk(&p, 0.1, Disk::Two, 1e-10).unwrap();
        let i1 = disk_integral_hk(&p, 0.1, Disk::One, 1e-10).unwrap();
        assert!((i1.re + i2.re).abs() < 1e-9);
    }
}
