//! Cylinder functions and the 2D Helmholtz fundamental solution.

mod bessel;

pub use bessel::{
    bessel_j, bessel_jy_array, bessel_y, hankel1, hankel1_01, EULER_GAMMA, MAX_ORDER,
};

use crate::error::{Error, Result};
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// One evaluated pair (J_n(x), Y_n(x)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylEval {
    pub order: usize,
    pub argument: f64,
    pub value_j: f64,
    pub value_y: f64,
}

impl CylEval {
    pub fn new(order: usize, argument: f64) -> Result<Self> {
        Ok(CylEval {
            order,
            argument,
            value_j: bessel_j(order as i64, argument)?,
            value_y: bessel_y(order as i64, argument)?,
        })
    }

    pub fn hankel(&self) -> Complex64 {
        Complex64::new(self.value_j, self.value_y)
    }
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    Ok(())
}

/// Gamma_k(x) = -(i/4) H_0^(1)(k|x|), with Delta Gamma + k^2 Gamma = delta_0.
pub fn fundamental_solution(k: f64, x: Vec2) -> Result<Complex64> {
    check_k(k)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singularity(
            "fundamental solution at the origin".into(),
        ));
    }
    let (h0, _) = hankel1_01(k * r);
    Ok(Complex64::new(0.0, -0.25) * h0)
}

/// Gradient of `fundamental_solution`: (ik/4) H_1^(1)(k|x|) x/|x|.
pub fn fundamental_solution_gradient(k: f64, x: Vec2) -> Result<CVec2> {
    check_k(k)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singularity(
            "fundamental solution at the origin".into(),
        ));
    }
    let (_, h1) = hankel1_01(k * r);
    let s = Complex64::new(0.0, 0.25 * k) * h1 / r;
    Ok(CVec2::along(s, x))
}

/// b_j = (-1)^j / (2 pi 4^j (j!)^2).
pub fn expansion_b(j: usize) -> f64 {
    let mut v = 1.0 / (2.0 * PI);
    for m in 1..=j {
        v *= -1.0 / (4.0 * (m * m) as f64);
    }
    v
}

/// c_j = gamma - ln 2 - (pi/2) i - H_j.
pub fn expansion_c(j: usize) -> Complex64 {
    let h: f64 = (1..=j).map(|m| 1.0 / m as f64).sum();
    Complex64::new(EULER_GAMMA - LN_2 - h, -0.5 * PI)
}

/// Small-argument expansion of Gamma_k through order (k|x|)^{2J}.
pub fn gamma_k_expansion(k: f64, x: Vec2, terms: usize) -> Result<Complex64> {
    check_k(k)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singularity("expansion at the origin".into()));
    }
    let z = k * r;
    if z >= 1.0 {
        return Err(Error::OutOfAsymptoticRange { z });
    }
    let two_pi = 2.0 * PI;
    let mut v = Complex64::new((r.ln() + (0.5 * k).ln() + EULER_GAMMA) / two_pi, -0.25);
    let lz = z.ln();
    let z2 = z * z;
    let mut zp = 1.0;
    for j in 1..=terms {
        zp *= z2;
        v += expansion_b(j) * (lz + expansion_c(j)) * zp;
    }
    Ok(v)
}

/// Relative defect of J_{n+1} Y_n - J_n Y_{n+1} = 2 / (pi x).
pub fn wronskian_defect(n: usize, x: f64) -> Result<f64> {
    let (j, y) = bessel_jy_array(n + 1, x)?;
    let want = 2.0 / (PI * x);
    Ok(((j[n + 1] * y[n] - j[n] * y[n + 1]) - want).abs() / want)
}

/// Relative defects of C_{n-1} + C_{n+1} = (2n/x) C_n for J and Y, n >= 1.
pub fn recurrence_defect(n: usize, x: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("recurrence needs n >= 1".into()));
    }
    let (j, y) = bessel_jy_array(n + 1, x)?;
    let rel = |c: &[f64]| {
        let lhs = c[n - 1] + c[n + 1];
        let rhs = 2.0 * n as f64 / x * c[n];
        let scale = c[n - 1].abs().max(c[n + 1].abs()).max(rhs.abs());
        (lhs - rhs).abs() / scale
    };
    Ok((rel(&j), rel(&y)))
}

/// Relative defect of (H_n)' = H_{n-1} - (n/x) H_n against a central
/// difference with step h (n >= 1).
pub fn hankel_derivative_defect(n: usize, x: f64, h: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "derivative identity needs n >= 1".into(),
        ));
    }
    let hn = |t: f64| hankel1(n as i64, t);
    let fd = (hn(x + h)? - hn(x - h)?) / (2.0 * h);
    let exact = hankel1(n as i64 - 1, x)? - hn(x)? * (n as f64 / x);
    Ok((fd - exact).norm() / exact.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_symmetry() {
        let x = Vec2::new(0.3, -0.7);
        let a = fundamental_solution(0.8, x).unwrap();
        let b = fundamental_solution(0.8, -x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn logarithmic_head_limit() {
        let k = 0.3_f64;
        let lim = Complex64::new(((0.5 * k).ln() + EULER_GAMMA) / (2.0 * PI), -0.25);
        let x = Vec2::new(1e-7, 0.0);
        let g = fundamental_solution(k, x).unwrap() - x.norm().ln() / (2.0 * PI);
        assert!((g - lim).norm() < 1e-12);
    }

    #[test]
    fn first_coefficients() {
        assert!((expansion_b(1) + 1.0 / (8.0 * PI)).abs() < 1e-17);
        let c1 = expansion_c(1);
        assert!((c1.re - (EULER_GAMMA - LN_2 - 1.0)).abs() < 1e-15);
        assert!((c1.im + 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn expansion_accuracy() {
        let k = 1.0;
        let x = Vec2::new(0.05, 0.0);
        let e = gamma_k_expansion(k, x, 2).unwrap();
        let f = fundamental_solution(k, x).unwrap();
        assert!((e - f).norm() < 1e-10);
        let head = gamma_k_expansion(k, x, 0).unwrap();
        let want = Complex64::new(
            (0.05f64.ln() + (0.5f64).ln() + EULER_GAMMA) / (2.0 * PI),
            -0.25,
        );
        assert!((head - want).norm() < 1e-15);
        assert!(matches!(
            gamma_k_expansion(1.0, Vec2::new(1.0, 0.0), 3),
            Err(Error::OutOfAsymptoticRange { .. })
        ));
    }

    #[test]
    fn singular_at_origin() {
        assert!(matches!(
            fundamental_solution(1.0, Vec2::ZERO),
            Err(Error::Singularity(_))
        ));
    }
}
