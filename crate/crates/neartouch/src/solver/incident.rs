//! Entire incident fields with exact values and gradients.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, MAX_ORDER};
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IncidentKind {
    /// amplitude * exp(i k d.x)
    PlaneWave {
        direction: Vec2,
        amplitude: Complex64,
    },
    /// a_n J_n(k |x|) exp(i n theta)
    BesselMode { n: i64, a_n: Complex64 },
    /// (a / k) sin(k d.x)
    Sinusoid { amplitude: f64, direction: Vec2 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncidentField {
    pub kind: IncidentKind,
    pub k: f64,
}

fn check_direction(d: Vec2) -> Result<()> {
    if !d.is_finite() || (d.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "direction ({}, {}) is not a unit vector",
            d.x1, d.x2
        )));
    }
    Ok(())
}

/// J_m for any integer m, via J_{-m} = (-1)^m J_m.
fn signed_j(m: i64, x: f64) -> Result<f64> {
    let v = bessel_j(m.abs(), x)?;
    Ok(if m < 0 && m % 2 != 0 { -v } else { v })
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

impl IncidentField {
    pub fn new(kind: IncidentKind, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        match kind {
            IncidentKind::PlaneWave { direction, .. }
            | IncidentKind::Sinusoid { direction, .. } => check_direction(direction)?,
            IncidentKind::BesselMode { n, .. } => {
                if n.unsigned_abs() as usize >= MAX_ORDER {
                    return Err(Error::Capability(format!(
                        "Bessel mode order {n} too large"
                    )));
                }
            }
        }
        Ok(IncidentField { kind, k })
    }

    pub fn plane_wave(k: f64, direction: Vec2, amplitude: Complex64) -> Result<Self> {
        Self::new(
            IncidentKind::PlaneWave {
                direction,
                amplitude,
            },
            k,
        )
    }

    pub fn sinusoid(k: f64, amplitude: f64, direction: Vec2) -> Result<Self> {
        Self::new(
            IncidentKind::Sinusoid {
                amplitude,
                direction,
            },
            k,
        )
    }

    pub fn bessel_mode(k: f64, n: i64, a_n: Complex64) -> Result<Self> {
        Self::new(IncidentKind::BesselMode { n, a_n }, k)
    }

    /// Short label used in reports.
    pub fn label(&self) -> &'static str {
        match self.kind {
            IncidentKind::PlaneWave { .. } => "plane_wave",
            IncidentKind::BesselMode { .. } => "bessel_mode",
            IncidentKind::Sinusoid { .. } => "sinusoid",
        }
    }

    /// True when the field vanishes identically.
    pub fn is_zero(&self) -> bool {
        match self.kind {
            IncidentKind::PlaneWave { amplitude, .. } => amplitude == Complex64::new(0.0, 0.0),
            IncidentKind::BesselMode { a_n, .. } => a_n == Complex64::new(0.0, 0.0),
            IncidentKind::Sinusoid { amplitude, .. } => amplitude == 0.0,
        }
    }

    pub fn value(&self, x: Vec2) -> Complex64 {
        let k = self.k;
        match self.kind {
            IncidentKind::PlaneWave {
                direction,
                amplitude,
            } => amplitude * cis(k * direction.dot(x)),
            IncidentKind::Sinusoid {
                amplitude,
                direction,
            } => Complex64::from(amplitude / k * (k * direction.dot(x)).sin()),
            IncidentKind::BesselMode { n, a_n } => {
                let rho = x.norm();
                if rho == 0.0 {
                    return if n == 0 {
                        a_n
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                }
                let th = x.x2.atan2(x.x1);
                a_n * signed_j(n, k * rho).unwrap_or(0.0) * cis(n as f64 * th)
            }
        }
    }

    pub fn gradient(&self, x: Vec2) -> CVec2 {
        let k = self.k;
        match self.kind {
            IncidentKind::PlaneWave {
                direction,
                amplitude,
            } => {
                let s = amplitude * cis(k * direction.dot(x)) * Complex64::new(0.0, k);
                CVec2::along(s, direction)
            }
            IncidentKind::Sinusoid {
                amplitude,
                direction,
            } => CVec2::along(
                Complex64::from(amplitude * (k * direction.dot(x)).cos()),
                direction,
            ),
            IncidentKind::BesselMode { n, a_n } => {
                // (d1 + i d2) Z_n e^{in th} = -k Z_{n+1} e^{i(n+1)th}
                // (d1 - i d2) Z_n e^{in th} =  k Z_{n-1} e^{i(n-1)th}
                let rho = x.norm();
                let (up, down) = if rho == 0.0 {
                    let one = |m: i64| {
                        if m == 0 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    };
                    (one(n + 1), one(n - 1))
                } else {
                    let th = x.x2.atan2(x.x1);
                    (
                        signed_j(n + 1, k * rho).unwrap_or(0.0) * cis((n + 1) as f64 * th),
                        signed_j(n - 1, k * rho).unwrap_or(0.0) * cis((n - 1) as f64 * th),
                    )
                };
                let plus = -up * k;
                let minus = down * k;
                let d1 = (plus + minus) * 0.5;
                let d2 = (plus - minus) * Complex64::new(0.0, -0.5);
                CVec2::new(a_n * d1, a_n * d2)
            }
        }
    }
}
