//! Experiment configuration files (TOML).
//!
//! ```toml
//! eps = { from = 1e-2, to = 1e-4, points = 9 }   # or a number
//! k = 0.05                                        # or a grid
//!
//! [pair]
//! r1 = 1.0
//! r2 = 1.0            # or "eps" to tie the second radius to the half-gap
//!
//! [model]
//! kind = "zero_flux"  # "flux_coupled" (with tau) or "pec"
//!
//! [incident]
//! kind = "plane_wave" # "sinusoid" or "bessel_mode"
//! direction = [0.0, 1.0]
//! amplitude = 1.0     # complex values as [re, im]
//!
//! [solver]            # optional, see SolverOptions
//! target_residual = 1e-8
//!
//! [output]            # optional
//! path = "sweep.csv"
//! format = "csv"      # or "structured"
//! ```
//!
//! Unknown keys are rejected.

use crate::error::{Error, Result};
use crate::geometry::DiskPair;
use crate::solver::{BoundaryModel, IncidentField, SolverOptions};
use crate::vec2::Vec2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// A fixed value or a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Value(f64),
    Grid(Grid),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let m = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / m;
                if i == 0 {
                    return self.from;
                }
                if i == self.points - 1 {
                    return self.to;
                }
                match self.spacing {
                    Spacing::Log => (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp(),
                    Spacing::Linear => self.from + t * (self.to - self.from),
                }
            })
            .collect()
    }
}

impl Param {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Param::Value(v) => vec![*v],
            Param::Grid(g) => g.values(),
        }
    }

    pub fn is_grid(&self) -> bool {
        matches!(self, Param::Grid(g) if g.points > 1)
    }

    fn validate(&self, path: &str) -> Result<()> {
        let bad = |message: String| Error::Config {
            path: path.to_string(),
            message,
        };
        match *self {
            Param::Value(v) if !(v > 0.0 && v.is_finite()) => {
                Err(bad(format!("must be positive, got {v}")))
            }
            Param::Grid(g) => {
                if g.points == 0 {
                    return Err(bad("grid needs at least one point".into()));
                }
                if !(g.from > 0.0 && g.to > 0.0 && g.from.is_finite() && g.to.is_finite()) {
                    return Err(bad("grid ends must be positive".into()));
                }
                if g.points > 1 && g.from == g.to {
                    return Err(bad("grid must be strictly monotone".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Second radius: a length, or the string "eps" to follow the half-gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Radius {
    Value(f64),
    Tied(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub r1: f64,
    pub r2: Radius,
}

impl PairSpec {
    pub fn build(&self, eps: f64) -> Result<DiskPair> {
        let r2 = match &self.r2 {
            Radius::Value(v) => *v,
            Radius::Tied(s) if s == "eps" => eps,
            Radius::Tied(s) => {
                return Err(Error::Config {
                    path: "pair.r2".into(),
                    message: format!("expected a number or \"eps\", got {s:?}"),
                })
            }
        };
        DiskPair::new(self.r1, r2, eps)
    }
}

/// Complex number as a real or an [re, im] pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl Default for ComplexSpec {
    fn default() -> Self {
        ComplexSpec::Real(1.0)
    }
}

impl From<ComplexSpec> for Complex64 {
    fn from(c: ComplexSpec) -> Self {
        match c {
            ComplexSpec::Real(r) => Complex64::new(r, 0.0),
            ComplexSpec::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn one() -> f64 {
    1.0
}

/// Incident field without its wavenumber, which comes from the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IncidentSpec {
    PlaneWave {
        direction: [f64; 2],
        #[serde(default)]
        amplitude: ComplexSpec,
    },
    BesselMode {
        n: i64,
        #[serde(default)]
        a_n: ComplexSpec,
    },
    Sinusoid {
        #[serde(default = "one")]
        amplitude: f64,
        direction: [f64; 2],
    },
}

impl IncidentSpec {
    pub fn build(&self, k: f64) -> Result<IncidentField> {
        let v = |d: [f64; 2]| Vec2::new(d[0], d[1]);
        match *self {
            IncidentSpec::PlaneWave {
                direction,
                amplitude,
            } => IncidentField::plane_wave(k, v(direction), amplitude.into()),
            IncidentSpec::BesselMode { n, a_n } => IncidentField::bessel_mode(k, n, a_n.into()),
            IncidentSpec::Sinusoid {
                amplitude,
                direction,
            } => IncidentField::sinusoid(k, amplitude, v(direction)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub eps: Param,
    pub k: Param,
    pub pair: PairSpec,
    pub model: BoundaryModel,
    pub incident: IncidentSpec,
    #[serde(default)]
    pub solver: SolverOptions,
    #[serde(default)]
    pub output: OutputSpec,
}

/// One grid point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    pub eps: f64,
    pub k: f64,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::Deserializer::new(text);
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Config {
                path: if path.is_empty() { ".".into() } else { path },
                message: e.into_inner().message().trim().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }

    pub fn validate(&self) -> Result<()> {
        self.eps.validate("eps")?;
        self.k.validate("k")?;
        if self.eps.is_grid() && self.k.is_grid() {
            return Err(Error::Config {
                path: "k".into(),
                message: "only one of eps and k may be swept per run".into(),
            });
        }
        self.model.validate().map_err(|e| Error::Config {
            path: "model".into(),
            message: e.to_string(),
        })?;
        for (i, p) in self.grid().iter().enumerate() {
            self.pair.build(p.eps).map_err(|e| Error::Config {
                path: format!("pair (grid point {i})"),
                message: e.to_string(),
            })?;
            self.incident.build(p.k).map_err(|e| Error::Config {
                path: "incident".into(),
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for eps in self.eps.values() {
            for k in self.k.values() {
                out.push(GridPoint {
                    index: out.len(),
                    eps,
                    k,
                });
            }
        }
        out
    }
}
