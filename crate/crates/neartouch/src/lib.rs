//! Helmholtz scattering by two nearly touching disks.
//!
//! The crate solves the exterior problem for the zero-flux, flux-coupled
//! and perfectly conducting constant-potential models, evaluates the
//! closed-form singular function and disk integrals from the quasi-static
//! analysis, and runs the sweeps that measure gradient blowup rates.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod exec;
pub mod gauss;
pub mod geometry;
pub mod harness;
pub mod oracle;
pub mod singular;
pub mod solver;
pub mod specfun;
pub mod vec2;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use vec2::{CVec2, Vec2};
