//! Experiment harness: configuration, sweeps, reports and verification suites.

pub mod config;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::{ExperimentConfig, Format};
pub use report::{emit_report, Report, CSV_HEADER};
pub use sweep::{predict_sweep, run_sweep, Measured, SweepRecord};
pub use verify::{verify, Check, Suite, VerifyReport};
