//! Sum-rate maximization for a SWIPT C-RAN with multicast microwave fronthaul
//! and cooperative mmWave access links.
//!
//! The library models a central processor that multicasts each cluster's
//! signal to its base stations over a shared fronthaul beam, while the
//! cluster's base stations jointly beamform to power-splitting users. The
//! optimizer lifts the beamformers to semidefinite matrices, convexifies the
//! coupled rate/energy constraints around a reference point, and ascends by
//! repeated conic solves. Rank-one beamformers are recovered by
//! eigendecomposition or Gaussian randomization with a scalar re-allocation
//! subproblem.
//!
//! Modules:
//! - [`config`] / [`sysmodel`]: scenario constants, seeded channel drops, and
//!   exact evaluation of every physical-layer quantity.
//! - [`conic`]: solver-agnostic conic program description with a Clarabel
//!   backend; complex-Hermitian variables enter via a real embedding.
//! - [`sca`]: the convexified subproblem builder and the iterative driver.
//! - [`rankone`]: rank-one detection, extraction, and randomization recovery.
//! - [`oracle`]: brute-force grid search and independent solution verification
//!   used by the test suites.
//! - [`harness`]: single runs, parameter sweeps, and CSV emission for the CLI.

// Force linkage of the system BLAS/LAPACK used by the conic backend.
extern crate openblas_src;

pub mod complexity;
pub mod config;
pub mod conic;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod rankone;
pub mod sca;
pub mod sysmodel;

pub use config::SystemConfig;
pub use error::{Error, Result};

/// Complex scalar used for channels and beamformers.
pub type C64 = num_complex::Complex64;
