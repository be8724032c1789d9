//! OFDM with index modulation (OFDM-IM) and selected mapping (SLM) PAPR
//! reduction with per-group permutation.
//!
//! The crate is split into four layers:
//!
//! - [`ofdm_im`]: system configuration, subcarrier activation patterns,
//!   block assembly, the unitary IDFT and PAPR measurement.
//! - [`slm`]: phase sequence sets (random and cyclic Hadamard), per-group
//!   permutation functions and minimum-PAPR candidate selection.
//! - [`analysis`]: correlation-coefficient statistics of random activation
//!   patterns, punctured cross-correlation spectra of phase sequences, the
//!   permutation quality metric μ and covariance estimators.
//! - [`montecarlo`]: seeded, worker-count independent CCDF estimation.

pub mod analysis;
pub mod error;
pub mod montecarlo;
pub mod ofdm_im;
pub mod slm;

pub use error::{Error, Result};
pub use num_complex::Complex64;
