//! Closed-form and empirical statistics behind phase sequence and
//! permutation design.

mod covariance;
mod mu;
mod rho;
mod spectrum;

pub use covariance::{analytic_covariance, cov_alt_signals, CovarianceEstimate};
pub use mu::{mu_grid, mu_metric, mu_metric_set, mu_pairwise, MuReport};
pub use rho::{
    rho_profile, var_rho_closed_form, var_rho_empirical, var_rho_empirical_many,
    CorrelationProfile,
};
pub use spectrum::{punctured_spectrum, PssSpectrum};
