//! Seeded Monte-Carlo estimation of Pr{PAPR > γ}.
//!
//! Trials are split into fixed-size batches and batch `b` draws from ChaCha
//! stream `b` of the plan seed, so exceedance counts do not depend on how
//! many workers run the batches.

mod curve;
mod runner;
mod scheme;

pub use curve::{
    compare_curves, format_sig9, papr_at_ccdf, wilson_interval, CcdfCurve, CurveComparison,
    Dominance,
};
pub use runner::{run_ccdf, run_ccdf_with_workers, BATCH_TRIALS};
pub use scheme::{
    gamma_grid, Mode, PermSource, PlanEcho, PssSource, SapSource, SchemeDescriptor, TrialPlan,
};
