use num_complex::Complex64;
use rand::Rng;

use crate::ofdm_im::{sample_random_sap, unit_roots, Sap, SystemConfig};

/// Correlation coefficient ρ_I(m) between x(l) and x(l+m) for a fixed
/// activation pattern, `m = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationProfile {
    pub rho: Vec<Complex64>,
}

/// `ρ(m) = (1/K) Σ_{i∈I} exp(-j2π i m / N)`.
pub fn rho_profile(sap: &Sap, cfg: &SystemConfig) -> CorrelationProfile {
    let roots = unit_roots(cfg.n_fft());
    CorrelationProfile {
        rho: (0..cfg.n_fft()).map(|m| rho_at(sap, m, &roots)).collect(),
    }
}

fn rho_at(sap: &Sap, m: usize, roots: &[Complex64]) -> Complex64 {
    let n = roots.len();
    let sum: Complex64 = sap
        .active()
        .iter()
        .map(|&i| roots[(n - (i * m) % n) % n])
        .sum();
    sum / sap.len() as f64
}

/// Variance of ρ_I(m) over uniformly random activation patterns:
/// `(1/N) (n/(n-1)) (n/k - 1)` unless `m ≡ 0 (mod n)`, where ρ is constant.
pub fn var_rho_closed_form(cfg: &SystemConfig, m: usize) -> f64 {
    if m.is_multiple_of(cfg.group_size()) {
        return 0.0;
    }
    let (big_n, n, k) = (cfg.n_fft() as f64, cfg.group_size() as f64, cfg.active() as f64);
    (1.0 / big_n) * (n / (n - 1.0)) * (n / k - 1.0)
}

/// Population variance `E|ρ|² - |Eρ|²` of ρ_I(m) over `trials` uniform
/// pattern draws.
pub fn var_rho_empirical<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    m: usize,
    trials: usize,
    rng: &mut R,
) -> f64 {
    var_rho_empirical_many(cfg, &[m], trials, rng)[0]
}

/// Same as [`var_rho_empirical`] for several lags evaluated on one shared
/// set of pattern draws.
pub fn var_rho_empirical_many<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    lags: &[usize],
    trials: usize,
    rng: &mut R,
) -> Vec<f64> {
    assert!(trials >= 1, "at least one trial is required");
    let roots = unit_roots(cfg.n_fft());
    let mut samples = vec![Vec::with_capacity(trials); lags.len()];
    for _ in 0..trials {
        let sap = sample_random_sap(cfg, rng);
        for (slot, &m) in lags.iter().enumerate() {
            samples[slot].push(rho_at(&sap, m % cfg.n_fft(), &roots));
        }
    }
    samples
        .iter()
        .map(|zs| {
            // two-pass: centre first, then average |z - mean|^2
            let mean = zs.iter().sum::<Complex64>() / trials as f64;
            zs.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / trials as f64
        })
        .collect()
}
