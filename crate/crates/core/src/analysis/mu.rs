//! Permutation quality metric μ.
//!
//! For a pair (d1, d2) the grid
//! `S(l, m) = |Σ_{i'} exp(j2π (i' m - d1(d2⁻¹(i')) l) / N)|`, `l, m in 0..N`,
//! measures how strongly the activation patterns of the two branches stay
//! correlated. μ is the population variance of the N² grid magnitudes. No
//! normalisation is applied, so the identity pair gives `μ = N - 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ofdm_im::{unit_roots, Idft, SystemConfig};
use crate::slm::{PermutationFunction, PermutationSet};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuReport {
    pub mu: f64,
    /// Mean grid magnitude.
    pub mean: f64,
    pub rows: usize,
    pub cols: usize,
    /// Branch indices (u, v) of the pair.
    pub pair: (usize, usize),
    pub normalization: String,
}

/// Magnitude grid `grid[l][m]` for the pair (d1, d2).
///
/// Row l is the unscaled inverse DFT of `exp(-j2π d1(d2⁻¹(i')) l / N)`.
pub fn mu_grid(d1: &PermutationFunction, d2: &PermutationFunction) -> Result<Vec<Vec<f64>>> {
    let n = d1.len();
    if d2.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: d2.len() });
    }
    let relative = d1.compose(&d2.inverse());
    let roots = unit_roots(n);
    let idft = Idft::new(n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    Ok((0..n)
        .map(|l| {
            for (i, z) in buf.iter_mut().enumerate() {
                *z = roots[(n - (relative.apply(i) * l) % n) % n];
            }
            idft.process_unscaled(&mut buf);
            buf.iter().map(|z| z.norm()).collect()
        })
        .collect())
}

pub fn mu_metric(
    d1: &PermutationFunction,
    d2: &PermutationFunction,
    cfg: &SystemConfig,
) -> Result<MuReport> {
    if d1.len() != cfg.n_fft() {
        return Err(Error::LengthMismatch { expected: cfg.n_fft(), actual: d1.len() });
    }
    let grid = mu_grid(d1, d2)?;
    let count = (grid.len() * grid.len()) as f64;
    let mean = grid.iter().flatten().sum::<f64>() / count;
    let mu = grid.iter().flatten().map(|v| (v - mean).powi(2)).sum::<f64>() / count;
    Ok(MuReport {
        mu,
        mean,
        rows: grid.len(),
        cols: grid.len(),
        pair: (0, 1),
        normalization: "unnormalized double-sum magnitude, population variance".into(),
    })
}

/// μ for every unordered pair u < v of the set.
pub fn mu_pairwise(perms: &PermutationSet, cfg: &SystemConfig) -> Result<Vec<MuReport>> {
    if perms.len() < 2 {
        return Err(Error::Permutation(format!(
            "μ needs at least two permutation functions, got {}",
            perms.len()
        )));
    }
    let mut out = Vec::new();
    for u in 0..perms.len() {
        for v in u + 1..perms.len() {
            let mut report = mu_metric(perms.get(u), perms.get(v), cfg)?;
            report.pair = (u, v);
            out.push(report);
        }
    }
    Ok(out)
}

/// Mean of the pairwise μ values.
pub fn mu_metric_set(perms: &PermutationSet, cfg: &SystemConfig) -> Result<f64> {
    let pairs = mu_pairwise(perms, cfg)?;
    Ok(pairs.iter().map(|r| r.mu).sum::<f64>() / pairs.len() as f64)
}
