use num_complex::Complex64;

use crate::ofdm_im::{Idft, Sap};
use crate::slm::PhaseSequence;
use crate::{Error, Result};

/// Cross-correlation spectrum of a phase sequence pair,
/// `(1/N) |Σ_{i∈I} P1(i) P2*(i) exp(j2π i m / N)|` for `m = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PssSpectrum {
    /// Spectrum summed over the participating indices only.
    pub punctured: Vec<f64>,
    /// Spectrum summed over all N indices.
    pub full: Vec<f64>,
    /// `max_m full[m]`
    pub c: f64,
    /// Number of participating indices K (N when not punctured).
    pub participating: usize,
}

impl PssSpectrum {
    pub fn max_punctured(&self) -> f64 {
        self.punctured.iter().copied().fold(0.0, f64::max)
    }

    /// Triangle-inequality bound `c + (N - K)/N` on every punctured
    /// magnitude; equals `c + 1 - k/n` for an OFDM-IM pattern.
    pub fn bound(&self) -> f64 {
        let n = self.full.len() as f64;
        self.c + (n - self.participating as f64) / n
    }
}

/// Full and punctured spectra of `p1 ⊗ p2*`. With `sap = None` the
/// punctured spectrum equals the full one.
pub fn punctured_spectrum(
    p1: &PhaseSequence,
    p2: &PhaseSequence,
    sap: Option<&Sap>,
) -> Result<PssSpectrum> {
    let n = p1.len();
    if p2.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: p2.len() });
    }
    if !n.is_power_of_two() {
        return Err(Error::Config(format!("sequence length {n} is not a power of two")));
    }
    let product: Vec<Complex64> = p1
        .values()
        .iter()
        .zip(p2.values())
        .map(|(a, b)| a * b.conj())
        .collect();
    let idft = Idft::new(n);
    let magnitudes = |input: Vec<Complex64>| -> Vec<f64> {
        let mut buf = input;
        idft.process_unscaled(&mut buf);
        buf.iter().map(|z| z.norm() / n as f64).collect()
    };

    let full = magnitudes(product.clone());
    let (punctured, participating) = match sap {
        None => (full.clone(), n),
        Some(sap) => {
            if let Some(&bad) = sap.active().iter().find(|&&i| i >= n) {
                return Err(Error::Sap(format!("index {bad} out of range 0..{n}")));
            }
            let mut masked = vec![Complex64::new(0.0, 0.0); n];
            for &i in sap.active() {
                masked[i] = product[i];
            }
            (magnitudes(masked), sap.len())
        }
    };
    let c = full.iter().copied().fold(0.0, f64::max);
    Ok(PssSpectrum { punctured, full, c, participating })
}
