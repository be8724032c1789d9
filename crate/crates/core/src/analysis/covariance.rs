use num_complex::Complex64;
use rand::Rng;

use crate::ofdm_im::{unit_roots, Constellation, FrequencyBlock, Sap, SystemConfig};
use crate::slm::{PermutationSet, PhaseSequenceSet, SlmEngine};
use crate::{Error, Result};

/// Covariance between `x_u(l)` and `x_v(m)` of two SLM branches.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    /// `mean(x_u(l) x_v*(m)) - mean(x_u(l)) mean(x_v*(m))`
    pub empirical: Complex64,
    /// Standard error of the empirical mean of `x_u(l) x_v*(m)`.
    pub std_error: f64,
    pub analytic: Complex64,
    pub trials: usize,
}

impl CovarianceEstimate {
    pub fn analytic_magnitude(&self) -> f64 {
        self.analytic.norm()
    }

    /// Distance between the estimate and the analytic value in standard
    /// errors.
    pub fn z_score(&self) -> f64 {
        (self.empirical - self.analytic).norm() / self.std_error
    }
}

/// `(1/N) Σ_{i∈I} P_u(d_u(i)) P_v*(d_v(i)) exp(j2π d_u(i) l / N) exp(-j2π d_v(i) m / N)`
/// for unit-power zero-mean symbols.
#[allow(clippy::too_many_arguments)]
pub fn analytic_covariance(
    sap: &Sap,
    pss: &PhaseSequenceSet,
    perms: &PermutationSet,
    (u, v): (usize, usize),
    l: usize,
    m: usize,
    n_fft: usize,
) -> Complex64 {
    let roots = unit_roots(n_fft);
    let (p1, p2) = (pss.get(u).values(), pss.get(v).values());
    let (d1, d2) = (perms.get(u), perms.get(v));
    sap.active()
        .iter()
        .map(|&i| {
            let (a, b) = (d1.apply(i), d2.apply(i));
            p1[a] * p2[b].conj() * roots[(a * l) % n_fft] * roots[(n_fft - (b * m) % n_fft) % n_fft]
        })
        .sum::<Complex64>()
        / n_fft as f64
}

/// Monte-Carlo covariance of two branches over `trials` blocks with the
/// fixed pattern `sap` and uniformly drawn constellation symbols.
#[allow(clippy::too_many_arguments)]
pub fn cov_alt_signals<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    sap: &Sap,
    pss: &PhaseSequenceSet,
    perms: &PermutationSet,
    pair: (usize, usize),
    l: usize,
    m: usize,
    trials: usize,
    rng: &mut R,
) -> Result<CovarianceEstimate> {
    let (u, v) = pair;
    if u >= pss.len() || v >= pss.len() {
        return Err(Error::PhaseSequence(format!(
            "branch pair ({u}, {v}) out of range for U = {}",
            pss.len()
        )));
    }
    if l >= cfg.n_fft() || m >= cfg.n_fft() {
        return Err(Error::Config(format!("sample indices ({l}, {m}) out of range")));
    }
    if trials < 2 {
        return Err(Error::Config("covariance needs at least two trials".into()));
    }
    let engine = SlmEngine::new(cfg, pss, perms, 1)?;
    let cs = Constellation::psk(cfg.mod_order())?;
    let mut block = FrequencyBlock::zeros(cfg.n_fft());
    let (mut buf_u, mut buf_v) = (engine.scratch(), engine.scratch());

    let mut products = Vec::with_capacity(trials);
    let (mut sum_a, mut sum_b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..trials {
        for &i in sap.active() {
            block.values_mut()[i] = cs.symbol(rng.random_range(0..cs.order()));
        }
        engine.candidate_into(u, block.values(), &mut buf_u);
        engine.candidate_into(v, block.values(), &mut buf_v);
        let (a, b) = (buf_u[l], buf_v[m]);
        sum_a += a;
        sum_b += b;
        products.push(a * b.conj());
    }
    let t = trials as f64;
    let mean_prod = products.iter().sum::<Complex64>() / t;
    let spread = products.iter().map(|z| (z - mean_prod).norm_sqr()).sum::<f64>() / (t - 1.0);
    Ok(CovarianceEstimate {
        empirical: mean_prod - (sum_a / t) * (sum_b / t).conj(),
        std_error: (spread / t).sqrt(),
        analytic: analytic_covariance(sap, pss, perms, pair, l, m, cfg.n_fft()),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::punctured_spectrum;
    use crate::ofdm_im::sample_random_sap;
    use crate::slm::{gen_perm_set, gen_random_pss, PermSpec, PhaseAlphabet, PhaseSequence, PssKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> SystemConfig {
        SystemConfig::new(64, 16, 2, 4).unwrap()
    }

    #[test]
    fn self_covariance_is_sample_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let sap = sample_random_sap(&cfg(), &mut rng);
        let pss = PhaseSequenceSet::new(vec![PhaseSequence::ones(64)], PssKind::Explicit).unwrap();
        let perms = PermutationSet::identity(64, 1);
        for l in [0, 5, 63] {
            let a = analytic_covariance(&sap, &pss, &perms, (0, 0), l, l, 64);
            assert!((a - Complex64::new(2.0 / 16.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn no_permutation_reduces_to_punctured_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pss = gen_random_pss(&cfg(), 2, PhaseAlphabet::Quaternary, false, &mut rng).unwrap();
        let perms = PermutationSet::identity(64, 2);
        let sap = sample_random_sap(&cfg(), &mut rng);
        let spec = punctured_spectrum(pss.get(0), pss.get(1), Some(&sap)).unwrap();
        for (l, m) in [(0, 0), (10, 3), (3, 10), (63, 1)] {
            let a = analytic_covariance(&sap, &pss, &perms, (0, 1), l, m, 64);
            assert!((a.norm() - spec.punctured[(l + 64 - m) % 64]).abs() < 1e-12);
        }
    }

    #[test]
    fn empirical_matches_analytic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pss = gen_random_pss(&cfg(), 2, PhaseAlphabet::Quaternary, false, &mut rng).unwrap();
        let perms = gen_perm_set(&cfg(), 2, &PermSpec::Random { first_identity: false }, &mut rng).unwrap();
        let sap = sample_random_sap(&cfg(), &mut rng);
        let est = cov_alt_signals(&cfg(), &sap, &pss, &perms, (0, 1), 7, 7, 20_000, &mut rng).unwrap();
        assert!(est.z_score() < 3.0, "{est:?}");
        let own = cov_alt_signals(&cfg(), &sap, &pss, &perms, (0, 0), 4, 4, 20_000, &mut rng).unwrap();
        assert!((own.analytic - Complex64::new(0.125, 0.0)).norm() < 1e-12);
        assert!(own.z_score() < 3.0, "{own:?}");
    }

    #[test]
    fn argument_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pss = gen_random_pss(&cfg(), 2, PhaseAlphabet::Binary, false, &mut rng).unwrap();
        let perms = PermutationSet::identity(64, 2);
        let sap = sample_random_sap(&cfg(), &mut rng);
        assert!(cov_alt_signals(&cfg(), &sap, &pss, &perms, (0, 2), 0, 0, 10, &mut rng).is_err());
        assert!(cov_alt_signals(&cfg(), &sap, &pss, &perms, (0, 1), 64, 0, 10, &mut rng).is_err());
        assert!(cov_alt_signals(&cfg(), &sap, &pss, &perms, (0, 1), 0, 0, 1, &mut rng).is_err());
    }
}
