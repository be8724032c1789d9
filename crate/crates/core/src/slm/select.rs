use num_complex::Complex64;

use super::{PermutationSet, PhaseSequenceSet};
use crate::ofdm_im::{papr, papr_db_from_peak, FrequencyBlock, Idft, SystemConfig, TimeSignal};
use crate::{Error, Result};

/// Outcome of one SLM selection.
#[derive(Debug, Clone, PartialEq)]
pub struct SlmResult {
    /// Index ũ of the transmitted candidate (0-based).
    pub selected_index: usize,
    pub signal: TimeSignal,
    /// PAPR in dB of every candidate.
    pub papr_db: Vec<f64>,
}

impl SlmResult {
    pub fn selected_papr_db(&self) -> f64 {
        self.papr_db[self.selected_index]
    }
}

/// Precomputed SLM transmitter: for each branch u, permute with d_u,
/// multiply by P_u and take the IDFT.
///
/// With `oversampling = L > 1` the candidates are evaluated on an `L*N`-point
/// grid by zero padding; `L = 1` is the Nyquist-rate signal.
#[derive(Debug, Clone)]
pub struct SlmEngine {
    cfg: SystemConfig,
    idft: Idft,
    scale: f64,
    /// `branches[u][i] = (d_u(i), P_u(d_u(i)))`
    branches: Vec<Vec<(usize, Complex64)>>,
}

impl SlmEngine {
    pub fn new(
        cfg: &SystemConfig,
        pss: &PhaseSequenceSet,
        perms: &PermutationSet,
        oversampling: usize,
    ) -> Result<Self> {
        if pss.len() != perms.len() {
            return Err(Error::LengthMismatch { expected: pss.len(), actual: perms.len() });
        }
        let n = cfg.n_fft();
        if pss.seq_len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: pss.seq_len() });
        }
        if perms.get(0).len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: perms.get(0).len() });
        }
        if oversampling == 0 || !oversampling.is_power_of_two() {
            return Err(Error::Config(format!(
                "oversampling factor {oversampling} must be a power of two >= 1"
            )));
        }
        let branches = pss
            .sequences()
            .iter()
            .zip(perms.perms())
            .map(|(p, d)| {
                (0..n)
                    .map(|i| {
                        let target = d.apply(i);
                        (target, p.values()[target])
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            cfg: *cfg,
            idft: Idft::new(n * oversampling),
            scale: 1.0 / (n as f64).sqrt(),
            branches,
        })
    }

    pub fn branches(&self) -> usize {
        self.branches.len()
    }

    pub fn scratch(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.idft.len()]
    }

    /// Writes the time-domain candidate of branch u into `buf`.
    pub fn candidate_into(&self, u: usize, block: &[Complex64], buf: &mut [Complex64]) {
        buf.fill(Complex64::new(0.0, 0.0));
        for (&x, &(target, phase)) in block.iter().zip(&self.branches[u]) {
            if x.re != 0.0 || x.im != 0.0 {
                buf[target] = phase * x;
            }
        }
        self.idft.process_unscaled(buf);
        for z in buf.iter_mut() {
            *z *= self.scale;
        }
    }

    pub fn candidate_signal(&self, u: usize, block: &FrequencyBlock) -> TimeSignal {
        let mut buf = self.scratch();
        self.candidate_into(u, block.values(), &mut buf);
        TimeSignal::new(buf)
    }

    /// Peak power of every candidate.
    pub fn peak_powers(&self, block: &[Complex64], buf: &mut [Complex64]) -> Vec<f64> {
        (0..self.branches.len())
            .map(|u| {
                self.candidate_into(u, block, buf);
                buf.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
            })
            .collect()
    }

    /// Smallest candidate PAPR in dB, lowest index on ties.
    pub fn min_papr_db(&self, block: &[Complex64], buf: &mut [Complex64]) -> (usize, f64) {
        let (best, peak) = argmin(&self.peak_powers(block, buf));
        (best, papr_db_from_peak(peak, &self.cfg))
    }

    pub fn select(&self, block: &FrequencyBlock) -> Result<SlmResult> {
        if block.len() != self.cfg.n_fft() {
            return Err(Error::LengthMismatch { expected: self.cfg.n_fft(), actual: block.len() });
        }
        let signals: Vec<TimeSignal> = (0..self.branches.len())
            .map(|u| self.candidate_signal(u, block))
            .collect();
        let papr_db: Vec<f64> = signals.iter().map(|s| papr(s, &self.cfg)).collect();
        let (selected_index, _) = argmin(&papr_db);
        Ok(SlmResult {
            selected_index,
            signal: signals.into_iter().nth(selected_index).expect("index in range"),
            papr_db,
        })
    }
}

fn argmin(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (u, &v) in values.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (u, v);
        }
    }
    best
}

/// Permute, rotate and transform every branch, then keep the minimum-PAPR
/// candidate.
pub fn slm_select(
    block: &FrequencyBlock,
    pss: &PhaseSequenceSet,
    perms: &PermutationSet,
    cfg: &SystemConfig,
) -> Result<SlmResult> {
    SlmEngine::new(cfg, pss, perms, 1)?.select(block)
}
