use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::mls::{bipolar, gen_mls, MlsSpec};
use crate::ofdm_im::SystemConfig;
use crate::{Error, Result};

/// Unit-modulus sequence `P(i) = exp(j φ(i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSequence {
    values: Vec<Complex64>,
}

const UNIT_TOL: f64 = 1e-12;

impl PhaseSequence {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| (z.norm() - 1.0).abs() > UNIT_TOL) {
            return Err(Error::PhaseSequence(format!(
                "entry {i} has modulus {}",
                values[i].norm()
            )));
        }
        Ok(Self { values })
    }

    /// Phases in radians. Multiples of π/2 map to exact ±1 / ±j.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        if let Some(p) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::PhaseSequence(format!("non-finite phase {p}")));
        }
        Ok(Self {
            values: phases.iter().map(|&p| unit_from_phase(p)).collect(),
        })
    }

    pub fn ones(len: usize) -> Self {
        Self {
            values: vec![Complex64::new(1.0, 0.0); len],
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Phases in `[0, 2π)`.
    pub fn phases(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|z| {
                let p = z.arg();
                if p < 0.0 {
                    p + 2.0 * PI
                } else {
                    p
                }
            })
            .collect()
    }
}

fn unit_from_phase(phase: f64) -> Complex64 {
    let quarters = phase / (PI / 2.0);
    let nearest = quarters.round();
    if (quarters - nearest).abs() < 1e-12 {
        match (nearest as i64).rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, phase)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PssKind {
    Random,
    CyclicHadamard,
    Explicit,
}

/// Alphabet of randomly generated phase sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseAlphabet {
    /// ±1
    Binary,
    /// ±1, ±j
    #[default]
    Quaternary,
    /// uniform phase in `[0, 2π)`
    Continuous,
}

/// The U phase sequences of an SLM transmitter.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSequenceSet {
    sequences: Vec<PhaseSequence>,
    kind: PssKind,
}

impl PhaseSequenceSet {
    pub fn new(sequences: Vec<PhaseSequence>, kind: PssKind) -> Result<Self> {
        if sequences.is_empty() {
            return Err(Error::PhaseSequence("set must hold at least one sequence".into()));
        }
        let len = sequences[0].len();
        if let Some(s) = sequences.iter().find(|s| s.len() != len) {
            return Err(Error::LengthMismatch { expected: len, actual: s.len() });
        }
        for (u, a) in sequences.iter().enumerate() {
            if sequences[..u].iter().any(|b| b == a) {
                return Err(Error::PhaseSequence(format!("sequence {u} repeats an earlier one")));
            }
        }
        Ok(Self { sequences, kind })
    }

    pub fn sequences(&self) -> &[PhaseSequence] {
        &self.sequences
    }

    pub fn get(&self, u: usize) -> &PhaseSequence {
        &self.sequences[u]
    }

    /// U
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn seq_len(&self) -> usize {
        self.sequences[0].len()
    }

    pub fn kind(&self) -> PssKind {
        self.kind
    }
}

/// N x N ±1 matrix with an all-ones first row and column whose
/// `(N-1) x (N-1)` core holds the cyclic shifts of the bipolar MLS of degree
/// `log2 N`. Rows are mutually orthogonal.
pub fn cyclic_hadamard(n: usize) -> Result<Vec<Vec<i8>>> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Config(format!(
            "cyclic Hadamard order {n} must be a power of two >= 2"
        )));
    }
    let mls = bipolar(&gen_mls(&MlsSpec::builtin(n.trailing_zeros())?)?);
    let period = n - 1;
    let mut rows = Vec::with_capacity(n);
    rows.push(vec![1i8; n]);
    for r in 1..n {
        let mut row = Vec::with_capacity(n);
        row.push(1);
        row.extend((0..period).map(|c| mls[(c + r - 1) % period]));
        rows.push(row);
    }
    Ok(rows)
}

/// Rows `0..U` of the cyclic Hadamard matrix of order N. Row 0 is all-ones,
/// so the first branch leaves the block unrotated.
pub fn gen_hadamard_pss(cfg: &SystemConfig, u: usize) -> Result<PhaseSequenceSet> {
    let n = cfg.n_fft();
    if u == 0 || u > n {
        return Err(Error::PhaseSequence(format!(
            "U = {u} must be in 1..={n} for a Hadamard set"
        )));
    }
    let rows = cyclic_hadamard(n)?;
    let sequences = rows
        .into_iter()
        .take(u)
        .map(|row| PhaseSequence {
            values: row.into_iter().map(|s| Complex64::new(s as f64, 0.0)).collect(),
        })
        .collect();
    PhaseSequenceSet::new(sequences, PssKind::CyclicHadamard)
}

/// U independent sequences with i.i.d. entries from `alphabet`. With
/// `first_all_ones` the first sequence is replaced by all-ones.
pub fn gen_random_pss<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    u: usize,
    alphabet: PhaseAlphabet,
    first_all_ones: bool,
    rng: &mut R,
) -> Result<PhaseSequenceSet> {
    if u == 0 {
        return Err(Error::PhaseSequence("U must be at least 1".into()));
    }
    let n = cfg.n_fft();
    let mut sequences: Vec<PhaseSequence> = Vec::with_capacity(u);
    while sequences.len() < u {
        let seq = if first_all_ones && sequences.is_empty() {
            PhaseSequence::ones(n)
        } else {
            PhaseSequence {
                values: (0..n).map(|_| draw_entry(alphabet, rng)).collect(),
            }
        };
        // redraw on the (astronomically unlikely) collision
        if !sequences.contains(&seq) {
            sequences.push(seq);
        }
    }
    PhaseSequenceSet::new(sequences, PssKind::Random)
}

fn draw_entry<R: Rng + ?Sized>(alphabet: PhaseAlphabet, rng: &mut R) -> Complex64 {
    match alphabet {
        PhaseAlphabet::Binary => unit_from_phase(PI * rng.random_range(0..2) as f64),
        PhaseAlphabet::Quaternary => unit_from_phase(PI / 2.0 * rng.random_range(0..4) as f64),
        PhaseAlphabet::Continuous => Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>()),
    }
}
