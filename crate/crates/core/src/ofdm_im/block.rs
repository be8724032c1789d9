use num_complex::Complex64;

use super::{Constellation, GroupSap, Sap, SystemConfig};
use crate::{Error, Result};

/// Frequency-domain OFDM-IM block X.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyBlock {
    values: Vec<Complex64>,
}

impl FrequencyBlock {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i] != Complex64::new(0.0, 0.0))
            .collect()
    }
}

/// Time-domain OFDM-IM signal x.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    samples: Vec<Complex64>,
}

impl TimeSignal {
    pub fn new(samples: Vec<Complex64>) -> Self {
        Self { samples }
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn peak_power(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
    }
}

/// One group's activation pattern with the symbols on its active rows,
/// in increasing row order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPayload {
    pub sap: GroupSap,
    pub symbols: Vec<Complex64>,
}

/// Maps a p-bit word to one group.
///
/// The first p1 bits (MSB first) are the lexicographic rank of the group
/// pattern; each following `log2 M` bits are the Gray label of one symbol.
pub fn map_bits_to_group(
    bits: &[bool],
    cfg: &SystemConfig,
    cs: &Constellation,
) -> Result<GroupPayload> {
    if cs.order() != cfg.mod_order() {
        return Err(Error::Config(format!(
            "constellation order {} does not match configured M = {}",
            cs.order(),
            cfg.mod_order()
        )));
    }
    if bits.len() != cfg.bits_per_group() {
        return Err(Error::BitLength {
            expected: cfg.bits_per_group(),
            actual: bits.len(),
        });
    }
    let to_int = |word: &[bool]| word.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    let (index_bits, symbol_bits) = bits.split_at(cfg.index_bits());
    let sap = GroupSap::from_rank(cfg, to_int(index_bits))?;
    let symbols = symbol_bits
        .chunks(cs.bits_per_symbol())
        .map(|label| cs.symbol(to_int(label) as usize))
        .collect();
    Ok(GroupPayload { sap, symbols })
}

/// Interleaved concatenation: `X(G*r + g) = X^g(r)`.
pub fn assemble_block(
    groups: &[GroupPayload],
    cfg: &SystemConfig,
) -> Result<(FrequencyBlock, Sap)> {
    if groups.len() != cfg.groups() {
        return Err(Error::Sap(format!(
            "expected {} groups, got {}",
            cfg.groups(),
            groups.len()
        )));
    }
    let g_count = cfg.groups();
    let mut block = FrequencyBlock::zeros(cfg.n_fft());
    for (g, payload) in groups.iter().enumerate() {
        if payload.symbols.len() != payload.sap.indices().len() {
            return Err(Error::LengthMismatch {
                expected: payload.sap.indices().len(),
                actual: payload.symbols.len(),
            });
        }
        for (&r, &s) in payload.sap.indices().iter().zip(&payload.symbols) {
            block.values[g_count * r + g] = s;
        }
    }
    let sap = Sap::from_groups(cfg, groups.iter().map(|p| p.sap.clone()).collect())?;
    Ok((block, sap))
}

/// Inverse of the interleaved placement: returns the G group vectors X^g.
pub fn deinterleave(block: &FrequencyBlock, cfg: &SystemConfig) -> Vec<Vec<Complex64>> {
    let g_count = cfg.groups();
    (0..g_count)
        .map(|g| {
            (0..cfg.group_size())
                .map(|r| block.values[g_count * r + g])
                .collect()
        })
        .collect()
}

/// PAPR in dB with the ensemble mean power k/n as the denominator.
pub fn papr(signal: &TimeSignal, cfg: &SystemConfig) -> f64 {
    papr_db_from_peak(signal.peak_power(), cfg)
}

pub fn papr_db_from_peak(peak_power: f64, cfg: &SystemConfig) -> f64 {
    10.0 * (peak_power / cfg.mean_power()).log10()
}
