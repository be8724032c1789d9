use serde::{Deserialize, Serialize};

use super::combinadic::binomial;
use crate::{Error, Result};

/// OFDM-IM parameter tuple.
///
/// `n_fft` subcarriers are split into `groups` interleaved groups of
/// `group_size` subcarriers each, of which `active` carry `mod_order`-ary
/// symbols. The index and symbol bit budgets are derived at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct SystemConfig {
    n_fft: usize,
    group_size: usize,
    active: usize,
    groups: usize,
    mod_order: usize,
    subsets: u64,
    index_bits: usize,
    symbol_bits: usize,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    n_fft: usize,
    group_size: usize,
    active: usize,
    mod_order: usize,
}

impl TryFrom<RawConfig> for SystemConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        SystemConfig::new(raw.n_fft, raw.group_size, raw.active, raw.mod_order)
    }
}

impl From<SystemConfig> for RawConfig {
    fn from(cfg: SystemConfig) -> Self {
        RawConfig {
            n_fft: cfg.n_fft,
            group_size: cfg.group_size,
            active: cfg.active,
            mod_order: cfg.mod_order,
        }
    }
}

impl SystemConfig {
    pub fn new(n_fft: usize, group_size: usize, active: usize, mod_order: usize) -> Result<Self> {
        if n_fft < 2 || !n_fft.is_power_of_two() {
            return Err(Error::Config(format!(
                "subcarrier count {n_fft} must be a power of two >= 2"
            )));
        }
        if group_size == 0 || !n_fft.is_multiple_of(group_size) {
            return Err(Error::Config(format!(
                "group size {group_size} must divide the subcarrier count {n_fft}"
            )));
        }
        if active == 0 || active >= group_size {
            return Err(Error::Config(format!(
                "active subcarriers per group must satisfy 1 <= k < n, got k={active}, n={group_size}"
            )));
        }
        if mod_order < 2 || !mod_order.is_power_of_two() {
            return Err(Error::Config(format!(
                "constellation order {mod_order} must be a power of two >= 2"
            )));
        }
        let subsets = binomial(group_size, active).ok_or_else(|| {
            Error::Config(format!("C({group_size}, {active}) does not fit in 64 bits"))
        })?;
        let index_bits = (u64::BITS - 1 - subsets.leading_zeros()) as usize;
        let symbol_bits = active * mod_order.trailing_zeros() as usize;
        Ok(Self {
            n_fft,
            group_size,
            active,
            groups: n_fft / group_size,
            mod_order,
            subsets,
            index_bits,
            symbol_bits,
        })
    }

    /// N
    pub fn n_fft(&self) -> usize {
        self.n_fft
    }

    /// n
    pub fn group_size(&self) -> usize {
        self.group_size
    }

    /// k
    pub fn active(&self) -> usize {
        self.active
    }

    /// G = N / n
    pub fn groups(&self) -> usize {
        self.groups
    }

    /// M
    pub fn mod_order(&self) -> usize {
        self.mod_order
    }

    /// K = kG, the number of active subcarriers in a block.
    pub fn total_active(&self) -> usize {
        self.active * self.groups
    }

    /// Number of possible activation patterns in one group, C(n, k).
    pub fn subsets_per_group(&self) -> u64 {
        self.subsets
    }

    /// p1 = floor(log2 C(n, k))
    pub fn index_bits(&self) -> usize {
        self.index_bits
    }

    /// p2 = k log2 M
    pub fn symbol_bits(&self) -> usize {
        self.symbol_bits
    }

    /// p = p1 + p2, bits carried by one group.
    pub fn bits_per_group(&self) -> usize {
        self.index_bits + self.symbol_bits
    }

    /// Ensemble mean power per time-domain sample, k/n.
    pub fn mean_power(&self) -> f64 {
        self.active as f64 / self.group_size as f64
    }
}
