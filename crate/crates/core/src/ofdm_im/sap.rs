use rand::Rng;
use serde::{Deserialize, Serialize};

use super::combinadic;
use super::SystemConfig;
use crate::{Error, Result};

/// Activation choice inside one group: a sorted k-subset of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSap {
    indices: Vec<usize>,
}

impl GroupSap {
    pub fn new(cfg: &SystemConfig, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.len() != cfg.active() {
            return Err(Error::Sap(format!(
                "group pattern has {} indices, expected {}",
                indices.len(),
                cfg.active()
            )));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Sap("duplicate index in group pattern".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= cfg.group_size()) {
            return Err(Error::Sap(format!(
                "group index {bad} out of range 0..{}",
                cfg.group_size()
            )));
        }
        Ok(Self { indices })
    }

    /// Lexicographic unranking of `rank` among the C(n, k) group patterns.
    pub fn from_rank(cfg: &SystemConfig, rank: u64) -> Result<Self> {
        if rank >= cfg.subsets_per_group() {
            return Err(Error::Sap(format!(
                "rank {rank} out of range 0..{}",
                cfg.subsets_per_group()
            )));
        }
        Ok(Self {
            indices: combinadic::unrank(cfg.group_size(), cfg.active(), rank),
        })
    }

    pub fn rank(&self, cfg: &SystemConfig) -> u64 {
        combinadic::rank(cfg.group_size(), &self.indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// Subcarrier activation pattern of a whole block.
///
/// Group `g` occupies the residue class `{G*r + g}`, so
/// `I = ∪_g {G*r + g : r ∈ groups[g]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sap {
    active: Vec<usize>,
    groups: Vec<GroupSap>,
}

impl Sap {
    pub fn from_groups(cfg: &SystemConfig, groups: Vec<GroupSap>) -> Result<Self> {
        let g_count = cfg.groups();
        if groups.len() != g_count {
            return Err(Error::Sap(format!(
                "expected {g_count} groups, got {}",
                groups.len()
            )));
        }
        for grp in &groups {
            // re-validate against this configuration
            GroupSap::new(cfg, grp.indices.clone())?;
        }
        let mut active: Vec<usize> = groups
            .iter()
            .enumerate()
            .flat_map(|(g, grp)| grp.indices.iter().map(move |&r| g_count * r + g))
            .collect();
        active.sort_unstable();
        Ok(Self { active, groups })
    }

    /// Builds the pattern from absolute subcarrier indices, checking that each
    /// residue class mod G holds exactly k of them.
    pub fn from_active(cfg: &SystemConfig, mut active: Vec<usize>) -> Result<Self> {
        active.sort_unstable();
        active.dedup();
        let g_count = cfg.groups();
        if let Some(&bad) = active.iter().find(|&&i| i >= cfg.n_fft()) {
            return Err(Error::Sap(format!(
                "index {bad} out of range 0..{}",
                cfg.n_fft()
            )));
        }
        let mut per_group = vec![Vec::with_capacity(cfg.active()); g_count];
        for &i in &active {
            per_group[i % g_count].push(i / g_count);
        }
        let groups = per_group
            .into_iter()
            .map(|rows| GroupSap::new(cfg, rows))
            .collect::<Result<Vec<_>>>()?;
        Self::from_groups(cfg, groups)
    }

    /// Sorted active index set I.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn groups(&self) -> &[GroupSap] {
        &self.groups
    }

    /// Absolute indices I^g of group `g`.
    pub fn group_indices(&self, g: usize) -> Vec<usize> {
        let g_count = self.groups.len();
        self.groups[g].indices.iter().map(|&r| g_count * r + g).collect()
    }

    /// Complement of I in `0..N`.
    pub fn inactive(&self, n_fft: usize) -> Vec<usize> {
        let mut mask = vec![false; n_fft];
        for &i in &self.active {
            mask[i] = true;
        }
        (0..n_fft).filter(|&i| !mask[i]).collect()
    }

    /// Activation indicators α_i for `i in 0..N`.
    pub fn indicators(&self, n_fft: usize) -> Vec<bool> {
        let mut mask = vec![false; n_fft];
        for &i in &self.active {
            mask[i] = true;
        }
        mask
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }
}

/// Draws every group pattern uniformly over all C(n, k) subsets.
pub fn sample_random_sap<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> Sap {
    let groups = (0..cfg.groups())
        .map(|_| GroupSap {
            indices: combinadic::unrank(
                cfg.group_size(),
                cfg.active(),
                rng.random_range(0..cfg.subsets_per_group()),
            ),
        })
        .collect();
    Sap::from_groups(cfg, groups).expect("sampled groups are valid")
}
