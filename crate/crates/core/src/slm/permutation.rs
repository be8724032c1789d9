use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ofdm_im::{FrequencyBlock, Sap, SystemConfig};
use crate::{Error, Result};

/// Bijection d on `0..N` that maps every residue class mod G onto itself,
/// so each group is permuted individually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationFunction {
    map: Vec<usize>,
    inverse: Vec<usize>,
}

impl PermutationFunction {
    pub fn new(cfg: &SystemConfig, map: Vec<usize>) -> Result<Self> {
        let n = cfg.n_fft();
        if map.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: map.len() });
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, &d) in map.iter().enumerate() {
            if d >= n {
                return Err(Error::Permutation(format!("image {d} of {i} out of range 0..{n}")));
            }
            if inverse[d] != usize::MAX {
                return Err(Error::Permutation(format!(
                    "not a bijection: {} and {i} both map to {d}",
                    inverse[d]
                )));
            }
            if d % cfg.groups() != i % cfg.groups() {
                return Err(Error::Permutation(format!(
                    "{i} -> {d} leaves its group (residue {} vs {})",
                    i % cfg.groups(),
                    d % cfg.groups()
                )));
            }
            inverse[d] = i;
        }
        Ok(Self { map, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// Independent uniform shuffle of the n rows of each group.
    pub fn random<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> Self {
        let (g_count, n) = (cfg.groups(), cfg.group_size());
        let mut map = vec![0; cfg.n_fft()];
        let mut rows: Vec<usize> = (0..n).collect();
        for g in 0..g_count {
            rows.shuffle(rng);
            for (r, &target) in rows.iter().enumerate() {
                map[g_count * r + g] = g_count * target + g;
            }
        }
        Self::new(cfg, map).expect("per-group shuffle is valid")
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &d)| i == d)
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.inverse.clone(),
            inverse: self.map.clone(),
        }
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let map: Vec<usize> = other.map.iter().map(|&j| self.map[j]).collect();
        let mut inverse = vec![0; map.len()];
        for (i, &d) in map.iter().enumerate() {
            inverse[d] = i;
        }
        Self { map, inverse }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PermKind {
    Identity,
    Random,
    Explicit,
}

/// How [`gen_perm_set`] builds the U permutation functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermSpec {
    Identity,
    Random { first_identity: bool },
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSet {
    perms: Vec<PermutationFunction>,
    kind: PermKind,
}

impl PermutationSet {
    pub fn new(perms: Vec<PermutationFunction>, kind: PermKind) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::Permutation("set must hold at least one function".into()));
        }
        let len = perms[0].len();
        if let Some(p) = perms.iter().find(|p| p.len() != len) {
            return Err(Error::LengthMismatch { expected: len, actual: p.len() });
        }
        Ok(Self { perms, kind })
    }

    pub fn identity(n: usize, u: usize) -> Self {
        Self {
            perms: vec![PermutationFunction::identity(n); u.max(1)],
            kind: PermKind::Identity,
        }
    }

    pub fn perms(&self) -> &[PermutationFunction] {
        &self.perms
    }

    pub fn get(&self, u: usize) -> &PermutationFunction {
        &self.perms[u]
    }

    /// U
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn kind(&self) -> PermKind {
        self.kind
    }
}

pub fn gen_perm_set<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    u: usize,
    spec: &PermSpec,
    rng: &mut R,
) -> Result<PermutationSet> {
    if u == 0 {
        return Err(Error::Permutation("U must be at least 1".into()));
    }
    match spec {
        PermSpec::Identity => Ok(PermutationSet::identity(cfg.n_fft(), u)),
        PermSpec::Random { first_identity } => {
            let perms = (0..u)
                .map(|idx| {
                    if idx == 0 && *first_identity {
                        PermutationFunction::identity(cfg.n_fft())
                    } else {
                        PermutationFunction::random(cfg, rng)
                    }
                })
                .collect();
            PermutationSet::new(perms, PermKind::Random)
        }
        PermSpec::Explicit(maps) => {
            if maps.len() != u {
                return Err(Error::Permutation(format!(
                    "expected {u} explicit permutations, got {}",
                    maps.len()
                )));
            }
            let perms = maps
                .iter()
                .map(|m| PermutationFunction::new(cfg, m.clone()))
                .collect::<Result<Vec<_>>>()?;
            PermutationSet::new(perms, PermKind::Explicit)
        }
    }
}

/// `out[d(i)] = in[i]`.
pub fn apply_permutation(block: &FrequencyBlock, d: &PermutationFunction) -> Result<FrequencyBlock> {
    if block.len() != d.len() {
        return Err(Error::LengthMismatch { expected: d.len(), actual: block.len() });
    }
    let mut out = FrequencyBlock::zeros(block.len());
    for (i, &z) in block.values().iter().enumerate() {
        out.values_mut()[d.apply(i)] = z;
    }
    Ok(out)
}

/// Activation pattern `{d(i) : i ∈ I}` of the permuted block.
pub fn permute_sap(sap: &Sap, d: &PermutationFunction, cfg: &SystemConfig) -> Result<Sap> {
    Sap::from_active(cfg, sap.active().iter().map(|&i| d.apply(i)).collect())
}
