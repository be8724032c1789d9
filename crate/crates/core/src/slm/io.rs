//! JSON documents for pinning phase sequence and permutation sets.
//!
//! ```json
//! {"kind": "cyclic-hadamard", "n_fft": 4, "phases": [[0, 0, 0, 0], [0, 3.14159.., ..]]}
//! {"kind": "random", "n_fft": 8, "groups": 2, "perms": [[0, 1, 6, 3, 4, 5, 2, 7]]}
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{PermKind, PermutationFunction, PermutationSet, PhaseSequence, PhaseSequenceSet, PssKind};
use crate::ofdm_im::SystemConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PssDocument {
    pub kind: PssKind,
    pub n_fft: usize,
    /// Phases in radians, one array per sequence.
    pub phases: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermDocument {
    pub kind: PermKind,
    pub n_fft: usize,
    pub groups: usize,
    /// `perms[u][i] = d_u(i)`
    pub perms: Vec<Vec<usize>>,
}

impl PssDocument {
    pub fn from_set(pss: &PhaseSequenceSet) -> Self {
        Self {
            kind: pss.kind(),
            n_fft: pss.seq_len(),
            phases: pss.sequences().iter().map(PhaseSequence::phases).collect(),
        }
    }

    pub fn into_set(self) -> Result<PhaseSequenceSet> {
        let sequences = self
            .phases
            .iter()
            .map(|p| {
                if p.len() != self.n_fft {
                    return Err(Error::LengthMismatch { expected: self.n_fft, actual: p.len() });
                }
                PhaseSequence::from_phases(p)
            })
            .collect::<Result<Vec<_>>>()?;
        PhaseSequenceSet::new(sequences, self.kind)
    }
}

impl PermDocument {
    pub fn from_set(perms: &PermutationSet, cfg: &SystemConfig) -> Self {
        Self {
            kind: perms.kind(),
            n_fft: cfg.n_fft(),
            groups: cfg.groups(),
            perms: perms.perms().iter().map(|d| d.map().to_vec()).collect(),
        }
    }

    pub fn into_set(self, cfg: &SystemConfig) -> Result<PermutationSet> {
        if self.n_fft != cfg.n_fft() || self.groups != cfg.groups() {
            return Err(Error::Format(format!(
                "document is for N={}, G={} but configuration has N={}, G={}",
                self.n_fft,
                self.groups,
                cfg.n_fft(),
                cfg.groups()
            )));
        }
        let perms = self
            .perms
            .into_iter()
            .map(|m| PermutationFunction::new(cfg, m))
            .collect::<Result<Vec<_>>>()?;
        PermutationSet::new(perms, self.kind)
    }
}

pub fn pss_to_json(pss: &PhaseSequenceSet) -> String {
    serde_json::to_string_pretty(&PssDocument::from_set(pss)).expect("serializable")
}

pub fn pss_from_json(text: &str) -> Result<PhaseSequenceSet> {
    let doc: PssDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_set()
}

pub fn perms_to_json(perms: &PermutationSet, cfg: &SystemConfig) -> String {
    serde_json::to_string_pretty(&PermDocument::from_set(perms, cfg)).expect("serializable")
}

pub fn perms_from_json(text: &str, cfg: &SystemConfig) -> Result<PermutationSet> {
    let doc: PermDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_set(cfg)
}

/// SHA-256 of the canonical (compact) JSON document, hex encoded.
pub fn pss_fingerprint(pss: &PhaseSequenceSet) -> String {
    sha256_hex(&serde_json::to_vec(&PssDocument::from_set(pss)).expect("serializable"))
}

pub fn perms_fingerprint(perms: &PermutationSet, cfg: &SystemConfig) -> String {
    sha256_hex(&serde_json::to_vec(&PermDocument::from_set(perms, cfg)).expect("serializable"))
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
