//! Selected mapping with per-group permutation.
//!
//! Branch u permutes the block with d_u (`X_u(d_u(i)) = X(i)`), rotates it
//! by the phase sequence P_u and transforms it to the time domain; the
//! branch with the smallest PAPR is transmitted.

pub mod io;
mod mls;
mod permutation;
mod pss;
mod select;

pub use mls::{bipolar, gen_mls, validate_builtin_table, MlsSpec};
pub use permutation::{
    apply_permutation, gen_perm_set, permute_sap, PermKind, PermSpec, PermutationFunction,
    PermutationSet,
};
pub use pss::{
    cyclic_hadamard, gen_hadamard_pss, gen_random_pss, PhaseAlphabet, PhaseSequence,
    PhaseSequenceSet, PssKind,
};
pub use select::{slm_select, SlmEngine, SlmResult};
