//! OFDM-IM block construction, the unitary IDFT and PAPR measurement.

mod block;
pub mod combinadic;
mod config;
mod constellation;
pub(crate) mod fft;
mod sap;

pub use block::{
    assemble_block, deinterleave, map_bits_to_group, papr, papr_db_from_peak, FrequencyBlock,
    GroupPayload, TimeSignal,
};
pub use config::SystemConfig;
pub use constellation::Constellation;
pub use fft::{idft, unit_roots, Idft};
pub use sap::{sample_random_sap, GroupSap, Sap};
