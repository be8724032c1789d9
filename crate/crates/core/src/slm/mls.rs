//! Maximum-length sequences from a Fibonacci LFSR.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Primitive polynomials over GF(2), as the coefficient mask of the terms
/// below `x^m` (bit i = coefficient of `x^i`).
const PRIMITIVE_TAPS: [(u32, u32); 10] = [
    (1, 0b1),                 // x + 1
    (2, 0b11),                // x^2 + x + 1
    (3, 0b11),                // x^3 + x + 1
    (4, 0b11),                // x^4 + x + 1
    (5, 0b101),               // x^5 + x^2 + 1
    (6, 0b11),                // x^6 + x + 1
    (7, 0b11),                // x^7 + x + 1
    (8, 0b1_0001_1101),       // x^8 + x^4 + x^3 + x^2 + 1
    (9, 0b1_0001),            // x^9 + x^4 + 1
    (10, 0b1001),             // x^10 + x^3 + 1
];

/// Degree and feedback polynomial of an LFSR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlsSpec {
    degree: u32,
    taps: u32,
}

impl MlsSpec {
    /// Feedback polynomial `x^degree + Σ_i taps_i x^i`. Primitivity is
    /// checked when the sequence is generated.
    pub fn new(degree: u32, taps: u32) -> Result<Self> {
        if degree == 0 || degree > 30 {
            return Err(Error::Config(format!("LFSR degree {degree} out of range 1..=30")));
        }
        if taps >> degree != 0 || taps & 1 == 0 {
            return Err(Error::Config(format!(
                "taps {taps:#b} must have a constant term and degree below {degree}"
            )));
        }
        Ok(Self { degree, taps })
    }

    /// Entry from the built-in primitive polynomial table.
    pub fn builtin(degree: u32) -> Result<Self> {
        PRIMITIVE_TAPS
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|&(degree, taps)| Self { degree, taps })
            .ok_or(Error::NoPolynomial(degree))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn taps(&self) -> u32 {
        self.taps
    }

    pub fn period(&self) -> usize {
        (1usize << self.degree) - 1
    }
}

/// One period of the LFSR output started from the all-ones state.
///
/// With `a_t` the output, the recurrence is
/// `a_{t+m} = Σ_{i<m} taps_i a_{t+i}` (mod 2). Fails if the state does not
/// first return to all-ones after exactly `2^m - 1` steps.
pub fn gen_mls(spec: &MlsSpec) -> Result<Vec<u8>> {
    let m = spec.degree;
    let full = (1u32 << m) - 1;
    let period = spec.period();
    // bit i of `state` holds a_{t+i}
    let mut state = full;
    let mut out = Vec::with_capacity(period);
    for step in 1..=period {
        out.push((state & 1) as u8);
        let feedback = (state & spec.taps).count_ones() & 1;
        state = (state >> 1) | (feedback << (m - 1));
        if state == full && step < period {
            return Err(Error::NotPrimitive { degree: m, taps: spec.taps, period: step });
        }
    }
    if state != full {
        return Err(Error::NotPrimitive { degree: m, taps: spec.taps, period: 0 });
    }
    Ok(out)
}

/// ±1 image with `0 -> +1`, `1 -> -1`.
pub fn bipolar(bits: &[u8]) -> Vec<i8> {
    bits.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect()
}

/// Validates every built-in table entry by the period check.
pub fn validate_builtin_table() -> Result<()> {
    for &(degree, _) in &PRIMITIVE_TAPS {
        gen_mls(&MlsSpec::builtin(degree)?)?;
    }
    Ok(())
}
