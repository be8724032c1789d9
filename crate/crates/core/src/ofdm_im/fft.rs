//! Radix-2 decimation-in-time inverse DFT.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FrequencyBlock, TimeSignal};

/// `table[q] = exp(+j 2π q / n)` for `q in 0..n`, exact at the quarter points.
pub fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|q| {
            if n.is_multiple_of(4) && q.is_multiple_of(n / 4) {
                match 4 * q / n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else if n == 2 && q == 1 {
                Complex64::new(-1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, 2.0 * PI * q as f64 / n as f64)
            }
        })
        .collect()
}

/// Precomputed inverse transform of a fixed power-of-two length.
#[derive(Debug, Clone)]
pub struct Idft {
    len: usize,
    twiddles: Vec<Complex64>,
    bitrev: Vec<usize>,
    scale: f64,
}

impl Idft {
    /// Panics unless `len` is a nonzero power of two.
    pub fn new(len: usize) -> Self {
        assert!(len.is_power_of_two(), "IDFT length {len} is not a power of two");
        let bits = len.trailing_zeros();
        let bitrev = (0..len)
            .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
            .collect();
        let mut twiddles = unit_roots(len);
        twiddles.truncate(len / 2);
        Self {
            len,
            twiddles,
            bitrev,
            scale: 1.0 / (len as f64).sqrt(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `buf[m] <- Σ_i buf[i] exp(+j2π i m / len)`, no scaling.
    pub fn process_unscaled(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len, "buffer length mismatch");
        for i in 0..self.len {
            let j = self.bitrev[i];
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < self.len {
            let stride = self.len / (2 * half);
            for start in (0..self.len).step_by(2 * half) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }

    /// Unitary inverse transform in place (scaled by `1/sqrt(len)`).
    pub fn process(&self, buf: &mut [Complex64]) {
        self.process_unscaled(buf);
        for z in buf.iter_mut() {
            *z *= self.scale;
        }
    }

    pub fn transform(&self, block: &FrequencyBlock) -> TimeSignal {
        let mut buf = block.values().to_vec();
        self.process(&mut buf);
        TimeSignal::new(buf)
    }
}

/// `x(m) = (1/sqrt N) Σ_i X(i) exp(j2π i m / N)`.
pub fn idft(block: &FrequencyBlock) -> TimeSignal {
    Idft::new(block.len()).transform(block)
}
