use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Unit-average-power M-ary PSK constellation with Gray labelling.
///
/// `M = 2` is BPSK on the real axis, `M = 4` is QPSK at odd multiples of
/// π/4. Larger orders are M-PSK rotated by π/M.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<Complex64>,
    bits: usize,
}

impl Constellation {
    pub fn psk(order: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::Config(format!(
                "constellation order {order} must be a power of two >= 2"
            )));
        }
        let points = match order {
            2 => vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            4 => {
                let a = std::f64::consts::FRAC_1_SQRT_2;
                // Gray: 00 -> 1st quadrant, 01 -> 2nd, 11 -> 3rd, 10 -> 4th
                vec![
                    Complex64::new(a, a),
                    Complex64::new(-a, a),
                    Complex64::new(a, -a),
                    Complex64::new(-a, -a),
                ]
            }
            _ => {
                let mut pts = vec![Complex64::new(0.0, 0.0); order];
                for pos in 0..order {
                    let label = pos ^ (pos >> 1);
                    pts[label] = Complex64::from_polar(1.0, (2 * pos + 1) as f64 * PI / order as f64);
                }
                pts
            }
        };
        Ok(Self {
            points,
            bits: order.trailing_zeros() as usize,
        })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.bits
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Symbol for a Gray label in `0..M`.
    pub fn symbol(&self, label: usize) -> Complex64 {
        self.points[label]
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.points.iter().any(|p| (p - z).norm() <= tol)
    }

    pub fn average_power(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / self.points.len() as f64
    }
}
