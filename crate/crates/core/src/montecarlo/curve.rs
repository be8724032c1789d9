use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Formats a float with nine significant digits.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Empirical complementary CDF of the PAPR on a γ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfCurve {
    pub gamma_db: Vec<f64>,
    pub ccdf: Vec<f64>,
    /// Trials whose PAPR strictly exceeded each γ.
    pub counts: Vec<u64>,
    pub trials: u64,
}

impl CcdfCurve {
    pub fn from_counts(gamma_db: Vec<f64>, counts: Vec<u64>, trials: u64) -> Self {
        let ccdf = counts.iter().map(|&c| c as f64 / trials as f64).collect();
        Self { gamma_db, ccdf, counts, trials }
    }

    pub fn len(&self) -> usize {
        self.gamma_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_db.is_empty()
    }

    /// Smallest nonzero probability the curve can show.
    pub fn resolution_floor(&self) -> f64 {
        1.0 / self.trials as f64
    }

    /// Binomial standard error at grid point j.
    pub fn std_error(&self, j: usize) -> f64 {
        let p = self.ccdf[j];
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma_db,ccdf,count,trials\n");
        for j in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_sig9(self.gamma_db[j]),
                format_sig9(self.ccdf[j]),
                self.counts[j],
                self.trials
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("gamma_db,ccdf,count,trials") {
            return Err(Error::Format("missing CCDF header".into()));
        }
        let (mut gamma, mut counts, mut trials) = (Vec::new(), Vec::new(), None);
        for (no, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || Error::Format(format!("malformed CCDF row {}", no + 2));
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 4 {
                return Err(bad());
            }
            gamma.push(fields[0].parse::<f64>().map_err(|_| bad())?);
            counts.push(fields[2].parse::<u64>().map_err(|_| bad())?);
            let t = fields[3].parse::<u64>().map_err(|_| bad())?;
            if *trials.get_or_insert(t) != t || t == 0 {
                return Err(bad());
            }
        }
        let trials = trials.ok_or_else(|| Error::Format("CCDF has no rows".into()))?;
        Ok(Self::from_counts(gamma, counts, trials))
    }
}

/// Wilson score interval for `count` successes out of `trials` at `z` sigmas.
pub fn wilson_interval(count: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = count as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// γ in dB at which the curve crosses `target`.
///
/// Uses the first grid point at or below the target and interpolates
/// linearly in log10(probability) from the point before it; when that point
/// has zero probability the interpolation is linear in probability. Fails
/// for targets below ten times the resolution floor or crossings outside
/// the grid.
pub fn papr_at_ccdf(curve: &CcdfCurve, target: f64) -> Result<f64> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::Plan(format!("CCDF target {target} must lie in (0, 1]")));
    }
    let unresolvable = |reason: String| Error::Unresolvable { target, reason };
    if target < 10.0 * curve.resolution_floor() {
        return Err(unresolvable(format!("only {} trials", curve.trials)));
    }
    let j = curve
        .ccdf
        .iter()
        .position(|&p| p <= target)
        .ok_or_else(|| unresolvable("curve stays above target on the whole grid".into()))?;
    if j == 0 {
        return if curve.ccdf[0] == target {
            Ok(curve.gamma_db[0])
        } else {
            Err(unresolvable("crossing lies below the first grid point".into()))
        };
    }
    let (g0, g1) = (curve.gamma_db[j - 1], curve.gamma_db[j]);
    let (p0, p1) = (curve.ccdf[j - 1], curve.ccdf[j]);
    let t = if p1 > 0.0 {
        (p0.log10() - target.log10()) / (p0.log10() - p1.log10())
    } else {
        (p0 - target) / (p0 - p1)
    };
    Ok(g0 + t * (g1 - g0))
}

/// Point-wise difference of two curves on the same grid, `a - b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComparison {
    pub gamma_db: Vec<f64>,
    pub delta: Vec<f64>,
    /// Standard error of each difference, independent-sample approximation.
    pub sigma: Vec<f64>,
    pub max_abs_delta: f64,
    /// `γ_a - γ_b` at each requested level, `None` when unresolvable.
    pub gaps: Vec<(f64, Option<f64>)>,
    min_counts: Vec<u64>,
}

/// Outcome of checking `a <= b + sigmas * σ` over the resolvable grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Dominance {
    pub holds: bool,
    pub resolvable_points: usize,
    /// Grid points where the check fails.
    pub violations: Vec<f64>,
    /// Largest `(a - b) / σ` among resolvable points.
    pub worst_z: f64,
}

impl CurveComparison {
    pub fn dominance(&self, min_count: u64, sigmas: f64) -> Dominance {
        let mut violations = Vec::new();
        let mut resolvable = 0;
        let mut worst_z = f64::NEG_INFINITY;
        for j in 0..self.delta.len() {
            if self.min_counts[j] < min_count {
                continue;
            }
            resolvable += 1;
            let z = if self.sigma[j] > 0.0 { self.delta[j] / self.sigma[j] } else { 0.0 };
            worst_z = worst_z.max(z);
            if self.delta[j] > sigmas * self.sigma[j] {
                violations.push(self.gamma_db[j]);
            }
        }
        Dominance { holds: violations.is_empty(), resolvable_points: resolvable, violations, worst_z }
    }
}

pub fn compare_curves(a: &CcdfCurve, b: &CcdfCurve, levels: &[f64]) -> Result<CurveComparison> {
    if a.gamma_db != b.gamma_db {
        return Err(Error::Plan("curves use different γ grids".into()));
    }
    let delta: Vec<f64> = a.ccdf.iter().zip(&b.ccdf).map(|(x, y)| x - y).collect();
    let sigma = (0..a.len())
        .map(|j| (a.std_error(j).powi(2) + b.std_error(j).powi(2)).sqrt())
        .collect();
    let max_abs_delta = delta.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let gaps = levels
        .iter()
        .map(|&level| {
            let gap = match (papr_at_ccdf(a, level), papr_at_ccdf(b, level)) {
                (Ok(ga), Ok(gb)) => Some(ga - gb),
                _ => None,
            };
            (level, gap)
        })
        .collect();
    let min_counts = a.counts.iter().zip(&b.counts).map(|(&x, &y)| x.min(y)).collect();
    Ok(CurveComparison { gamma_db: a.gamma_db.clone(), delta, sigma, max_abs_delta, gaps, min_counts })
}
