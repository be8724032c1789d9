use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ofdm_im::combinadic::unrank;
use crate::ofdm_im::{map_bits_to_group, Constellation, SystemConfig};
use crate::slm::SlmEngine;
use crate::{Error, Result};

use super::curve::CcdfCurve;
use super::scheme::{SapSource, TrialPlan};

/// Trials per RNG stream. Fixed so that results do not depend on the
/// worker count.
pub const BATCH_TRIALS: u64 = 4096;

/// Largest pattern table kept in memory; bigger groups unrank per draw.
const MAX_TABLE: u64 = 1 << 16;

/// Draws frequency-domain blocks straight into a buffer.
struct BlockSource {
    cfg: SystemConfig,
    cs: Constellation,
    source: SapSource,
    patterns: Option<Vec<Vec<usize>>>,
    subsets: u64,
    bits: Vec<bool>,
}

impl BlockSource {
    fn new(cfg: &SystemConfig, source: SapSource) -> Result<Self> {
        let subsets = cfg.subsets_per_group();
        let patterns = (source == SapSource::Uniform && subsets <= MAX_TABLE).then(|| {
            (0..subsets).map(|r| unrank(cfg.group_size(), cfg.active(), r)).collect()
        });
        Ok(Self {
            cfg: *cfg,
            cs: Constellation::psk(cfg.mod_order())?,
            source,
            patterns,
            subsets,
            bits: vec![false; cfg.bits_per_group()],
        })
    }

    fn draw<R: Rng>(&mut self, rng: &mut R, block: &mut [Complex64]) -> Result<()> {
        block.fill(Complex64::new(0.0, 0.0));
        let groups = self.cfg.groups();
        for g in 0..groups {
            match self.source {
                SapSource::Uniform => {
                    let rank = rng.random_range(0..self.subsets);
                    let owned;
                    let rows: &[usize] = match &self.patterns {
                        Some(table) => &table[rank as usize],
                        None => {
                            owned = unrank(self.cfg.group_size(), self.cfg.active(), rank);
                            &owned
                        }
                    };
                    for &r in rows {
                        let label = rng.random_range(0..self.cfg.mod_order());
                        block[groups * r + g] = self.cs.symbol(label);
                    }
                }
                SapSource::Bits => {
                    for b in self.bits.iter_mut() {
                        *b = rng.random();
                    }
                    let payload = map_bits_to_group(&self.bits, &self.cfg, &self.cs)?;
                    for (&r, &s) in payload.sap.indices().iter().zip(&payload.symbols) {
                        block[groups * r + g] = s;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Estimates the CCDF of the selected PAPR over the plan's γ grid on the
/// global rayon pool.
pub fn run_ccdf(plan: &TrialPlan) -> Result<CcdfCurve> {
    run_batches(plan)
}

/// As [`run_ccdf`] on a dedicated pool of `workers` threads.
pub fn run_ccdf_with_workers(plan: &TrialPlan, workers: usize) -> Result<CcdfCurve> {
    if workers == 0 {
        return Err(Error::Plan("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Plan(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_batches(plan))
}

fn run_batches(plan: &TrialPlan) -> Result<CcdfCurve> {
    plan.validate()?;
    let (pss, perms) = plan.instantiate()?;
    let engine = SlmEngine::new(&plan.cfg, &pss, &perms, plan.oversampling)?;
    let batches = plan.trials.div_ceil(BATCH_TRIALS);
    let bins = plan.gamma_db.len() + 1;

    // hist[j] = trials whose PAPR exceeds exactly the first j grid points
    let hist = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            rng.set_stream(batch);
            let mut source = BlockSource::new(&plan.cfg, plan.scheme.sap_source())?;
            let mut block = vec![Complex64::new(0.0, 0.0); plan.cfg.n_fft()];
            let mut buf = engine.scratch();
            let mut hist = vec![0u64; bins];
            let start = batch * BATCH_TRIALS;
            let end = (start + BATCH_TRIALS).min(plan.trials);
            for _ in start..end {
                source.draw(&mut rng, &mut block)?;
                let (_, papr_db) = engine.min_papr_db(&block, &mut buf);
                hist[plan.gamma_db.partition_point(|&g| g < papr_db)] += 1;
            }
            Ok(hist)
        })
        .try_reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;

    let mut counts = vec![0u64; plan.gamma_db.len()];
    let mut above = 0;
    for j in (0..counts.len()).rev() {
        above += hist[j + 1];
        counts[j] = above;
    }
    Ok(CcdfCurve::from_counts(plan.gamma_db.clone(), counts, plan.trials))
}
