use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ofdm_im::SystemConfig;
use crate::slm::io::{perms_fingerprint, pss_fingerprint};
use crate::slm::{
    gen_hadamard_pss, gen_perm_set, gen_random_pss, PermSpec, PermutationSet, PhaseAlphabet,
    PhaseSequence, PhaseSequenceSet, PssKind,
};
use crate::{Error, Result};

/// ChaCha stream reserved for drawing the phase sequence set of a run.
pub(crate) const PSS_STREAM: u64 = u64::MAX;
/// ChaCha stream reserved for drawing the permutation set of a run.
pub(crate) const PERM_STREAM: u64 = u64::MAX - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Original,
    Slm,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PssSource {
    Random { alphabet: PhaseAlphabet, first_all_ones: bool },
    CyclicHadamard,
    Pinned(PhaseSequenceSet),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PermSource {
    Identity,
    Random { first_identity: bool },
    Pinned(PermutationSet),
}

/// Where the activation pattern of each trial comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SapSource {
    /// Uniform over all C(n, k) patterns per group.
    #[default]
    Uniform,
    /// Random p-bit words through the combinadic mapper (2^p1 patterns).
    Bits,
}

/// One experiment arm.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeDescriptor {
    mode: Mode,
    u: usize,
    pss: PssSource,
    perm: PermSource,
    sap_source: SapSource,
}

impl SchemeDescriptor {
    /// Plain OFDM-IM: one branch, all-ones phase, identity permutation.
    pub fn original(sap_source: SapSource) -> Self {
        Self {
            mode: Mode::Original,
            u: 1,
            pss: PssSource::Pinned(
                PhaseSequenceSet::new(vec![PhaseSequence::ones(1)], PssKind::Explicit)
                    .expect("single sequence"),
            ),
            perm: PermSource::Identity,
            sap_source,
        }
    }

    pub fn slm(u: usize, pss: PssSource, perm: PermSource, sap_source: SapSource) -> Result<Self> {
        if u == 0 {
            return Err(Error::Plan("U must be at least 1".into()));
        }
        if let PssSource::Pinned(set) = &pss {
            if set.len() != u {
                return Err(Error::Plan(format!("pinned PSS has {} sequences, U = {u}", set.len())));
            }
        }
        if let PermSource::Pinned(set) = &perm {
            if set.len() != u {
                return Err(Error::Plan(format!(
                    "pinned permutation set has {} functions, U = {u}",
                    set.len()
                )));
            }
        }
        Ok(Self { mode: Mode::Slm, u, pss, perm, sap_source })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn pss(&self) -> &PssSource {
        &self.pss
    }

    pub fn perm(&self) -> &PermSource {
        &self.perm
    }

    pub fn sap_source(&self) -> SapSource {
        self.sap_source
    }

    fn pss_label(&self) -> String {
        match (&self.mode, &self.pss) {
            (Mode::Original, _) => "ones".into(),
            (_, PssSource::Random { alphabet, .. }) => {
                format!("random-{}", serde_json::to_value(alphabet).unwrap().as_str().unwrap())
            }
            (_, PssSource::CyclicHadamard) => "cyclic-hadamard".into(),
            (_, PssSource::Pinned(_)) => "pinned".into(),
        }
    }

    fn perm_label(&self) -> &'static str {
        match self.perm {
            PermSource::Identity => "identity",
            PermSource::Random { .. } => "random",
            PermSource::Pinned(_) => "pinned",
        }
    }
}

/// Evenly spaced, strictly increasing dB grid `start, start+step, .., stop`.
pub fn gamma_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Plan(format!("invalid γ grid {start}:{step}:{stop}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Configuration, scheme, trial count, seed and γ grid of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialPlan {
    pub cfg: SystemConfig,
    pub scheme: SchemeDescriptor,
    pub trials: u64,
    pub seed: u64,
    pub gamma_db: Vec<f64>,
    /// Integer oversampling factor of the PAPR measurement (1 = Nyquist).
    pub oversampling: usize,
}

impl TrialPlan {
    pub fn new(
        cfg: SystemConfig,
        scheme: SchemeDescriptor,
        trials: u64,
        seed: u64,
        gamma_db: Vec<f64>,
    ) -> Result<Self> {
        let plan = Self { cfg, scheme, trials, seed, gamma_db, oversampling: 1 };
        plan.validate()?;
        Ok(plan)
    }

    pub fn with_oversampling(mut self, factor: usize) -> Result<Self> {
        self.oversampling = factor;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Plan("trials must be at least 1".into()));
        }
        if self.gamma_db.is_empty() {
            return Err(Error::Plan("γ grid is empty".into()));
        }
        if self.gamma_db.iter().any(|g| !g.is_finite())
            || self.gamma_db.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::Plan("γ grid must be finite and strictly increasing".into()));
        }
        if self.oversampling == 0 || !self.oversampling.is_power_of_two() {
            return Err(Error::Plan(format!(
                "oversampling factor {} must be a power of two",
                self.oversampling
            )));
        }
        let n = self.cfg.n_fft();
        if let PssSource::Pinned(set) = &self.scheme.pss {
            if self.scheme.mode == Mode::Slm && set.seq_len() != n {
                return Err(Error::Plan(format!(
                    "pinned PSS has length {}, N = {n}",
                    set.seq_len()
                )));
            }
        }
        if let PermSource::Pinned(set) = &self.scheme.perm {
            if set.get(0).len() != n {
                return Err(Error::Plan(format!(
                    "pinned permutations have length {}, N = {n}",
                    set.get(0).len()
                )));
            }
        }
        if self.scheme.pss == PssSource::CyclicHadamard && self.scheme.u > n {
            return Err(Error::Plan(format!("U = {} exceeds the Hadamard order {n}", self.scheme.u)));
        }
        Ok(())
    }

    /// Phase sequence and permutation sets of this run, drawn once from
    /// dedicated streams of the seed.
    pub fn instantiate(&self) -> Result<(PhaseSequenceSet, PermutationSet)> {
        let (cfg, u) = (&self.cfg, self.scheme.u);
        let n = cfg.n_fft();
        if self.scheme.mode == Mode::Original {
            let pss = PhaseSequenceSet::new(vec![PhaseSequence::ones(n)], PssKind::Explicit)?;
            return Ok((pss, PermutationSet::identity(n, 1)));
        }
        let pss = match &self.scheme.pss {
            PssSource::Random { alphabet, first_all_ones } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(PSS_STREAM);
                gen_random_pss(cfg, u, *alphabet, *first_all_ones, &mut rng)?
            }
            PssSource::CyclicHadamard => gen_hadamard_pss(cfg, u)?,
            PssSource::Pinned(set) => set.clone(),
        };
        let perms = match &self.scheme.perm {
            PermSource::Identity => PermutationSet::identity(n, u),
            PermSource::Random { first_identity } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(PERM_STREAM);
                gen_perm_set(cfg, u, &PermSpec::Random { first_identity: *first_identity }, &mut rng)?
            }
            PermSource::Pinned(set) => set.clone(),
        };
        Ok((pss, perms))
    }

    /// Provenance record written next to a curve.
    pub fn echo(&self) -> Result<PlanEcho> {
        let (pss, perms) = self.instantiate()?;
        let (first, last) = (self.gamma_db[0], *self.gamma_db.last().expect("non-empty grid"));
        let points = self.gamma_db.len();
        let step = if points > 1 { (last - first) / (points - 1) as f64 } else { 0.0 };
        Ok(PlanEcho {
            config: self.cfg,
            mode: self.scheme.mode,
            u: self.scheme.u,
            pss: self.scheme.pss_label(),
            perm: self.scheme.perm_label().into(),
            sap_source: self.scheme.sap_source,
            trials: self.trials,
            seed: self.seed,
            gamma_start_db: first,
            gamma_stop_db: last,
            gamma_step_db: step,
            gamma_points: points,
            oversampling: self.oversampling,
            batch_trials: super::BATCH_TRIALS,
            resolution_floor: 1.0 / self.trials as f64,
            pss_fingerprint: pss_fingerprint(&pss),
            perm_fingerprint: perms_fingerprint(&perms, &self.cfg),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEcho {
    pub config: SystemConfig,
    pub mode: Mode,
    pub u: usize,
    pub pss: String,
    pub perm: String,
    pub sap_source: SapSource,
    pub trials: u64,
    pub seed: u64,
    pub gamma_start_db: f64,
    pub gamma_stop_db: f64,
    pub gamma_step_db: f64,
    pub gamma_points: usize,
    pub oversampling: usize,
    pub batch_trials: u64,
    /// Smallest nonzero probability the curve can resolve, 1/trials.
    pub resolution_floor: f64,
    pub pss_fingerprint: String,
    pub perm_fingerprint: String,
}
