use std::fmt;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use ofdmim_slm::analysis::{mu_pairwise, punctured_spectrum, var_rho_closed_form, var_rho_empirical_many, MuReport};
use ofdmim_slm::montecarlo::{
    format_sig9, gamma_grid, run_ccdf, run_ccdf_with_workers, PermSource, PssSource, SapSource,
    SchemeDescriptor, TrialPlan,
};
use ofdmim_slm::ofdm_im::{sample_random_sap, Sap, SystemConfig};
use ofdmim_slm::slm::io::{perms_from_json, perms_to_json, pss_from_json, pss_to_json};
use ofdmim_slm::slm::{
    gen_hadamard_pss, gen_perm_set, gen_random_pss, PermSpec, PermutationSet, PhaseAlphabet,
    PhaseSequenceSet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::*;

#[derive(Debug)]
pub enum Failure {
    /// Invalid flags, configuration or input files.
    Input(String),
    /// An output file could not be written.
    Output(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Output(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) | Failure::Output(msg) => f.write_str(msg),
        }
    }
}

impl From<ofdmim_slm::Error> for Failure {
    fn from(e: ofdmim_slm::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn config(args: &ConfigArgs) -> Result<SystemConfig, Failure> {
    Ok(SystemConfig::new(args.n_fft, args.group_size, args.active, args.mod_order)?)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn create_output(path: &Path) -> Result<File, Failure> {
    File::create(path).map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))
}

fn write_to(file: &mut File, path: &Path, text: &str) -> Outcome {
    file.write_all(text.as_bytes())
        .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write_to(&mut create_output(p)?, p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn alphabet(arg: AlphabetArg) -> PhaseAlphabet {
    match arg {
        AlphabetArg::Binary => PhaseAlphabet::Binary,
        AlphabetArg::Quaternary => PhaseAlphabet::Quaternary,
        AlphabetArg::Continuous => PhaseAlphabet::Continuous,
    }
}

fn pinned_pss(file: Option<&PathBuf>) -> Result<PhaseSequenceSet, Failure> {
    let path = file.ok_or_else(|| Failure::Input("--pss pinned requires --pss-file".into()))?;
    Ok(pss_from_json(&read_input(path)?)?)
}

fn pinned_perms(file: Option<&PathBuf>, cfg: &SystemConfig) -> Result<PermutationSet, Failure> {
    let path = file.ok_or_else(|| Failure::Input("--perm pinned requires --perm-file".into()))?;
    Ok(perms_from_json(&read_input(path)?, cfg)?)
}

fn scheme(args: &CcdfArgs, cfg: &SystemConfig) -> Result<SchemeDescriptor, Failure> {
    let sap = match args.sap_source {
        SapSourceArg::Uniform => SapSource::Uniform,
        SapSourceArg::Bits => SapSource::Bits,
    };
    if args.scheme == SchemeArg::Original {
        let given: Vec<&str> = [
            ("--u", args.u.is_some()),
            ("--pss", args.pss.is_some()),
            ("--pss-file", args.pss_file.is_some()),
            ("--perm", args.perm.is_some()),
            ("--perm-file", args.perm_file.is_some()),
            ("--first-all-ones", args.first_all_ones),
            ("--first-identity", args.first_identity),
        ]
        .into_iter()
        .filter_map(|(flag, set)| set.then_some(flag))
        .collect();
        if !given.is_empty() {
            return Err(Failure::Input(format!(
                "--scheme original does not take {}",
                given.join(", ")
            )));
        }
        return Ok(SchemeDescriptor::original(sap));
    }
    let pss_kind = args.pss.unwrap_or(PssArg::Random);
    if args.pss_file.is_some() && pss_kind != PssArg::Pinned {
        return Err(Failure::Input("--pss-file requires --pss pinned".into()));
    }
    let perm_kind = args.perm.unwrap_or(PermArg::Identity);
    if args.perm_file.is_some() && perm_kind != PermArg::Pinned {
        return Err(Failure::Input("--perm-file requires --perm pinned".into()));
    }
    let pss = match pss_kind {
        PssArg::Random => PssSource::Random {
            alphabet: alphabet(args.pss_alphabet),
            first_all_ones: args.first_all_ones,
        },
        PssArg::Hadamard => PssSource::CyclicHadamard,
        PssArg::Pinned => PssSource::Pinned(pinned_pss(args.pss_file.as_ref())?),
    };
    let perm = match perm_kind {
        PermArg::Identity => PermSource::Identity,
        PermArg::Random => PermSource::Random { first_identity: args.first_identity },
        PermArg::Pinned => PermSource::Pinned(pinned_perms(args.perm_file.as_ref(), cfg)?),
    };
    let u = match (args.u, &pss) {
        (Some(u), _) => u,
        (None, PssSource::Pinned(set)) => set.len(),
        (None, _) => 4,
    };
    Ok(SchemeDescriptor::slm(u, pss, perm, sap)?)
}

pub fn ccdf(args: &CcdfArgs) -> Outcome {
    let cfg = config(&args.config)?;
    let scheme = scheme(args, &cfg)?;
    let grid = gamma_grid(args.gamma_min, args.gamma_max, args.gamma_step)?;
    let plan = TrialPlan::new(cfg, scheme, args.trials, args.seed, grid)?
        .with_oversampling(args.oversample)?;
    if args.workers == Some(0) {
        return Err(Failure::Input("--workers must be at least 1".into()));
    }
    let echo = plan.echo()?;
    let sidecar = args.out.with_extension("json");
    if sidecar == args.out {
        return Err(Failure::Input("--out must not have a .json extension".into()));
    }
    let mut csv_file = create_output(&args.out)?;
    let mut json_file = create_output(&sidecar)?;

    let curve = match args.workers {
        Some(w) => run_ccdf_with_workers(&plan, w)?,
        None => run_ccdf(&plan)?,
    };
    write_to(&mut csv_file, &args.out, &curve.to_csv())?;
    let json = serde_json::to_string_pretty(&echo).expect("serializable") + "\n";
    write_to(&mut json_file, &sidecar, &json)?;
    println!(
        "wrote {} ({} points, {} trials, floor {})",
        args.out.display(),
        curve.len(),
        curve.trials,
        format_sig9(curve.resolution_floor())
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct PermReport {
    n_fft: usize,
    u: usize,
    pairs: Vec<MuReport>,
    mean_mu: f64,
    min_mu: f64,
    max_mu: f64,
}

pub fn analyze_perm(args: &AnalyzePermArgs) -> Outcome {
    let cfg = config(&args.config)?;
    let set = match (&args.perm_file, args.perm) {
        (Some(path), _) => perms_from_json(&read_input(path)?, &cfg)?,
        (None, PermArg::Pinned) => return Err(Failure::Input("--perm pinned requires --perm-file".into())),
        (None, PermArg::Identity) => PermutationSet::identity(cfg.n_fft(), args.u),
        (None, PermArg::Random) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let spec = PermSpec::Random { first_identity: args.first_identity };
            gen_perm_set(&cfg, args.u, &spec, &mut rng)?
        }
    };
    let pairs = mu_pairwise(&set, &cfg)?;
    let mus: Vec<f64> = pairs.iter().map(|p| p.mu).collect();
    let report = PermReport {
        n_fft: cfg.n_fft(),
        u: set.len(),
        mean_mu: mus.iter().sum::<f64>() / mus.len() as f64,
        min_mu: mus.iter().copied().fold(f64::INFINITY, f64::min),
        max_mu: mus.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        pairs,
    };
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))
}

pub fn analyze_pss(args: &AnalyzePssArgs) -> Outcome {
    let cfg = config(&args.config)?;
    let (a, b) = args.pair;
    let needed = a.max(b) + 1;
    let set = match args.pss {
        PssArg::Hadamard => gen_hadamard_pss(&cfg, needed)?,
        PssArg::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            gen_random_pss(&cfg, needed, alphabet(args.pss_alphabet), false, &mut rng)?
        }
        PssArg::Pinned => pinned_pss(args.pss_file.as_ref())?,
    };
    if needed > set.len() {
        return Err(Failure::Input(format!(
            "pair ({a}, {b}) is out of range for {} sequences",
            set.len()
        )));
    }
    if set.seq_len() != cfg.n_fft() {
        return Err(Failure::Input(format!(
            "phase sequences have length {}, N = {}",
            set.seq_len(),
            cfg.n_fft()
        )));
    }
    let sap = match &args.sap_file {
        Some(path) => {
            let active: Vec<usize> = serde_json::from_str(&read_input(path)?)
                .map_err(|e| Failure::Input(format!("malformed SAP file: {e}")))?;
            Some(Sap::from_active(&cfg, active)?)
        }
        None if args.random_sap => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            rng.set_stream(1);
            Some(sample_random_sap(&cfg, &mut rng))
        }
        None => None,
    };
    let spectrum = punctured_spectrum(set.get(a), set.get(b), sap.as_ref())?;
    let bound = spectrum.bound();
    let mut csv = String::from("m,full,punctured,bound\n");
    for m in 0..cfg.n_fft() {
        csv.push_str(&format!(
            "{m},{},{},{}\n",
            format_sig9(spectrum.full[m]),
            format_sig9(spectrum.punctured[m]),
            format_sig9(bound)
        ));
    }
    emit(args.out.as_deref(), &csv)?;
    let summary = format!(
        "c = {}, max punctured = {}, bound = {}",
        format_sig9(spectrum.c),
        format_sig9(spectrum.max_punctured()),
        format_sig9(bound)
    );
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn verify_var_rho(args: &VerifyVarRhoArgs) -> Outcome {
    let cfg = config(&args.config)?;
    if args.trials == 0 {
        return Err(Failure::Input("--trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let empirical = var_rho_empirical_many(&cfg, &args.lags, args.trials, &mut rng);
    let mut csv = String::from("m,analytic,empirical,rel_error\n");
    for (&m, &emp) in args.lags.iter().zip(&empirical) {
        let analytic = var_rho_closed_form(&cfg, m);
        let rel = if analytic == 0.0 {
            "nan".to_string()
        } else {
            format_sig9((emp - analytic).abs() / analytic)
        };
        csv.push_str(&format!("{m},{},{},{rel}\n", format_sig9(analytic), format_sig9(emp)));
    }
    emit(args.out.as_deref(), &csv)
}

pub fn gen_pss(args: &GenPssArgs) -> Outcome {
    let cfg = config(&args.config)?;
    let set = match args.pss {
        PssArg::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            gen_random_pss(&cfg, args.u, alphabet(args.pss_alphabet), args.first_all_ones, &mut rng)?
        }
        PssArg::Hadamard => gen_hadamard_pss(&cfg, args.u)?,
        PssArg::Pinned => return Err(Failure::Input("gen-pss generates random or hadamard sets".into())),
    };
    emit(Some(&args.out), &(pss_to_json(&set) + "\n"))
}

pub fn gen_perm(args: &GenPermArgs) -> Outcome {
    let cfg = config(&args.config)?;
    let spec = match args.perm {
        PermArg::Identity => PermSpec::Identity,
        PermArg::Random => PermSpec::Random { first_identity: args.first_identity },
        PermArg::Pinned => return Err(Failure::Input("gen-perm generates identity or random sets".into())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let set = gen_perm_set(&cfg, args.u, &spec, &mut rng)?;
    emit(Some(&args.out), &(perms_to_json(&set, &cfg) + "\n"))
}
