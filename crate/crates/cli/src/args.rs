use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// OFDM-IM selected-mapping experiments and analysis.
///
/// Symbol mapping of flags: N = --n-fft, n = --group-size, k = --active,
/// M = --mod-order, U = --u.
#[derive(Debug, Parser)]
#[command(name = "ofdmim-slm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the PAPR CCDF of one scheme arm.
    Ccdf(CcdfArgs),
    /// Report the permutation metric μ of a permutation set.
    AnalyzePerm(AnalyzePermArgs),
    /// Full and punctured cross-correlation spectra of a PSS pair.
    AnalyzePss(AnalyzePssArgs),
    /// Compare the closed-form variance of ρ_I(m) with simulation.
    VerifyVarRho(VerifyVarRhoArgs),
    /// Write a phase sequence set as JSON for pinning.
    GenPss(GenPssArgs),
    /// Write a permutation set as JSON for pinning.
    GenPerm(GenPermArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Number of subcarriers N.
    #[arg(long, default_value_t = 64)]
    pub n_fft: usize,
    /// Subcarriers per group n.
    #[arg(long, default_value_t = 16)]
    pub group_size: usize,
    /// Active subcarriers per group k.
    #[arg(long, default_value_t = 2)]
    pub active: usize,
    /// Constellation order M.
    #[arg(long, default_value_t = 4)]
    pub mod_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Original,
    Slm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PssArg {
    Random,
    Hadamard,
    Pinned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PermArg {
    Identity,
    Random,
    Pinned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphabetArg {
    Binary,
    Quaternary,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SapSourceArg {
    Uniform,
    Bits,
}

#[derive(Debug, Args)]
pub struct CcdfArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = SchemeArg::Slm)]
    pub scheme: SchemeArg,
    /// Number of candidates U [slm default: 4].
    #[arg(long)]
    pub u: Option<usize>,
    /// Phase sequence source [slm default: random].
    #[arg(long, value_enum)]
    pub pss: Option<PssArg>,
    #[arg(long)]
    pub pss_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Quaternary)]
    pub pss_alphabet: AlphabetArg,
    /// Force the first random phase sequence to all ones.
    #[arg(long)]
    pub first_all_ones: bool,
    /// Permutation source [slm default: identity].
    #[arg(long, value_enum)]
    pub perm: Option<PermArg>,
    #[arg(long)]
    pub perm_file: Option<PathBuf>,
    /// Force the first random permutation to the identity.
    #[arg(long)]
    pub first_identity: bool,
    #[arg(long, value_enum, default_value_t = SapSourceArg::Uniform)]
    pub sap_source: SapSourceArg,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// CSV output; the plan is written next to it with a .json extension.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 4.0)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 13.0)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma_step: f64,
    /// Worker threads; does not affect the output.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Oversampling factor of the PAPR measurement (power of two).
    #[arg(long, default_value_t = 1)]
    pub oversample: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzePermArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Permutation set JSON; when absent the set is generated.
    #[arg(long)]
    pub perm_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PermArg::Random)]
    pub perm: PermArg,
    #[arg(long, default_value_t = 2)]
    pub u: usize,
    #[arg(long)]
    pub first_identity: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// JSON report path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzePssArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = PssArg::Hadamard)]
    pub pss: PssArg,
    #[arg(long)]
    pub pss_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Quaternary)]
    pub pss_alphabet: AlphabetArg,
    /// Indices of the two sequences, e.g. `1,2`.
    #[arg(long, value_parser = parse_pair, default_value = "1,2")]
    pub pair: (usize, usize),
    /// JSON array of active subcarrier indices.
    #[arg(long)]
    pub sap_file: Option<PathBuf>,
    /// Puncture with a uniformly drawn activation pattern.
    #[arg(long, conflicts_with = "sap_file")]
    pub random_sap: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// CSV output path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyVarRhoArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 3, 7, 16, 32])]
    pub lags: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenPssArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = PssArg::Random)]
    pub pss: PssArg,
    #[arg(long, default_value_t = 4)]
    pub u: usize,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Quaternary)]
    pub pss_alphabet: AlphabetArg,
    #[arg(long)]
    pub first_all_ones: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenPermArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = PermArg::Random)]
    pub perm: PermArg,
    #[arg(long, default_value_t = 4)]
    pub u: usize,
    #[arg(long)]
    pub first_identity: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text.split_once(',').ok_or("expected two indices as `a,b`")?;
    let index = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("bad index {s:?}: {e}"));
    Ok((index(a)?, index(b)?))
}
