//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ofdmim_slm::analysis::{mu_metric, punctured_spectrum, var_rho_empirical_many};
use ofdmim_slm::montecarlo::{
    compare_curves, gamma_grid, papr_at_ccdf, run_ccdf, run_ccdf_with_workers, CcdfCurve,
    PermSource, PssSource, SapSource, SchemeDescriptor, TrialPlan,
};
use ofdmim_slm::ofdm_im::combinadic::{binomial, rank, unrank};
use ofdmim_slm::ofdm_im::{idft, sample_random_sap, FrequencyBlock, SystemConfig};
use ofdmim_slm::slm::{
    bipolar, gen_hadamard_pss, gen_mls, gen_perm_set, gen_random_pss, MlsSpec,
    PermSpec, PermutationFunction, PermutationSet, PhaseAlphabet,
};
use ofdmim_slm::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn list(gammas: &[f64]) -> String {
    if gammas.is_empty() {
        return "none".into();
    }
    let items: Vec<String> = gammas.iter().map(|g| format!("{g:.1}")).collect();
    format!("[{}] dB", items.join(", "))
}

fn cfg(active: usize) -> SystemConfig {
    SystemConfig::new(64, 16, active, 4).unwrap()
}

fn random_pss() -> PssSource {
    PssSource::Random { alphabet: PhaseAlphabet::Quaternary, first_all_ones: false }
}

fn run(active: usize, scheme: SchemeDescriptor, trials: u64, seed: u64) -> CcdfCurve {
    let grid = gamma_grid(4.0, 13.0, 0.1).unwrap();
    let plan = TrialPlan::new(cfg(active), scheme, trials, seed, grid).unwrap();
    run_ccdf(&plan).unwrap()
}

fn slm(u: usize, pss: PssSource, perm: PermSource) -> SchemeDescriptor {
    SchemeDescriptor::slm(u, pss, perm, SapSource::Uniform).unwrap()
}

fn var_rho() -> Outcome {
    let lags = [1, 3, 7, 16, 32];
    let mut worst_rel = 0.0f64;
    let mut worst_zero = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for k in [2, 4, 8, 14] {
        let cfg = cfg(k);
        let emp = var_rho_empirical_many(&cfg, &lags, 100_000, &mut rng);
        let closed = (1.0 / 64.0) * (16.0 / 15.0) * (16.0 / k as f64 - 1.0);
        for (&m, &v) in lags.iter().zip(&emp) {
            if m % 16 == 0 {
                worst_zero = worst_zero.max(v);
            } else {
                worst_rel = worst_rel.max((v - closed).abs() / closed);
            }
        }
    }
    outcome(
        worst_rel < 0.05 && worst_zero < 1e-20,
        format!("max rel error {worst_rel:.4}, max variance at m=16,32 {worst_zero:.3e}"),
    )
}

fn mu_anchor() -> Outcome {
    let cfg = cfg(2);
    let id = PermutationFunction::identity(64);
    let mu = mu_metric(&id, &id, &cfg).unwrap().mu;
    // direct evaluation of the grid for the identity pair
    let n = 64usize;
    let mut values = Vec::with_capacity(n * n);
    for m in 0..n {
        for l in 0..n {
            let s: Complex64 = (0..n)
                .map(|i| Complex64::from_polar(1.0, 2.0 * PI * (i * (m + n - l) % n) as f64 / n as f64))
                .sum();
            values.push(s.norm());
        }
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let oracle = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    outcome(
        (mu - 63.0).abs() < 1e-9 && (oracle - 63.0).abs() < 1e-9 && (mu - 63.01).abs() < 0.1,
        format!("mu = {mu:.9}, direct = {oracle:.9}, |mu - 63.01| = {:.3}", (mu - 63.01).abs()),
    )
}

fn permutation_ordering() -> Outcome {
    let trials = 1_000_000;
    let mut gaps = Vec::new();
    let mut dominance = None;
    for (k, seed) in [(2, 301), (14, 302)] {
        let without = run(k, slm(4, random_pss(), PermSource::Identity), trials, seed);
        let with = run(
            k,
            slm(4, random_pss(), PermSource::Random { first_identity: false }),
            trials,
            seed,
        );
        let cmp = compare_curves(&with, &without, &[1e-2]).unwrap();
        let gap = -cmp.gaps[0].1.expect("1e-2 is resolvable at 1e6 trials");
        gaps.push(gap);
        if k == 2 {
            dominance = Some((cmp.dominance(100, 0.0), cmp.dominance(100, 2.0)));
        }
    }
    let (d, noisy) = dominance.unwrap();
    outcome(
        d.holds && gaps[0] > gaps[1] && gaps[1].abs() < 0.15,
        format!(
            "k=2 strict dominance over {} points: violations at {}, worst z {:.2}, within 2 sigma: {}; gap k=2 {:.3} dB, gap k=14 {:.3} dB",
            d.resolvable_points,
            list(&d.violations),
            d.worst_z,
            noisy.holds,
            gaps[0],
            gaps[1]
        ),
    )
}

fn slm_gain() -> Outcome {
    let trials = 100_000;
    let original = run(14, SchemeDescriptor::original(SapSource::Uniform), trials, 401);
    let reduced = run(14, slm(4, random_pss(), PermSource::Identity), trials, 401);
    let gain = papr_at_ccdf(&original, 1e-2).unwrap() - papr_at_ccdf(&reduced, 1e-2).unwrap();
    outcome(gain >= 2.0, format!("gain at 1e-2 = {gain:.3} dB"))
}

fn hadamard_vs_random() -> Outcome {
    let trials = 1_000_000;
    let hadamard = run(14, slm(4, PssSource::CyclicHadamard, PermSource::Identity), trials, 501);
    let random = run(14, slm(4, random_pss(), PermSource::Identity), trials, 501);
    let d = compare_curves(&hadamard, &random, &[]).unwrap().dominance(100, 2.0);
    outcome(
        d.holds,
        format!(
            "{} resolvable points, {} beyond 2 sigma, worst z = {:.2}",
            d.resolvable_points,
            d.violations.len(),
            d.worst_z
        ),
    )
}

fn bound() -> Outcome {
    let cfg = cfg(2);
    let pss = gen_hadamard_pss(&cfg, 3).unwrap();
    let (p1, p2) = (pss.get(1), pss.get(2));
    let n = 64;
    let cross: Vec<Complex64> = (0..n).map(|i| p1.values()[i] * p2.values()[i].conj()).collect();
    let spectrum = |idx: &mut dyn Iterator<Item = usize>, m: usize| {
        idx.map(|i| cross[i] * Complex64::from_polar(1.0, 2.0 * PI * (i * m % n) as f64 / n as f64))
            .sum::<Complex64>()
            .norm()
            / n as f64
    };
    let c = (0..n).map(|m| spectrum(&mut (0..n), m)).fold(0.0, f64::max);
    let limit = c + 1.0 - 2.0 / 16.0;
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut violations = 0;
    let mut worst = 0.0f64;
    let mut disagreement = 0.0f64;
    for _ in 0..100 {
        let sap = sample_random_sap(&cfg, &mut rng);
        let lib = punctured_spectrum(p1, p2, Some(&sap)).unwrap();
        for m in 0..n {
            let direct = spectrum(&mut sap.active().iter().copied(), m);
            disagreement = disagreement.max((direct - lib.punctured[m]).abs());
            worst = worst.max(direct);
            if direct > limit {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0 && disagreement < 1e-12,
        format!("c = {c:.6}, bound {limit:.6}, max punctured {worst:.6}, {violations} violations"),
    )
}

fn oracles() -> Outcome {
    let n = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut dft_err = 0.0f64;
    let mut parseval_err = 0.0f64;
    for _ in 0..100 {
        let x: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        let fast = idft(&FrequencyBlock::new(x.clone()));
        for t in 0..n {
            let slow: Complex64 = (0..n)
                .map(|i| x[i] * Complex64::from_polar(1.0, 2.0 * PI * (i * t) as f64 / n as f64))
                .sum::<Complex64>()
                / (n as f64).sqrt();
            dft_err = dft_err.max((slow - fast.samples()[t]).norm());
        }
        let ef: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let et: f64 = fast.samples().iter().map(|z| z.norm_sqr()).sum();
        parseval_err = parseval_err.max((ef - et).abs());
    }
    let total = binomial(16, 2).unwrap();
    let mut round_trips = 0;
    let mut seen = Vec::new();
    for r in 0..total {
        let subset = unrank(16, 2, r);
        if rank(16, &subset) == r && subset.len() == 2 && subset[0] < subset[1] {
            round_trips += 1;
        }
        seen.push(subset);
    }
    seen.dedup();
    let exhaustive = round_trips == 120 && total == 120 && seen.len() == 120;
    outcome(
        dft_err < 1e-9 && parseval_err < 1e-9 && exhaustive,
        format!("IDFT max error {dft_err:.2e}, Parseval max error {parseval_err:.2e}, {round_trips}/120 combinadic round trips"),
    )
}

fn mls() -> Outcome {
    let mut failures = Vec::new();
    for m in 3..=8 {
        let seq = bipolar(&gen_mls(&MlsSpec::builtin(m).unwrap()).unwrap());
        let period = (1usize << m) - 1;
        let ok_len = seq.len() == period;
        let ok_period = (1..period).all(|s| (0..period).any(|i| seq[i] != seq[(i + s) % period]));
        let ok_acf = (1..period).all(|s| {
            (0..period).map(|i| seq[i] as i32 * seq[(i + s) % period] as i32).sum::<i32>() == -1
        });
        if !(ok_len && ok_period && ok_acf) {
            failures.push(m);
        }
    }
    outcome(failures.is_empty(), format!("degrees 3..=8, failing degrees {failures:?}"))
}

fn determinism() -> Outcome {
    let scheme = slm(4, random_pss(), PermSource::Random { first_identity: false });
    let grid = gamma_grid(4.0, 13.0, 0.1).unwrap();
    let plan = TrialPlan::new(cfg(2), scheme, 50_000, 901, grid).unwrap();
    let csv: Vec<String> = [1, 2, 8]
        .iter()
        .map(|&w| run_ccdf_with_workers(&plan, w).unwrap().to_csv())
        .collect();
    outcome(
        csv[0] == csv[1] && csv[1] == csv[2],
        format!("CSV lengths {:?} bytes", csv.iter().map(String::len).collect::<Vec<_>>()),
    )
}

fn mu_performance() -> Outcome {
    let cfg = cfg(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let pss = gen_random_pss(&cfg, 2, PhaseAlphabet::Quaternary, false, &mut rng).unwrap();
    let identity = PermutationSet::identity(64, 2);
    let permuted = gen_perm_set(&cfg, 2, &PermSpec::Random { first_identity: true }, &mut rng).unwrap();
    let mu = mu_metric(permuted.get(0), permuted.get(1), &cfg).unwrap().mu;
    let scheme = |perms: PermutationSet| {
        slm(2, PssSource::Pinned(pss.clone()), PermSource::Pinned(perms))
    };
    let base = run(2, scheme(identity), 1_000_000, 1002);
    let better = run(2, scheme(permuted), 1_000_000, 1002);
    let cmp = compare_curves(&better, &base, &[1e-2]).unwrap();
    let (d, noisy) = (cmp.dominance(100, 0.0), cmp.dominance(100, 2.0));
    outcome(
        mu <= 25.0 && d.holds,
        format!(
            "pair mu = {mu:.3}, strict dominance over {} points: violations at {}, worst z {:.2}, within 2 sigma: {}; gap {:.3} dB",
            d.resolvable_points,
            list(&d.violations),
            d.worst_z,
            noisy.holds,
            -cmp.gaps[0].1.unwrap_or(f64::NAN)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("variance closed form", var_rho, Some(Duration::from_secs(30))),
        ("mu anchor", mu_anchor, Some(Duration::from_secs(1))),
        ("permutation efficiency ordering", permutation_ordering, Some(Duration::from_secs(600))),
        ("SLM gain", slm_gain, None),
        ("Hadamard vs random PSS", hadamard_vs_random, None),
        ("punctured spectrum bound", bound, None),
        ("oracle equivalence", oracles, None),
        ("MLS properties", mls, None),
        ("determinism", determinism, None),
        ("mu correlates with performance", mu_performance, None),
    ];
    let mut failed = 0;
    for (no, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.2} s{})",
            no + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            out.detail,
            elapsed.as_secs_f64(),
            budget.map_or(String::new(), |b| format!(", budget {} s", b.as_secs())),
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
