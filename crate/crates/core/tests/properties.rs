use rayon::prelude::*;

use qcorr::canonical::{bloch_modulus, canonical_state, monogamy_residual_direct, trace_relations};
use qcorr::measures::{
    binary_entropy, geometric_discord_closed, geometric_discord_oracle, min_hs_closed, min_hs_oracle, negativity,
    quantum_discord,
};
use qcorr::monogamy::{averages, multiqubit_bell_sum, nosignaling_sum, CheckOptions, MonogamyReport};
use qcorr::sampling::{ginibre_mixed_with, haar_pure_with, random_canonical_with, stream, Family, SampleSpec};
use qcorr::{DensityMatrix, Direction, PureState, SearchOptions};

fn haar(qubits: usize, seed: u64, i: usize) -> PureState {
    haar_pure_with(&mut stream(seed, i as u64), qubits)
}

fn max_over(count: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
    (0..count).into_par_iter().map(f).reduce(|| f64::NEG_INFINITY, f64::max)
}

#[test]
fn trace_relations_hold_for_random_pure_states() {
    let worst = max_over(100, |i| {
        let r = trace_relations(&haar(3, 1, i)).unwrap();
        r.ab.gap().max(r.ac.gap())
    });
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn canonical_draws_satisfy_min_monogamy() {
    let worst = max_over(10_000, |i| {
        let p = random_canonical_with(&mut stream(2, i as u64));
        monogamy_residual_direct(&canonical_state(&p)).unwrap()
    });
    assert!(worst <= 1e-12, "{worst}");
}

struct PureMonogamy {
    negativity: f64,
    geometric: f64,
    discord_sq: f64,
    one_minus_a_sq: f64,
    h_sq: f64,
}

fn pure_monogamy(psi: &PureState) -> PureMonogamy {
    let rho = psi.density();
    let search = SearchOptions::default();
    let mut out = PureMonogamy { negativity: 0.0, geometric: 0.0, discord_sq: 0.0, one_minus_a_sq: 0.0, h_sq: 0.0 };
    for other in [1, 2] {
        let pair = rho.partial_trace(&[0, other]).unwrap();
        out.negativity += negativity(&pair, &[0]).unwrap().value.powi(2);
        out.geometric += geometric_discord_closed(&pair, Direction::AToB).unwrap().value;
        out.discord_sq += quantum_discord(&pair, 0, &search).unwrap().value.powi(2);
    }
    let a = bloch_modulus(psi, 0).unwrap().min(1.0);
    out.one_minus_a_sq = 1.0 - a * a;
    out.h_sq = binary_entropy(a).unwrap().powi(2);
    out
}

#[test]
fn pure_states_obey_derived_monogamy_relations() {
    let reports: Vec<_> = (0..1000).into_par_iter().map(|i| pure_monogamy(&haar(3, 3, i))).collect();
    for r in &reports {
        assert!(r.negativity <= r.one_minus_a_sq + 1e-9);
        assert!(r.geometric <= r.one_minus_a_sq / 2.0 + 1e-6);
        assert!(r.discord_sq <= r.one_minus_a_sq + 1e-6);
    }
}

// Two readings of the squared-discord bound. 1 − a² follows from the chain and
// holds everywhere; h(a)², the squared joint discord, fails on some states. The
// largest excess here (about 2e-3) was reproduced by a dense-grid search in numpy.
#[test]
fn squared_discord_bound_readings() {
    let excess: Vec<(f64, f64)> = (0..1000)
        .into_par_iter()
        .map(|i| {
            let r = pure_monogamy(&haar(3, 4, i));
            (r.discord_sq - r.one_minus_a_sq, r.discord_sq - r.h_sq)
        })
        .collect();
    let chain = excess.iter().map(|e| e.0).fold(f64::NEG_INFINITY, f64::max);
    let entropy = excess.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
    assert!(chain <= 1e-6, "1 − a² reading exceeded by {chain}");
    assert!((entropy - 2.0118e-3).abs() < 1e-6, "h(a)² reading: largest excess {entropy}");
}

#[test]
fn geometric_discord_never_exceeds_min() {
    let search = SearchOptions::default();
    let worst = max_over(2000, |i| {
        let rho = ginibre_mixed_with(&mut stream(5, i as u64), 2, 1 + i % 4).unwrap();
        let mut gap = f64::NEG_INFINITY;
        for (q, dir) in [(0, Direction::AToB), (1, Direction::BToA)] {
            let dg = geometric_discord_closed(&rho, dir).unwrap().value;
            let dm = min_hs_closed(&rho, dir).unwrap().value;
            gap = gap.max(dg - dm);
            let dg_oracle = geometric_discord_oracle(&rho, q, &search).unwrap().value;
            let dm_oracle = min_hs_oracle(&rho, q, &search).unwrap().value;
            assert!((dg - dg_oracle).abs() <= 1e-6, "D_G closed {dg} vs oracle {dg_oracle}");
            assert!((dm - dm_oracle).abs() <= 1e-6, "D_M closed {dm} vs oracle {dm_oracle}");
        }
        gap
    });
    assert!(worst <= 1e-12, "{worst}");
}

#[test]
fn multi_qubit_bell_sum_on_random_pure_states() {
    let opts = CheckOptions::default();
    for n in [4, 5] {
        let worst =
            max_over(1000, |i| multiqubit_bell_sum(&haar(n, 6 + n as u64, i).density(), 0, &opts).unwrap().residual);
        assert!(worst <= 1e-9, "n = {n}: {worst}");
    }
}

#[test]
fn nosignaling_and_averages_on_random_states() {
    let opts = CheckOptions::default();
    let failures = (0..300)
        .into_par_iter()
        .filter(|&i| {
            let rho = haar(4, 12, i).density();
            let pivot = i % 4;
            !nosignaling_sum(&rho, pivot, &opts).unwrap().satisfied || !averages(&rho, pivot, &opts).unwrap().satisfied
        })
        .count();
    assert_eq!(failures, 0);
}

type Checker = fn(&DensityMatrix, usize, &CheckOptions) -> qcorr::Result<MonogamyReport>;

fn sorted_terms(r: &MonogamyReport) -> Vec<f64> {
    let mut v: Vec<f64> = r.terms.iter().map(|t| t.value).collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn relabeling_non_pivot_parties_keeps_terms() {
    let opts = CheckOptions::default();
    for i in 0..20 {
        let rho = ginibre_mixed_with(&mut stream(13, i), 4, 3).unwrap();
        // pivot stays at position 1, partners 0, 2, 3 are shuffled
        let permuted = rho.partial_trace(&[3, 1, 0, 2]).unwrap();
        let checks: [Checker; 3] = [multiqubit_bell_sum, nosignaling_sum, averages];
        for check in checks {
            let a = check(&rho, 1, &opts).unwrap();
            let b = check(&permuted, 1, &opts).unwrap();
            for (x, y) in sorted_terms(&a).iter().zip(sorted_terms(&b)) {
                assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
            }
            assert!((a.residual - b.residual).abs() <= 1e-12);
        }
    }
}

#[test]
fn sweeps_are_independent_of_worker_count() {
    let spec = SampleSpec { family: Family::GinibreMixed, qubit_count: 3, rank: Some(3), seed: 77, count: 64 };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            (0..spec.count)
                .into_par_iter()
                .map(|i| qcorr::io::state_to_json(&spec.sample(i).unwrap().state))
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}
