//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p qcorr-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

use qcorr::canonical::{bipartition_identities, monogamy_residual_closed, monogamy_residual_direct};
use qcorr::measures::{
    binary_entropy, chsh_value, geometric_discord_closed, horodecki, local_bloch_vector, min_hs_closed, negativity,
    quantum_discord,
};
use qcorr::monogamy::{
    check_bell_monogamy, check_chain_mixed, check_min_pure, counterexample, evaluate_counterexample,
    multiqubit_bell_sum, CheckOptions, Counterexample,
};
use qcorr::sampling::{generalized_ghz, ginibre_mixed_with, haar_pure_with, random_canonical_with, stream};
use qcorr::{DensityMatrix, Direction, PureState, SearchOptions};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn within(elapsed: Duration, limit: Duration, outcome: Outcome) -> Outcome {
    let pass = outcome.pass && elapsed < limit;
    let detail = format!("{}, {:.2} s (limit {} s)", outcome.detail, elapsed.as_secs_f64(), limit.as_secs());
    Outcome { pass, detail }
}

fn max_of(values: impl ParallelIterator<Item = f64>) -> f64 {
    values.reduce(|| f64::NEG_INFINITY, f64::max)
}

fn haar3(seed: u64, i: usize) -> PureState {
    haar_pure_with(&mut stream(seed, i as u64), 3)
}

fn two_qubit_mixed(seed: u64, i: usize) -> DensityMatrix {
    ginibre_mixed_with(&mut stream(seed, i as u64), 2, 1 + i % 4).unwrap()
}

/// Spin-flip average `½(ρ + (σ_y⊗σ_y)ρ*(σ_y⊗σ_y))`: keeps `T`, zeroes both Bloch vectors.
fn spin_flip_average(rho: &DensityMatrix) -> DensityMatrix {
    let y = qcorr::linalg::to_dynamic(&qcorr::linalg::pauli(1));
    let yy = qcorr::linalg::kron(&y, &y);
    let flipped = &yy * rho.matrix().conjugate() * &yy;
    DensityMatrix::new((rho.matrix() + flipped) * Complex64::from(0.5)).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let case = counterexample(Counterexample::MixedGhz3).unwrap();
    let report = evaluate_counterexample(&case, &SearchOptions::default()).unwrap();
    let pair_dev = ["DM_AB", "DM_AC"].iter().map(|t| report.row(t).unwrap().deviation).fold(0.0, f64::max);
    let joint_dev = report.row("DM_A_BC").unwrap().deviation;
    let chain = check_chain_mixed(&case.state, &CheckOptions::default()).unwrap();
    let flagged = chain.flag("min_pure_violated") == Some(true);
    let outcome = Outcome::new(
        pair_dev <= 1e-12 && joint_dev <= 1e-5 && flagged,
        format!("pair dev {pair_dev:.1e}, joint dev {joint_dev:.1e}, sum > joint flagged: {flagged}"),
    );
    within(start.elapsed(), Duration::from_secs(1), outcome)
}

fn criterion_2() -> Outcome {
    let case = counterexample(Counterexample::Saturating3).unwrap();
    let psi = case.pure.as_ref().unwrap();
    let search = SearchOptions::default();
    let pure = check_min_pure(psi, &CheckOptions::default()).unwrap();
    let joint = qcorr::measures::min_hs_oracle(&case.state, 0, &search).unwrap().value;
    let dm_sum = pure.term("DM_AB").unwrap() + pure.term("DM_AC").unwrap();
    let bell = check_bell_monogamy(&case.state, &CheckOptions::default()).unwrap();
    let m_sum = bell.term("M_AB").unwrap() + bell.term("M_AC").unwrap();
    let dev_dm = (dm_sum - 0.5).abs().max((joint - 0.5).abs());
    let dev_m = (m_sum - 2.0).abs();
    Outcome::new(
        dev_dm <= 1e-9 && dev_m <= 1e-10,
        format!("D_M sum {dm_sum:.12}, joint {joint:.12}, M sum {m_sum:.12}"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let opts = CheckOptions { tolerance: Some(1e-12), ..CheckOptions::default() };
    let violations =
        (0..10_000usize).into_par_iter().filter(|&i| !check_min_pure(&haar3(31, i), &opts).unwrap().satisfied).count();
    let (agree, checked) = (0..1000usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(32, i as u64);
            loop {
                let p = random_canonical_with(&mut rng);
                if p.alice_bloch().norm() > 0.05 {
                    let closed = monogamy_residual_closed(&p).unwrap();
                    let direct = monogamy_residual_direct(&qcorr::canonical::canonical_state(&p)).unwrap();
                    return (closed - direct).abs();
                }
            }
        })
        .fold(|| (0.0f64, 0usize), |(m, n), d| (m.max(d), n + 1))
        .reduce(|| (0.0, 0), |(a, n), (b, k)| (a.max(b), n + k));
    let outcome = Outcome::new(
        violations == 0 && agree <= 1e-9,
        format!("{violations} violations in 10000 states, closed vs direct max gap {agree:.1e} over {checked} draws"),
    );
    within(start.elapsed(), Duration::from_secs(60), outcome)
}

fn criterion_4() -> Outcome {
    let search = SearchOptions { grid_points: 1000, refine_iters: 200, ..SearchOptions::default() };
    let spread = max_of(
        (0..1000usize).into_par_iter().map(|i| bipartition_identities(&haar3(41, i), &search).unwrap().spread()),
    );
    Outcome::new(spread <= 1e-6, format!("max spread {spread:.1e} over 1000 states"))
}

fn criterion_5() -> Outcome {
    let search = SearchOptions::default();
    let worst = max_of((0..10_000usize).into_par_iter().map(|i| {
        let rho = two_qubit_mixed(51, i);
        let n = negativity(&rho, &[0]).unwrap().value;
        let d = quantum_discord(&rho, 0, &search).unwrap().value;
        let dg = geometric_discord_closed(&rho, Direction::AToB).unwrap().value;
        let dm = min_hs_closed(&rho, Direction::AToB).unwrap().value;
        let m = horodecki(&rho).unwrap().value.value;
        [n * n - 2.0 * dg, d * d - 2.0 * dg, dg - dm, 2.0 * dm - 0.5 * m].into_iter().fold(f64::NEG_INFINITY, f64::max)
    }));
    Outcome::new(worst <= 1e-6, format!("largest rung gap {worst:.1e} over 10000 states"))
}

fn criterion_6() -> Outcome {
    let worst = max_of((0..10_000usize).into_par_iter().map(|i| {
        let rho = two_qubit_mixed(61, i);
        let m = horodecki(&rho).unwrap().value.value;
        let ab = min_hs_closed(&rho, Direction::AToB).unwrap().value;
        let ba = min_hs_closed(&rho, Direction::BToA).unwrap().value;
        ab.max(ba) - m / 4.0
    }));
    let equality = max_of((0..1000usize).into_par_iter().map(|i| {
        let rho = spin_flip_average(&two_qubit_mixed(62, i));
        assert!(local_bloch_vector(&rho, 0).unwrap().norm() < 1e-12);
        let m = horodecki(&rho).unwrap().value.value;
        (min_hs_closed(&rho, Direction::AToB).unwrap().value - m / 4.0).abs()
    }));
    Outcome::new(
        worst <= 1e-10 && equality <= 1e-10,
        format!("max D_M − M/4 {worst:.1e} over 10000 states, a = 0 equality gap {equality:.1e} over 1000"),
    )
}

fn criterion_7() -> Outcome {
    let case = counterexample(Counterexample::GenGhz(0.75f64.sqrt())).unwrap();
    let report = evaluate_counterexample(&case, &SearchOptions::default()).unwrap();
    let cut = report.row("M_A_BC").unwrap();
    let pair_sum = report.row("M_AB").unwrap().computed + report.row("M_AC").unwrap().computed;
    let mut saturation: f64 = 0.0;
    for n in [4, 5] {
        for alpha in [0.3, 0.75f64.sqrt(), 0.9] {
            let rho = generalized_ghz(n, alpha).unwrap().density();
            let r = multiqubit_bell_sum(&rho, 0, &CheckOptions::default()).unwrap();
            saturation = saturation.max(r.residual.abs());
        }
    }
    Outcome::new(
        (cut.computed - 1.75).abs() <= 1e-9 && (pair_sum - 2.0).abs() <= 1e-10 && saturation <= 1e-10,
        format!("M(A:BC) {:.12}, M(AB) + M(AC) {pair_sum:.12}, n = 4, 5 saturation gap {saturation:.1e}", cut.computed),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let (bell_violations, chain_violations) = (0..10_000usize)
        .into_par_iter()
        .map(|i| {
            let rho = ginibre_mixed_with(&mut stream(81, i as u64), 3, 1 + i % 8).unwrap();
            let bell = check_bell_monogamy(&rho, &opts).unwrap();
            let chain = check_chain_mixed(&rho, &opts).unwrap();
            (usize::from(!bell.satisfied), usize::from(!chain.satisfied))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let outcome = Outcome::new(
        bell_violations == 0 && chain_violations == 0,
        format!("{bell_violations} Bell and {chain_violations} chain violations over 10000 states"),
    );
    within(start.elapsed(), Duration::from_secs(300), outcome)
}

fn criterion_9() -> Outcome {
    let case = counterexample(Counterexample::Ghz3ForN1).unwrap();
    let report = evaluate_counterexample(&case, &SearchOptions::default()).unwrap();
    let values: Vec<String> = report.rows.iter().map(|r| format!("{} {:.8}", r.term, r.computed)).collect();
    Outcome::new(report.max_deviation <= 1e-4, format!("{}, max dev {:.1e}", values.join(", "), report.max_deviation))
}

fn criterion_10() -> Outcome {
    let worst = max_of((0..1000usize).into_par_iter().map(|i| {
        let rho = two_qubit_mixed(101, i);
        let h = horodecki(&rho).unwrap();
        let b = chsh_value(&rho, &h.settings).unwrap();
        (b * b - 4.0 * h.value.value).abs()
    }));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = PureState::new(nalgebra::DVector::from_vec(vec![
        Complex64::from(s),
        Complex64::from(0.0),
        Complex64::from(0.0),
        Complex64::from(s),
    ]))
    .unwrap()
    .density();
    let h = horodecki(&bell).unwrap();
    let b = chsh_value(&bell, &h.settings).unwrap();
    let dev = (b - 2.0 * 2f64.sqrt()).abs();
    Outcome::new(
        worst <= 1e-7 && dev <= 1e-9,
        format!("max |B² − 4M| {worst:.1e} over 1000 states, Bell state B = {b:.12}"),
    )
}

fn criterion_11() -> Outcome {
    let search = SearchOptions::default();
    let worst = max_of((0..200usize).into_par_iter().map(|i| {
        let psi = haar3(111, i);
        let rho = psi.density();
        let a = local_bloch_vector(&rho, 0).unwrap().norm().min(1.0);
        let d = quantum_discord(&rho, 0, &search).unwrap().value;
        (d - binary_entropy(a).unwrap()).abs()
    }));
    Outcome::new(worst <= 1e-5, format!("max |D − h(a)| {worst:.1e} over 200 states"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("mixed GHZ counterexample", criterion_1),
        ("saturating state", criterion_2),
        ("pure-state MIN monogamy", criterion_3),
        ("bipartition identities", criterion_4),
        ("two-qubit ordering chain", criterion_5),
        ("MIN ≤ M/4 and a = 0 equality", criterion_6),
        ("generalized GHZ family", criterion_7),
        ("mixed three-qubit chain and Bell monogamy", criterion_8),
        ("trace-norm MIN of GHZ", criterion_9),
        ("Horodecki optimal settings", criterion_10),
        ("discord of pure states", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}  {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
