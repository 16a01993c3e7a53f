use eprsim_core::channels::{BMesonSpec, FiberSpec, KaonSpec};
use eprsim_core::correlations::{kaon_e_normalized, kaon_r_pp, maximize_s, Choice, CorrelationSystem, Settings4};
use eprsim_core::montecarlo::{
    estimate_chsh, estimate_chsh_with, estimate_e, run_chsh_counts, run_experiment, ExperimentConfig, LhvSource,
    PairSystem, QuantumSource, SettingsSpec,
};
use eprsim_core::state::BlochVector;
use eprsim_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_4;

const PHOTON: PairSystem<f64> = PairSystem::Photon {
    arm_a: None,
    arm_b: None,
};

fn pair(system: PairSystem<f64>, a: f64, b: f64, pairs: u64, efficiency: f64, seed: u64) -> ExperimentConfig<f64> {
    ExperimentConfig {
        system,
        settings: SettingsSpec::Pair { a, b },
        pairs,
        efficiency,
        seed,
    }
}

fn lossy_fiber() -> FiberSpec<f64> {
    FiberSpec::new(
        BlochVector::from_angles(0.3, 1.2).unwrap(),
        0.8,
        BlochVector::from_angles(-0.5, 4.0).unwrap(),
        0.1,
        0.6,
        2.0,
    )
    .unwrap()
}

#[test]
fn equal_settings_never_agree() {
    for a in [0.0, 0.4, 2.0] {
        let c = run_experiment(&pair(PHOTON, a, a, 200_000, 1.0, 3)).unwrap();
        assert_eq!(c.pp, 0);
        assert_eq!(c.mm, 0);
        assert_eq!(c.pm + c.mp, 200_000);
    }
}

#[test]
fn half_efficiency_quarters_coincidences() {
    let n = 1_000_000u64;
    let c = run_experiment(&pair(PHOTON, 0.0, 1.0, n, 0.5, 4)).unwrap();
    let p = 0.25;
    let sigma = (n as f64 * p * (1.0 - p)).sqrt();
    assert!((c.coincidences() as f64 - p * n as f64).abs() < 5.0 * sigma);
    assert_eq!(c.total(), n);
    assert!(c.lost > 0 && c.single_a() > 0 && c.single_b() > 0);
}

#[test]
fn kaon_coincidence_rate_matches_closed_form() {
    let spec = KaonSpec::<f64>::default();
    let n = 1_000_000u64;
    for (ta, tb) in [(0.0, 2.0), (0.5, 1.5), (1.2, 4.0)] {
        let c = run_experiment(&pair(PairSystem::Kaon(spec), ta, tb, n, 1.0, 5)).unwrap();
        let p = kaon_r_pp(ta, tb, &spec).unwrap();
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (c.pp as f64 - p * n as f64).abs() < 5.0 * sigma,
            "N++ = {} expected {}",
            c.pp,
            p * n as f64
        );
        assert_eq!(c.total(), n);
    }
}

#[test]
fn kaon_normalized_estimate_at_two_lifetimes() {
    let spec = KaonSpec::<f64>::default();
    let c = run_experiment(&pair(PairSystem::Kaon(spec), 0.0, 2.0, 1_000_000, 1.0, 6)).unwrap();
    let est = estimate_e(&c).unwrap();
    let exact = kaon_e_normalized(0.0, 2.0, &spec).unwrap();
    assert!(
        (est.value - exact).abs() < 4.0 * est.std_error,
        "{} ± {} vs {exact}",
        est.value,
        est.std_error
    );
}

#[test]
fn bmeson_estimate_matches_cosine() {
    let c = run_experiment(&pair(
        PairSystem::BMeson(BMesonSpec::default()),
        0.3,
        1.5,
        500_000,
        1.0,
        7,
    ))
    .unwrap();
    let est = estimate_e(&c).unwrap();
    assert!((est.value + (0.723f64 * 1.2).cos()).abs() < 4.0 * est.std_error);
}

#[test]
fn fiber_arm_outcomes_match_state_algebra() {
    let fiber = lossy_fiber();
    let system = PairSystem::Photon {
        arm_a: Some(fiber),
        arm_b: Some(fiber.with_length(0.7)),
    };
    let table = system.outcome_table(0.2, 1.1).unwrap().probabilities();
    let n = 1_000_000u64;
    let c = run_experiment(&pair(system, 0.2, 1.1, n, 1.0, 8)).unwrap();
    let observed = [
        [c.pp, c.pm, c.single_a_plus],
        [c.mp, c.mm, c.single_a_minus],
        [c.single_b_plus, c.single_b_minus, c.lost],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let p = table[i][j];
            let sigma = (n as f64 * p * (1.0 - p)).sqrt().max(1.0);
            assert!(
                (observed[i][j] as f64 - p * n as f64).abs() < 5.0 * sigma,
                "cell ({i}, {j})"
            );
        }
    }
}

#[test]
fn deterministic_and_conserving() {
    let system = PairSystem::Photon {
        arm_a: Some(lossy_fiber()),
        arm_b: None,
    };
    let cfg = pair(system, 0.0, 0.9, 123_457, 0.8, 99);
    let a = run_experiment(&cfg).unwrap();
    assert_eq!(a, run_experiment(&cfg).unwrap());
    assert_ne!(a, run_experiment(&ExperimentConfig { seed: 100, ..cfg }).unwrap());
    assert_eq!(a.total(), 123_457);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    assert_eq!(a, pool.install(|| run_experiment(&cfg).unwrap()));
}

#[test]
fn parameter_independence() {
    let settings = Settings4::one_parameter(FRAC_PI_4);
    let system = PairSystem::Photon {
        arm_a: Some(lossy_fiber()),
        arm_b: Some(lossy_fiber()),
    };
    let source = QuantumSource { system, settings };
    let terms = run_chsh_counts(&source, 4_000_000, 0.9, 21).unwrap();
    let frac = |choice_alice: Option<Choice>, choice_bob: Option<Choice>, alice_side: bool| -> Vec<(f64, f64)> {
        terms
            .iter()
            .filter(|t| choice_alice.is_none_or(|c| t.alice == c) && choice_bob.is_none_or(|c| t.bob == c))
            .map(|t| {
                let n = t.counts.total() as f64;
                let k = if alice_side {
                    t.counts.alice_plus()
                } else {
                    t.counts.bob_plus()
                } as f64;
                (k / n, n)
            })
            .collect()
    };
    let z = |slices: Vec<(f64, f64)>| {
        let (p1, n1) = slices[0];
        let (p2, n2) = slices[1];
        let p = (p1 * n1 + p2 * n2) / (n1 + n2);
        (p1 - p2).abs() / (p * (1.0 - p) * (1.0 / n1 + 1.0 / n2)).sqrt()
    };
    for c in [Choice::Unprimed, Choice::Primed] {
        assert!(
            z(frac(Some(c), None, true)) < 5.0,
            "Alice marginal depends on Bob's setting"
        );
        assert!(
            z(frac(None, Some(c), false)) < 5.0,
            "Bob marginal depends on Alice's setting"
        );
    }
}

#[test]
fn lhv_plug_in_respects_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for seed in 0..20 {
        let raw: [f64; 16] = std::array::from_fn(|_| rng.random::<f64>().powi(4));
        let total: f64 = raw.iter().sum();
        let source = LhvSource::new(raw.map(|x| x / total)).unwrap();
        let est = estimate_chsh_with(&source, 200_000, 1.0, seed).unwrap();
        assert!(
            est.abs_s <= 2.0 + 4.0 * est.std_error,
            "|S| = {} ± {}",
            est.abs_s,
            est.std_error
        );
    }
    let mut saturating = [0.0; 16];
    saturating[0] = 1.0;
    let est = estimate_chsh_with(&LhvSource::new(saturating).unwrap(), 1000, 1.0, 1).unwrap();
    assert_eq!(est.s, 2.0);
}

#[test]
fn kaon_chsh_at_optimum() {
    let spec = KaonSpec::<f64>::default();
    let best = maximize_s(&CorrelationSystem::KaonNormalized(spec)).unwrap();
    let cfg = ExperimentConfig {
        system: PairSystem::Kaon(spec),
        settings: SettingsSpec::Chsh(Settings4::one_parameter(best.argmax)),
        pairs: 4_000_000,
        efficiency: 1.0,
        seed: 23,
    };
    let est = estimate_chsh(&cfg).unwrap();
    let tol = (4.0 * est.std_error).max(0.03);
    assert!(
        (est.abs_s - 2.35).abs() < tol,
        "|S| = {} ± {}",
        est.abs_s,
        est.std_error
    );
}

#[test]
fn config_errors() {
    assert!(matches!(
        run_experiment(&pair(PHOTON, 0.0, 0.0, 0, 1.0, 1)),
        Err(Error::InvalidConfig(_))
    ));
    assert!(matches!(
        run_experiment(&pair(PHOTON, 0.0, 0.0, 10, 0.0, 1)),
        Err(Error::InvalidConfig(_))
    ));
    let kaon = PairSystem::Kaon(KaonSpec::default());
    assert!(matches!(
        run_experiment(&pair(kaon, -1.0, 0.0, 10, 1.0, 1)),
        Err(Error::InvalidConfig(_))
    ));
    // An arm that absorbs everything leaves no coincidences.
    let absorber = FiberSpec::aligned(BlochVector::equator(0.0), 0.0, 60.0, 60.0, 1.0).unwrap();
    let c = run_experiment(&pair(
        PairSystem::Photon {
            arm_a: Some(absorber),
            arm_b: None,
        },
        0.0,
        0.0,
        1000,
        1.0,
        1,
    ))
    .unwrap();
    assert_eq!(c.single_b(), 1000);
    assert!(matches!(estimate_e(&c), Err(Error::InsufficientData(_))));
}
