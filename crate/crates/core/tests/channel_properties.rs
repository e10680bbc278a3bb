mod common;

use common::Lcg;
use teledecay_core::channels::{
    evolve_kraus, evolve_kraus_on, kraus_single, lindblad_rhs, DecoherenceCase, EnvironmentKind, RescaledTime,
};
use teledecay_core::qops::{bell_phi_plus, DensityMatrix, QubitIndex};

fn t(x: f64) -> RescaledTime {
    RescaledTime::new(x).unwrap()
}

#[test]
fn rhs_is_hermitian_and_traceless() {
    let mut rng = Lcg(7);
    for kind in EnvironmentKind::ALL {
        for _ in 0..100 {
            let rho = common::state_from(&rng.vec(24), 8);
            let rates = [rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)];
            let d = lindblad_rhs(&rho, kind, &rates).unwrap();
            assert!(d.hermiticity_error() <= 1e-12);
            assert!(d.trace().norm() <= 1e-12);
        }
    }
}

#[test]
fn kraus_sets_are_complete() {
    for kind in EnvironmentKind::ALL {
        for i in 0..20 {
            let k = kraus_single(kind, t(10.0 * i as f64 / 19.0));
            assert!(k.completeness_error() <= 1e-12, "{kind} step {i}");
        }
    }
}

#[test]
fn kraus_evolution_is_a_semigroup() {
    let mut rng = Lcg(11);
    for kind in EnvironmentKind::ALL {
        for case in DecoherenceCase::ALL {
            let rho = common::state_from(&rng.vec(30), 8);
            let (t1, t2) = (rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0));
            let stepwise = evolve_kraus(&evolve_kraus(&rho, kind, case, t(t1)).unwrap(), kind, case, t(t2)).unwrap();
            let direct = evolve_kraus(&rho, kind, case, t(t1 + t2)).unwrap();
            assert!(stepwise.matrix().max_abs_diff(direct.matrix()) <= 1e-12, "{kind} {case}");
        }
    }
}

#[test]
fn dephasing_keeps_populations() {
    let mut rng = Lcg(3);
    for case in DecoherenceCase::ALL {
        let rho = common::state_from(&rng.vec(40), 8);
        let out = evolve_kraus(&rho, EnvironmentKind::Dephasing, case, t(1.7)).unwrap();
        let worst = (0..8).map(|i| (out.get(i, i) - rho.get(i, i)).norm()).fold(0.0, f64::max);
        assert!(worst <= 1e-12);
    }
}

#[test]
fn noisy_channel_drives_to_maximally_mixed() {
    let mut rng = Lcg(5);
    let mixed = DensityMatrix::maximally_mixed(1).unwrap();
    for _ in 0..20 {
        let rho = common::state_from(&rng.vec(8), 2);
        let out = evolve_kraus_on(&rho, EnvironmentKind::Noisy, &[QubitIndex::ONE], t(20.0)).unwrap();
        assert!(out.matrix().max_abs_diff(mixed.matrix()) <= 1e-8);
    }
}

#[test]
fn receiver_dephasing_scales_bell_coherence() {
    let out = evolve_kraus(&bell_phi_plus(), EnvironmentKind::Dephasing, DecoherenceCase::Receiver, t(0.8)).unwrap();
    assert!((out.get(0, 3).re - 0.5 * (-0.4f64).exp()).abs() < 1e-15);
    assert!((out.get(0, 0).re - 0.5).abs() < 1e-15);
}

#[test]
fn evolved_states_stay_physical() {
    let mut rng = Lcg(13);
    for kind in EnvironmentKind::ALL {
        for case in DecoherenceCase::ALL {
            let rho = common::state_from(&rng.vec(30), 8);
            for x in [0.0, 0.3, 1.0, 4.0] {
                let out = evolve_kraus(&rho, kind, case, t(x)).unwrap();
                assert!(out.diagnostics().is_valid(), "{kind} {case} {x}");
            }
        }
    }
}
