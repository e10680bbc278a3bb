mod common;

use common::Lcg;
use teledecay_core::analysis::{
    find_critical_time, find_crossing, find_esd_time, ln_one_plus_sqrt2, threshold_concurrence_surd, Curve,
    CurveSource, Quantity, RootOutcome,
};
use teledecay_core::channels::{DecoherenceCase, EnvironmentKind, RescaledTime};
use teledecay_core::metrics::{
    analytic_concurrence, analytic_favg, analytic_purity, channel_state, concurrence, diagnostics, purity,
};
use teledecay_core::qops::{apply_unitary, hermitian_eigenvalues};

use DecoherenceCase::{ChannelPair, Receiver, Sender};
use EnvironmentKind::{Dephasing, Dissipative, Noisy};

fn t(x: f64) -> RescaledTime {
    RescaledTime::new(x).unwrap()
}

#[test]
fn concurrence_is_locally_invariant() {
    let mut rng = Lcg(29);
    let states = [
        channel_state(Dissipative, ChannelPair, t(0.3)),
        channel_state(Noisy, Receiver, t(0.2)),
        common::state_from(&rng.vec(32), 4),
    ];
    for rho in &states {
        let c0 = concurrence(rho).unwrap();
        for _ in 0..10 {
            let ua = common::unitary_from(&rng.vec(8), 2);
            let ub = common::unitary_from(&rng.vec(8), 2);
            let moved = apply_unitary(rho, &ua.kron(&ub)).unwrap();
            assert!((concurrence(&moved).unwrap() - c0).abs() <= 1e-10);
        }
    }
}

#[test]
fn purity_bounds_and_rank_one() {
    for kind in EnvironmentKind::ALL {
        for case in DecoherenceCase::ALL {
            for i in 0..=30 {
                let rho = channel_state(kind, case, t(i as f64 / 10.0));
                let p = purity(&rho);
                assert!((0.25 - 1e-12..=1.0 + 1e-12).contains(&p));
                let eig = hermitian_eigenvalues(rho.matrix());
                let rank_one = eig[..3].iter().all(|x| x.abs() <= 1e-10);
                assert_eq!((p - 1.0).abs() <= 1e-10, rank_one, "{kind} {case} {i}");
            }
        }
    }
}

#[test]
fn dephasing_curves_strictly_decrease() {
    for case in DecoherenceCase::ALL {
        let mut prev = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for i in 1..=100 {
            let x = t(i as f64 / 10.0);
            let now = (
                analytic_favg(Dephasing, case, x),
                analytic_concurrence(Dephasing, case, x),
                analytic_purity(Dephasing, case, x),
            );
            assert!(now.0 < prev.0 && now.1 < prev.1 && now.2 < prev.2, "{case} {i}");
            prev = now;
        }
    }
}

#[test]
fn less_entanglement_can_teleport_better() {
    let x = t(2.0);
    assert!(analytic_concurrence(Dissipative, ChannelPair, x) < analytic_concurrence(Dissipative, Receiver, x));
    assert!(analytic_favg(Dissipative, ChannelPair, x) > analytic_favg(Dissipative, Receiver, x));
    let d1 = diagnostics(Dissipative, ChannelPair, x);
    let d2 = diagnostics(Dissipative, Receiver, x);
    assert!(d1.concurrence < d2.concurrence && d1.purity > d2.purity);
}

#[test]
fn receiver_and_sender_pairs_share_concurrence() {
    for kind in EnvironmentKind::ALL {
        for i in 0..=20 {
            let x = t(i as f64 * 0.15);
            let a = concurrence(&channel_state(kind, Receiver, x)).unwrap();
            let b = concurrence(&channel_state(kind, Sender, x)).unwrap();
            assert!((a - b).abs() <= 1e-12);
        }
    }
    assert!((concurrence(&channel_state(Dephasing, ChannelPair, t(1.0))).unwrap() - (-1.0f64).exp()).abs() < 1e-12);
}

#[test]
fn numeric_and_analytic_critical_times_agree() {
    for kind in EnvironmentKind::ALL {
        for case in DecoherenceCase::ALL {
            let a = find_critical_time(kind, case, CurveSource::Analytic);
            let n = find_critical_time(kind, case, CurveSource::Numeric);
            match (a, n) {
                (RootOutcome::Finite(a), RootOutcome::Finite(n)) => {
                    assert!((a.gamma_t.get() - n.gamma_t.get()).abs() <= 1e-8, "{kind} {case}");
                    assert!(a.residual.abs() <= 1e-12 && n.residual.abs() <= 1e-12);
                    let g = analytic_favg(kind, case, a.gamma_t) - 2.0 / 3.0;
                    assert!(g.abs() <= 1e-12);
                }
                (RootOutcome::NoFiniteRoot { .. }, RootOutcome::NoFiniteRoot { .. }) => {}
                other => panic!("{kind} {case}: {other:?}"),
            }
        }
    }
}

#[test]
fn noisy_success_is_limited_by_entanglement_lifetime() {
    for case in [ChannelPair, Receiver] {
        let tc = find_critical_time(Noisy, case, CurveSource::Analytic).gamma_t().unwrap();
        let esd = find_esd_time(Noisy, case).gamma_t().unwrap();
        assert!((tc - esd).abs() <= 1e-10);
    }
    let tc3 = find_critical_time(Noisy, Sender, CurveSource::Analytic).gamma_t().unwrap();
    let tc1 = find_critical_time(Noisy, ChannelPair, CurveSource::Analytic).gamma_t().unwrap();
    assert!((tc3 - tc1).abs() <= 1e-10);
    assert!(find_esd_time(Noisy, Sender).gamma_t().unwrap() > tc3 + 0.1);
    let c = analytic_concurrence(Noisy, Sender, t(tc3));
    assert!(c > 0.0 && (c - threshold_concurrence_surd()).abs() < 1e-10);
}

#[test]
fn crossings() {
    let f = |c| Curve::new(Quantity::AverageFidelity, Dissipative, c);
    let p = |c| Curve::new(Quantity::Purity, Dissipative, c);
    let x = find_crossing(f(ChannelPair), f(Receiver), (1.0, 2.0)).unwrap();
    assert!((x.gamma_t.get() - 1.6391).abs() < 1e-3);
    let y = find_crossing(p(ChannelPair), p(Receiver), (0.5, 1.5)).unwrap();
    assert!((y.gamma_t.get() - 0.9248).abs() < 1e-3);
    assert!((ln_one_plus_sqrt2() - 0.881373587019543).abs() < 1e-15);
}
