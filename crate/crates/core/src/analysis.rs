//! Bisection over fidelity, concurrence and purity curves.
//!
//! All searches run on `[0, 50]` in `γt` with a `1e-12` width tolerance and
//! a 200-iteration cap. Curves that approach their threshold only
//! asymptotically are reported as [`RootOutcome::NoFiniteRoot`].

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use crate::channels::{DecoherenceCase, EnvironmentKind, RescaledTime};
use crate::metrics::{analytic_concurrence, analytic_concurrence_unclipped, analytic_favg, analytic_purity};
use crate::teleport::{QuadratureSpec, TeleportSpec, Teleporter};
use crate::{Error, Result};

use DecoherenceCase::{ChannelPair, Receiver, Sender};
use EnvironmentKind::{Dephasing, Dissipative, Noisy};

pub const SEARCH_BRACKET: (f64, f64) = (0.0, 50.0);
pub const ROOT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
/// A non-crossing curve may dip this far below its threshold at the end of
/// the bracket before the dip counts as a crossing.
pub const NO_ROOT_GUARD: f64 = 1e-9;

/// Best average fidelity reachable with classical communication alone.
pub fn classical_fidelity_bound() -> f64 {
    2.0 / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub gamma_t: RescaledTime,
    /// Function value at `gamma_t`.
    pub residual: f64,
    pub iterations: usize,
    /// Final bracket; contains `gamma_t`.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootOutcome {
    Finite(RootResult),
    /// The curve stays above its threshold on the whole bracket.
    NoFiniteRoot {
        /// Distance above the threshold at the bracket end from the
        /// closed form, written without cancellation; strictly positive.
        g_end: f64,
        /// The same distance from the curve actually searched.
        g_end_source: f64,
    },
}

impl RootOutcome {
    pub fn root(&self) -> Option<&RootResult> {
        match self {
            Self::Finite(r) => Some(r),
            Self::NoFiniteRoot { .. } => None,
        }
    }

    pub fn gamma_t(&self) -> Option<f64> {
        self.root().map(|r| r.gamma_t.get())
    }
}

/// Where the average fidelity comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveSource {
    Analytic,
    /// Kraus pipeline with the default quadrature.
    Numeric,
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Result<RootResult> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    let done = |t: f64, residual: f64, iterations: usize, bracket| {
        Ok(RootResult {
            gamma_t: RescaledTime::new(t)?,
            residual,
            iterations,
            bracket,
        })
    };
    if f_lo * f_hi >= 0.0 || f_lo.is_nan() || f_hi.is_nan() {
        if f_lo == 0.0 && f_hi != 0.0 {
            return done(lo, f_lo, 0, (lo, lo));
        }
        if f_hi == 0.0 && f_lo != 0.0 {
            return done(hi, f_hi, 0, (hi, hi));
        }
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let mut iterations = 0;
    while hi - lo > ROOT_TOLERANCE && iterations < MAX_ITERATIONS {
        iterations += 1;
        let mid = lo + (hi - lo) / 2.0;
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return done(mid, 0.0, iterations, (mid, mid));
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mid = lo + (hi - lo) / 2.0;
    done(mid, f(mid), iterations, (lo, hi))
}

fn time(t: f64) -> RescaledTime {
    RescaledTime::new(t).expect("search stays inside [0, 50]")
}

/// Closed-form `F_av - 2/3`, written so the curves that never cross keep a
/// strictly positive tail (`2/3 + e^{-100}/3 - 2/3` is exactly 0 in `f64`).
pub fn fidelity_margin(kind: EnvironmentKind, case: DecoherenceCase, t: f64) -> f64 {
    let e = |k: f64| libm::exp(-k * t);
    match (kind, case) {
        (Dissipative, ChannelPair) => e(2.0) / 3.0,
        (Dephasing, ChannelPair | Sender) => e(1.0) / 3.0,
        (Dephasing, Receiver) => e(0.5) / 3.0,
        _ => analytic_favg(kind, case, time(t)) - classical_fidelity_bound(),
    }
}

/// Curves known to stay above 2/3 for all finite times.
fn never_reaches_classical(kind: EnvironmentKind, case: DecoherenceCase) -> bool {
    matches!((kind, case), (Dissipative, ChannelPair) | (Dephasing, _))
}

/// Time at which the average fidelity falls to 2/3.
pub fn find_critical_time(kind: EnvironmentKind, case: DecoherenceCase, source: CurveSource) -> RootOutcome {
    let teleporter = Teleporter::new();
    let quad = QuadratureSpec::default();
    let g = |t: f64| match source {
        CurveSource::Analytic => fidelity_margin(kind, case, t),
        CurveSource::Numeric => {
            let spec = TeleportSpec::kraus(kind, case, time(t));
            teleporter.average_fidelity(&spec, &quad).expect("Kraus pipeline is total") - classical_fidelity_bound()
        }
    };
    let (lo, hi) = SEARCH_BRACKET;
    let no_root = |g_end_source| RootOutcome::NoFiniteRoot {
        g_end: fidelity_margin(kind, case, hi),
        g_end_source,
    };
    if never_reaches_classical(kind, case) {
        let g_end_source = g(hi);
        if g_end_source > -NO_ROOT_GUARD {
            return no_root(g_end_source);
        }
    }
    match bisect(g, lo, hi) {
        Ok(root) => RootOutcome::Finite(root),
        Err(Error::NoSignChange { f_hi, .. }) => no_root(f_hi),
        Err(e) => unreachable!("bisection on a fixed bracket: {e}"),
    }
}

/// Entanglement sudden death: the first time the closed-form concurrence
/// hits zero. The search runs on the unclipped expression so the kink does
/// not stall it.
pub fn find_esd_time(kind: EnvironmentKind, case: DecoherenceCase) -> RootOutcome {
    let (lo, hi) = SEARCH_BRACKET;
    let inner = |t: f64| analytic_concurrence_unclipped(kind, case, time(t));
    let no_root = RootOutcome::NoFiniteRoot {
        g_end: inner(hi),
        g_end_source: inner(hi),
    };
    if kind != Noisy {
        return no_root;
    }
    match bisect(inner, lo, hi) {
        Ok(root) => RootOutcome::Finite(root),
        Err(_) => no_root,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    AverageFidelity,
    Concurrence,
    Purity,
}

/// A closed-form curve of `γt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub quantity: Quantity,
    pub kind: EnvironmentKind,
    pub case: DecoherenceCase,
}

impl Curve {
    pub fn new(quantity: Quantity, kind: EnvironmentKind, case: DecoherenceCase) -> Self {
        Self { quantity, kind, case }
    }

    pub fn eval(&self, t: RescaledTime) -> f64 {
        match self.quantity {
            Quantity::AverageFidelity => analytic_favg(self.kind, self.case, t),
            Quantity::Concurrence => analytic_concurrence(self.kind, self.case, t),
            Quantity::Purity => analytic_purity(self.kind, self.case, t),
        }
    }
}

/// Where `a(t) = b(t)` inside `bracket`.
pub fn find_crossing(a: Curve, b: Curve, bracket: (f64, f64)) -> Result<RootResult> {
    RescaledTime::new(bracket.0)?;
    RescaledTime::new(bracket.1)?;
    bisect(|t| a.eval(time(t)) - b.eval(time(t)), bracket.0, bracket.1)
}

/// `2 ln[6 / (m^{1/3} - 2 m^{-1/3} - 2)]`, `m = 64 + 6√114`.
pub fn fidelity_crossing_surd() -> f64 {
    let m = 64.0 + 6.0 * libm::sqrt(114.0);
    let c = libm::cbrt(m);
    2.0 * libm::log(6.0 / (c - 2.0 / c - 2.0))
}

/// `ln[6 / (n^{1/3} - 14 n^{-1/3} + 2)]`, `n = 8 + 6√78`.
pub fn purity_crossing_surd() -> f64 {
    let n = 8.0 + 6.0 * libm::sqrt(78.0);
    let c = libm::cbrt(n);
    libm::log(6.0 / (c - 14.0 / c + 2.0))
}

/// `(√2 - 1)^{1/2} + √2/2 - 1`
pub fn threshold_concurrence_surd() -> f64 {
    libm::sqrt(SQRT_2 - 1.0) + SQRT_2 / 2.0 - 1.0
}

/// `ln(1 + √2)`
pub fn ln_one_plus_sqrt2() -> f64 {
    libm::log(1.0 + SQRT_2)
}

/// One recomputed constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantCheck {
    pub name: &'static str,
    pub surd: f64,
    pub bisection: f64,
    /// Published rounded value, where one is quoted.
    pub published: Option<f64>,
    pub published_tolerance: f64,
    pub agreement_tolerance: f64,
}

impl ConstantCheck {
    pub fn agreement_error(&self) -> f64 {
        (self.surd - self.bisection).abs()
    }

    pub fn published_error(&self) -> Option<f64> {
        self.published.map(|p| (self.bisection - p).abs())
    }

    pub fn passed(&self) -> bool {
        self.agreement_error() <= self.agreement_tolerance
            && self.published_error().is_none_or(|e| e <= self.published_tolerance)
    }
}

/// Recomputes every quoted constant from its surd and, independently, by
/// bisection on the closed-form curves.
pub fn verify_published_constants() -> Vec<ConstantCheck> {
    let crit = |kind, case| {
        find_critical_time(kind, case, CurveSource::Analytic)
            .gamma_t()
            .unwrap_or(f64::NAN)
    };
    let esd = |kind, case| find_esd_time(kind, case).gamma_t().unwrap_or(f64::NAN);
    let ln = ln_one_plus_sqrt2();
    let favg = |case| Curve::new(Quantity::AverageFidelity, Dissipative, case);
    let pur = |case| Curve::new(Quantity::Purity, Dissipative, case);
    let crossing = |a, b, bracket| find_crossing(a, b, bracket).map_or(f64::NAN, |r| r.gamma_t.get());
    let threshold = analytic_concurrence(Noisy, Sender, time(crit(Noisy, Sender)));

    let check = |name, surd, bisection, published: Option<f64>, published_tolerance| ConstantCheck {
        name,
        surd,
        bisection,
        published,
        published_tolerance,
        agreement_tolerance: 1e-10,
    };
    alloc::vec![
        check("critical_time_di2", 2.0 * ln, crit(Dissipative, Receiver), None, 0.0),
        check("critical_time_di3", ln, crit(Dissipative, Sender), None, 0.0),
        check("critical_time_no1", ln / 2.0, crit(Noisy, ChannelPair), None, 0.0),
        check("critical_time_no2", ln, crit(Noisy, Receiver), None, 0.0),
        check("critical_time_no3", ln / 2.0, crit(Noisy, Sender), None, 0.0),
        check("esd_time_no1", ln / 2.0, esd(Noisy, ChannelPair), None, 0.0),
        check("esd_time_no2", ln, esd(Noisy, Receiver), None, 0.0),
        check(
            "crossing_fidelity_di",
            fidelity_crossing_surd(),
            crossing(favg(ChannelPair), favg(Receiver), (1.0, 2.0)),
            Some(1.6391),
            1e-3,
        ),
        check(
            "crossing_purity_di",
            purity_crossing_surd(),
            crossing(pur(ChannelPair), pur(Receiver), (0.5, 1.5)),
            Some(0.9248),
            1e-3,
        ),
        check("threshold_concurrence_no3", threshold_concurrence_surd(), threshold, Some(0.3507), 1e-4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_simple_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r.gamma_t.get() - SQRT_2).abs() < 1e-12);
        assert!(r.bracket.0 <= r.gamma_t.get() && r.gamma_t.get() <= r.bracket.1);
        assert!(r.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn bisect_rejects_missing_sign_change() {
        assert!(matches!(bisect(|x| x + 1.0, 0.0, 1.0), Err(Error::NoSignChange { .. })));
        assert!(matches!(bisect(|_| 0.0, 0.0, 1.0), Err(Error::NoSignChange { .. })));
        assert_eq!(bisect(|x| x, 0.0, 1.0).unwrap().gamma_t.get(), 0.0);
    }

    #[test]
    fn classical_bound_relations() {
        assert_eq!(classical_fidelity_bound(), 2.0 / 3.0);
        assert!(fidelity_margin(Dephasing, ChannelPair, 100.0) > 0.0);
        assert!(fidelity_margin(Dissipative, Sender, 1.0) < 0.0);
        assert!(analytic_favg(Dissipative, Sender, time(1.0)) - classical_fidelity_bound() < 0.0);
    }

    #[test]
    fn analytic_critical_times() {
        let ln = ln_one_plus_sqrt2();
        let cases = [
            (Dissipative, Receiver, 2.0 * ln),
            (Dissipative, Sender, ln),
            (Noisy, ChannelPair, ln / 2.0),
            (Noisy, Sender, ln / 2.0),
            (Noisy, Receiver, ln),
        ];
        for (kind, case, want) in cases {
            let r = find_critical_time(kind, case, CurveSource::Analytic);
            let root = r.root().expect("finite");
            assert!((root.gamma_t.get() - want).abs() < 1e-11, "{kind} {case}");
            assert!(root.residual.abs() <= 1e-12);
        }
        for (kind, case) in [(Dissipative, ChannelPair), (Dephasing, ChannelPair), (Dephasing, Receiver), (Dephasing, Sender)] {
            match find_critical_time(kind, case, CurveSource::Analytic) {
                RootOutcome::NoFiniteRoot { g_end, .. } => assert!(g_end > 0.0),
                other => panic!("{kind} {case}: {other:?}"),
            }
        }
    }

    #[test]
    fn esd_times() {
        let ln = ln_one_plus_sqrt2();
        assert!((find_esd_time(Noisy, ChannelPair).gamma_t().unwrap() - ln / 2.0).abs() < 1e-11);
        assert!((find_esd_time(Noisy, Receiver).gamma_t().unwrap() - ln).abs() < 1e-11);
        assert!((find_esd_time(Noisy, Sender).gamma_t().unwrap() - ln).abs() < 1e-11);
        assert!(find_esd_time(Dephasing, ChannelPair).root().is_none());
        assert!(find_esd_time(Dissipative, Receiver).root().is_none());
    }

    #[test]
    fn identical_curves_do_not_cross() {
        let c = Curve::new(Quantity::AverageFidelity, Dephasing, ChannelPair);
        assert!(matches!(find_crossing(c, c, (0.0, 5.0)), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn constants_report_passes() {
        for c in verify_published_constants() {
            assert!(c.passed(), "{c:?}");
        }
    }
}
