//! Critical-time table: when each average-fidelity curve reaches 2/3, and
//! when the channel entanglement dies.

use serde::Serialize;
use serde_json::value::RawValue;
use teledecay_core::analysis::{find_critical_time, find_esd_time, CurveSource, RootOutcome};
use teledecay_core::channels::{DecoherenceCase, EnvironmentKind};

use crate::format::{g17, json_number};
use crate::CliError;

pub const NO_FINITE_ROOT: &str = "NoFiniteRoot";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRow {
    pub kind: EnvironmentKind,
    pub case: DecoherenceCase,
    pub analytic: RootOutcome,
    pub numeric: RootOutcome,
    pub esd: RootOutcome,
}

/// All nine rows, in `(kind, case)` order.
pub fn critical_table() -> Vec<CriticalRow> {
    EnvironmentKind::ALL
        .into_iter()
        .flat_map(|kind| {
            DecoherenceCase::ALL.into_iter().map(move |case| CriticalRow {
                kind,
                case,
                analytic: find_critical_time(kind, case, CurveSource::Analytic),
                numeric: find_critical_time(kind, case, CurveSource::Numeric),
                esd: find_esd_time(kind, case),
            })
        })
        .collect()
}

fn cell(outcome: &RootOutcome) -> String {
    outcome.gamma_t().map_or_else(|| NO_FINITE_ROOT.to_string(), g17)
}

pub fn render_text(rows: &[CriticalRow]) -> String {
    let mut out = format!(
        "{:<12} {:>4} {:>24} {:>24} {:>24}\n",
        "kind", "case", "critical_analytic", "critical_numeric", "esd"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<12} {:>4} {:>24} {:>24} {:>24}\n",
            r.kind.name(),
            r.case.number(),
            cell(&r.analytic),
            cell(&r.numeric),
            cell(&r.esd)
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    kind: &'static str,
    case: u8,
    critical_analytic: Box<RawValue>,
    critical_numeric: Box<RawValue>,
    esd: Box<RawValue>,
}

/// A root is a number; a missing root is the string `"NoFiniteRoot"`.
fn json_cell(outcome: &RootOutcome) -> Box<RawValue> {
    match outcome.gamma_t() {
        Some(x) => json_number(x),
        None => RawValue::from_string(format!("\"{NO_FINITE_ROOT}\"")).expect("valid JSON string"),
    }
}

pub fn render_json(rows: &[CriticalRow]) -> Result<Vec<u8>, CliError> {
    let rows: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            kind: r.kind.name(),
            case: r.case.number(),
            critical_analytic: json_cell(&r.analytic),
            critical_numeric: json_cell(&r.numeric),
            esd: json_cell(&r.esd),
        })
        .collect();
    let mut out = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::Runtime(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}
