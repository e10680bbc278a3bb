//! Grid evaluation of fidelity, concurrence and purity.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;
use teledecay_core::channels::{DecoherenceCase, EnvironmentKind, RescaledTime};
use teledecay_core::metrics::{
    analytic_concurrence, analytic_favg, analytic_purity, channel_state, channel_state_ode, concurrence, purity,
};
use teledecay_core::teleport::{TeleportSpec, Teleporter};

use crate::config::{MethodChoice, OutputFormat, SweepConfig};
use crate::format::{g17, json_number};
use crate::CliError;

/// CSV header; column order follows [`SweepRecord`].
pub const CSV_HEADER: [&str; 10] = [
    "kind",
    "case",
    "gamma_t",
    "favg_numeric",
    "favg_analytic",
    "concurrence_numeric",
    "concurrence_analytic",
    "purity_numeric",
    "purity_analytic",
    "abs_err_favg",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub kind: EnvironmentKind,
    pub case: DecoherenceCase,
    pub gamma_t: f64,
    pub favg_numeric: f64,
    pub favg_analytic: f64,
    pub concurrence_numeric: f64,
    pub concurrence_analytic: f64,
    pub purity_numeric: f64,
    pub purity_analytic: f64,
    pub abs_err_favg: f64,
}

impl SweepRecord {
    fn numbers(&self) -> [f64; 8] {
        [
            self.gamma_t,
            self.favg_numeric,
            self.favg_analytic,
            self.concurrence_numeric,
            self.concurrence_analytic,
            self.purity_numeric,
            self.purity_analytic,
            self.abs_err_favg,
        ]
    }
}

#[derive(Serialize)]
struct JsonRecord {
    kind: &'static str,
    case: u8,
    gamma_t: Box<RawValue>,
    favg_numeric: Box<RawValue>,
    favg_analytic: Box<RawValue>,
    concurrence_numeric: Box<RawValue>,
    concurrence_analytic: Box<RawValue>,
    purity_numeric: Box<RawValue>,
    purity_analytic: Box<RawValue>,
    abs_err_favg: Box<RawValue>,
}

impl From<&SweepRecord> for JsonRecord {
    fn from(r: &SweepRecord) -> Self {
        Self {
            kind: r.kind.name(),
            case: r.case.number(),
            gamma_t: json_number(r.gamma_t),
            favg_numeric: json_number(r.favg_numeric),
            favg_analytic: json_number(r.favg_analytic),
            concurrence_numeric: json_number(r.concurrence_numeric),
            concurrence_analytic: json_number(r.concurrence_analytic),
            purity_numeric: json_number(r.purity_numeric),
            purity_analytic: json_number(r.purity_analytic),
            abs_err_favg: json_number(r.abs_err_favg),
        }
    }
}

/// Evaluates one grid point.
pub fn evaluate_point(
    teleporter: &Teleporter,
    config: &SweepConfig,
    kind: EnvironmentKind,
    case: DecoherenceCase,
    gamma_t: f64,
) -> Result<SweepRecord, CliError> {
    let t = RescaledTime::new(gamma_t)?;
    let (spec, pair) = match config.method {
        MethodChoice::Kraus => (TeleportSpec::kraus(kind, case, t), channel_state(kind, case, t)),
        MethodChoice::Ode => (
            TeleportSpec::ode(kind, case, t, config.ode_step)?,
            channel_state_ode(kind, case, t, config.ode_step)?,
        ),
    };
    let favg_numeric = teleporter.average_fidelity(&spec, &config.quad)?;
    let favg_analytic = analytic_favg(kind, case, t);
    Ok(SweepRecord {
        kind,
        case,
        gamma_t,
        favg_numeric,
        favg_analytic,
        concurrence_numeric: concurrence(&pair)?,
        concurrence_analytic: analytic_concurrence(kind, case, t),
        purity_numeric: purity(&pair),
        purity_analytic: analytic_purity(kind, case, t),
        abs_err_favg: (favg_numeric - favg_analytic).abs(),
    })
}

/// All grid points ordered by `(kind, case, gamma_t)` in the order the
/// config lists them. Points run on `config.workers` threads; the result
/// order never depends on scheduling.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, CliError> {
    config.validate()?;
    let times = config.times();
    let times = &times;
    let points: Vec<(EnvironmentKind, DecoherenceCase, f64)> = config
        .kinds
        .iter()
        .flat_map(|&k| config.cases.iter().flat_map(move |&c| times.iter().map(move |&t| (k, c, t))))
        .collect();
    let teleporter = Teleporter::new();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(k, c, t)| evaluate_point(&teleporter, config, k, c, t))
            .collect()
    })
}

pub fn render(records: &[SweepRecord], format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Csv => render_csv(records),
        OutputFormat::Json => {
            let rows: Vec<JsonRecord> = records.iter().map(JsonRecord::from).collect();
            let mut out = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::Runtime(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

fn render_csv(records: &[SweepRecord]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        let mut row = vec![r.kind.name().to_string(), r.case.number().to_string()];
        row.extend(r.numbers().iter().map(|&x| g17(x)));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

pub fn write_output(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

/// Runs a sweep and writes it where the config says.
pub fn cmd_sweep(config: &SweepConfig) -> Result<(), CliError> {
    let records = run_sweep(config)?;
    write_output(&render(&records, config.format)?, config.output_path.as_deref())
}

/// One file per environment kind, `fig2a` (dissipative), `fig2b` (noisy),
/// `fig2c` (dephasing), each holding all configured cases.
pub fn cmd_fig2(base: &SweepConfig, dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for (kind, panel) in EnvironmentKind::ALL.into_iter().zip(["fig2a", "fig2b", "fig2c"]) {
        let config = SweepConfig {
            kinds: vec![kind],
            ..base.clone()
        };
        let path = dir.join(format!("{panel}.{}", config.format.extension()));
        let records = run_sweep(&config)?;
        write_output(&render(&records, config.format)?, Some(&path))?;
        written.push(path);
    }
    Ok(written)
}
