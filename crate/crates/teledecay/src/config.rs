//! Sweep configuration: a flat `key = value` file merged with command-line
//! overrides (flags win).
//!
//! ```text
//! # full sweep
//! kinds = di,no,de
//! cases = 1,2,3
//! t_start = 0
//! t_end = 3
//! t_step = 0.05
//! method = kraus
//! out = sweep.csv
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use teledecay_core::channels::{DecoherenceCase, EnvironmentKind, DEFAULT_ODE_STEP};
use teledecay_core::teleport::QuadratureSpec;

use crate::CliError;

pub const KEYS: [&str; 12] = [
    "kinds", "cases", "t_start", "t_end", "t_step", "method", "ode_step", "n_theta", "n_phi", "out", "format",
    "workers",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Kraus,
    Ode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kinds: Vec<EnvironmentKind>,
    pub cases: Vec<DecoherenceCase>,
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
    pub method: MethodChoice,
    pub ode_step: f64,
    pub quad: QuadratureSpec,
    /// `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            kinds: EnvironmentKind::ALL.to_vec(),
            cases: DecoherenceCase::ALL.to_vec(),
            t_start: 0.0,
            t_end: 3.0,
            t_step: 0.05,
            method: MethodChoice::Kraus,
            ode_step: DEFAULT_ODE_STEP,
            quad: QuadratureSpec::default(),
            output_path: None,
            format: OutputFormat::Csv,
            workers: 1,
        }
    }
}

impl SweepConfig {
    /// Grid of `γt` values: `t_start + i * t_step` up to `t_end`. When the
    /// step divides the span the last point is exactly `t_end`.
    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let steps = (span / self.t_step).round();
        if steps >= 1.0 && (steps * self.t_step - span).abs() <= 1e-9 * self.t_step.max(1.0) {
            let n = steps as usize;
            return (0..=n).map(|i| self.t_start + span * i as f64 / n as f64).collect();
        }
        let n = ((span / self.t_step) + 1e-9).floor() as usize;
        (0..=n).map(|i| self.t_start + self.t_step * i as f64).collect()
    }

    /// Applies `key = value` settings on top of `self`.
    pub fn apply(mut self, settings: &Settings) -> Result<Self, CliError> {
        for (key, value) in &settings.0 {
            self.set(key, value)?;
        }
        self.validate()?;
        Ok(self)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |msg: &str| CliError::validation(key, format!("{msg}: {value:?}"));
        let value = value.trim();
        match key {
            "kinds" => {
                self.kinds = list(value)
                    .map(|s| EnvironmentKind::parse(s).ok_or_else(|| bad("unknown environment kind")))
                    .collect::<Result<_, _>>()?
            }
            "cases" => {
                self.cases = list(value)
                    .map(|s| {
                        s.parse::<u8>()
                            .ok()
                            .and_then(|n| DecoherenceCase::from_number(n).ok())
                            .ok_or_else(|| bad("case must be 1, 2 or 3"))
                    })
                    .collect::<Result<_, _>>()?
            }
            "t_start" => self.t_start = value.parse().map_err(|_| bad("not a number"))?,
            "t_end" => self.t_end = value.parse().map_err(|_| bad("not a number"))?,
            "t_step" => self.t_step = value.parse().map_err(|_| bad("not a number"))?,
            "ode_step" => self.ode_step = value.parse().map_err(|_| bad("not a number"))?,
            "method" => {
                self.method = match value.to_ascii_lowercase().as_str() {
                    "kraus" => MethodChoice::Kraus,
                    "ode" => MethodChoice::Ode,
                    _ => return Err(bad("expected kraus or ode")),
                }
            }
            "format" => {
                self.format = match value.to_ascii_lowercase().as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("expected csv or json")),
                }
            }
            "n_theta" | "n_phi" => {
                let n: usize = value.parse().map_err(|_| bad("not a positive integer"))?;
                let (nt, np) = if key == "n_theta" {
                    (n, self.quad.n_phi())
                } else {
                    (self.quad.n_theta(), n)
                };
                self.quad = QuadratureSpec::new(nt, np).map_err(|e| CliError::validation(key, e.to_string()))?;
            }
            "out" => self.output_path = (!value.is_empty()).then(|| PathBuf::from(value)),
            "workers" => self.workers = value.parse().map_err(|_| bad("not a positive integer"))?,
            other => return Err(CliError::validation(other, "unknown configuration key")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.kinds.is_empty() {
            return Err(CliError::validation("kinds", "empty list"));
        }
        if self.cases.is_empty() {
            return Err(CliError::validation("cases", "empty list"));
        }
        if !(self.t_start.is_finite() && self.t_start >= 0.0) {
            return Err(CliError::validation("t_start", format!("must be >= 0, got {}", self.t_start)));
        }
        if !(self.t_end.is_finite() && self.t_end > self.t_start) {
            return Err(CliError::validation("t_end", format!("must exceed t_start, got {}", self.t_end)));
        }
        if !(self.t_step.is_finite() && self.t_step > 0.0) {
            return Err(CliError::validation("t_step", format!("must be > 0, got {}", self.t_step)));
        }
        if !(self.ode_step.is_finite() && self.ode_step > 0.0) {
            return Err(CliError::validation("ode_step", format!("must be > 0, got {}", self.ode_step)));
        }
        if self.workers == 0 {
            return Err(CliError::validation("workers", "must be at least 1"));
        }
        Ok(())
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Ordered `key -> value` settings; later inserts replace earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn insert(&mut self, key: &str, value: impl Into<String>) -> Result<(), CliError> {
        let key = normalize(key);
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::validation(key, "unknown configuration key"));
        }
        self.0.insert(key, value.into());
        Ok(())
    }

    pub fn merge(&mut self, other: Settings) {
        self.0.extend(other.0);
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut out = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::validation(format!("line {}", lineno + 1), "expected key = value"))?;
            out.insert(key.trim(), value.trim())?;
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}

fn normalize(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('-', "_").to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut s = Settings::parse("kinds = di, no\n# comment\nt-end = 2\nworkers=3\n").unwrap();
        let mut flags = Settings::default();
        flags.insert("--t-end", "1.5").unwrap();
        s.merge(flags);
        let cfg = SweepConfig::default().apply(&s).unwrap();
        assert_eq!(cfg.kinds, [EnvironmentKind::Dissipative, EnvironmentKind::Noisy]);
        assert_eq!(cfg.t_end, 1.5);
        assert_eq!(cfg.workers, 3);
    }

    #[test]
    fn errors_name_the_field() {
        let field = |text: &str| match SweepConfig::default().apply(&Settings::parse(text).unwrap()) {
            Err(CliError::Validation { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field("t_step = 0"), "t_step");
        assert_eq!(field("t_end = 0"), "t_end");
        assert_eq!(field("cases = 4"), "cases");
        assert_eq!(field("kinds = thermal"), "kinds");
        assert_eq!(field("n_theta = 2"), "n_theta");
        assert_eq!(field("method = euler"), "method");
        assert!(matches!(Settings::parse("colour = red"), Err(CliError::Validation { field, .. }) if field == "colour"));
        assert!(Settings::parse("no equals sign").is_err());
    }

    #[test]
    fn time_grid_ends_exactly() {
        let cfg = SweepConfig::default();
        let ts = cfg.times();
        assert_eq!(ts.len(), 61);
        assert_eq!(ts[0], 0.0);
        assert_eq!(*ts.last().unwrap(), 3.0);
        let odd = SweepConfig {
            t_end: 1.0,
            t_step: 0.3,
            ..SweepConfig::default()
        };
        assert_eq!(odd.times().len(), 4);
        let single = SweepConfig {
            t_end: 0.01,
            t_step: 1.0,
            ..SweepConfig::default()
        };
        assert_eq!(single.times(), [0.0]);
    }
}
