use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use teledecay::config::{Settings, SweepConfig};
use teledecay::{critical, sweep, verify, CliError};

/// Teleportation through decohering channels: sweeps, critical times and
/// self-verification.
#[derive(Parser)]
#[command(name = "teledecay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity, concurrence and purity over a (kind, case, γt) grid.
    Sweep(GridArgs),
    /// Critical and sudden-death times for every (kind, case).
    CriticalTimes(ReportArgs),
    /// Run every self-check; exit status 3 if any fails.
    Verify(ReportArgs),
    /// One sweep file per environment kind (fig2a, fig2b, fig2c) in `--out`.
    Fig2(GridArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated: di, no, de (or full names).
    #[arg(long)]
    kinds: Option<String>,
    /// Comma-separated subset of 1, 2, 3.
    #[arg(long)]
    cases: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_start: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_step: Option<String>,
    /// kraus or ode.
    #[arg(long)]
    method: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ode_step: Option<String>,
    #[arg(long)]
    n_theta: Option<String>,
    #[arg(long)]
    n_phi: Option<String>,
    /// Output file (sweep) or directory (fig2).
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    workers: Option<String>,
}

impl GridArgs {
    fn config(&self) -> Result<SweepConfig, CliError> {
        let mut settings = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let mut flags = Settings::default();
        let pairs = [
            ("kinds", &self.kinds),
            ("cases", &self.cases),
            ("t_start", &self.t_start),
            ("t_end", &self.t_end),
            ("t_step", &self.t_step),
            ("method", &self.method),
            ("ode_step", &self.ode_step),
            ("n_theta", &self.n_theta),
            ("n_phi", &self.n_phi),
            ("out", &self.out),
            ("format", &self.format),
            ("workers", &self.workers),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.insert(key, v.as_str())?;
            }
        }
        settings.merge(flags);
        SweepConfig::default().apply(&settings)
    }
}

#[derive(Args)]
struct ReportArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// text or json (critical-times only; verify always writes JSON).
    #[arg(long, default_value = "text")]
    format: String,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => sweep::cmd_sweep(&args.config()?),
        Command::Fig2(args) => {
            let config = args.config()?;
            let dir = config.output_path.clone().unwrap_or_else(|| PathBuf::from("."));
            for path in sweep::cmd_fig2(&config, &dir)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::CriticalTimes(args) => {
            let json = match args.format.to_ascii_lowercase().as_str() {
                "text" => args.out.is_some(),
                "json" => true,
                _ => return Err(CliError::validation("format", "expected text or json")),
            };
            let rows = critical::critical_table();
            if json {
                sweep::write_output(&critical::render_json(&rows)?, args.out.as_deref())?;
            }
            if !json || args.out.is_some() {
                print!("{}", critical::render_text(&rows));
            }
            Ok(())
        }
        Command::Verify(args) => {
            if !args.format.eq_ignore_ascii_case("text") && !args.format.eq_ignore_ascii_case("json") {
                return Err(CliError::validation("format", "expected text or json"));
            }
            let checks = verify::cmd_verify(args.out.as_deref())?;
            for c in &checks {
                eprintln!(
                    "{} [{:>2}] {} observed={:e} error={:e} tolerance={:e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.criterion,
                    c.name,
                    c.observed,
                    c.error,
                    c.tolerance
                );
            }
            verify::status(&checks)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
