//! Command-line surface: `run`, `list`, `version`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime};

use clap::{Parser, Subcommand};

use crate::config::{Format, Method, Overrides, ScenarioConfig, Settings};
use crate::error::CliError;
use crate::report::ResidualReport;
use crate::scenarios::run_scenario;

#[derive(Debug, Parser)]
#[command(name = "velfield", version, about = "Velocity-field residual suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario and write its report.
    Run(RunArgs),
    /// List scenario names.
    List,
    /// Print the toolkit version.
    Version,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Scenario name; optional when the config names one.
    scenario: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path; the report goes to stdout when no path is configured.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["json", "csv"])]
    format: Option<String>,
    /// Finite-difference step; implies --numeric.
    #[arg(long, conflicts_with = "analytic")]
    h: Option<f64>,
    #[arg(long, conflicts_with = "numeric")]
    analytic: bool,
    #[arg(long)]
    numeric: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Omit timestamp and duration so reports are byte-stable.
    #[arg(long)]
    no_timestamp: bool,
}

/// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or config error.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::List => {
            for name in crate::list_scenarios() {
                let _ = writeln!(stdout, "{name}");
            }
            0
        }
        Command::Version => {
            let _ = writeln!(stdout, "velfield {}", velfield::VERSION);
            0
        }
        Command::Run(args) => match run(args, stdout, stderr) {
            Ok(pass) => i32::from(!pass),
            Err(e) => {
                let _ = writeln!(stderr, "velfield: {e}");
                e.exit_code()
            }
        },
    }
}

fn load_config(args: &RunArgs) -> Result<ScenarioConfig, CliError> {
    let Some(path) = &args.config else {
        let name = args
            .scenario
            .as_deref()
            .ok_or_else(|| CliError::Config("no scenario given; pass a name or --config".into()))?;
        return Ok(ScenarioConfig::for_scenario(name.parse()?));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg = ScenarioConfig::from_json(&text)?;
    if let Some(name) = &args.scenario {
        if *name != cfg.scenario {
            return Err(CliError::Config(format!(
                "scenario `{name}` on the command line disagrees with `{}` in the config",
                cfg.scenario
            )));
        }
    }
    Ok(cfg)
}

fn run(args: RunArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = load_config(&args)?;
    let overrides = Overrides {
        out: args.out.as_ref().map(|p| p.to_string_lossy().into_owned()),
        format: args.format.as_deref().map(str::parse).transpose()?,
        h: args.h,
        method: if args.analytic {
            Some(Method::Analytic)
        } else if args.numeric {
            Some(Method::Numeric)
        } else {
            None
        },
        seed: args.seed,
    };
    let settings = Settings::resolve(&cfg, &overrides)?;
    let started = Instant::now();
    let mut report = run_scenario(&settings)?;
    if !args.no_timestamp {
        report.timestamp = Some(humantime::format_rfc3339_seconds(SystemTime::now()).to_string());
        report.duration_seconds = Some(started.elapsed().as_secs_f64());
    }
    report
        .validate()
        .map_err(|e| CliError::Config(format!("internal error: {e}")))?;
    write_report(&report, &settings, stdout)?;
    for c in &report.checks {
        let verdict = match (c.informational, c.pass) {
            (true, _) => "INFO",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        let tol = c.tolerance.map(|t| format!("{t:e}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            stderr,
            "{verdict} {:<28} linf={:<12.3e} tol={tol} points={} failures={}",
            c.name, c.linf, c.points, c.failures
        );
    }
    Ok(report.all_pass)
}

fn write_report(report: &ResidualReport, settings: &Settings, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = match settings.format() {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &settings.output.path {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Output {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(body.as_bytes()).map_err(|source| CliError::Output {
            path: "<stdout>".into(),
            source,
        }),
    }
}
