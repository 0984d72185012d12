//! Scenario driver for the quaternion translational-dynamics library.
//!
//! ```text
//! rvsim <orbit|convergence|entry|compare> [--config FILE] [--out DIR]
//!       [--formulation rv-euler|spherical|both] [--steps N]
//! ```
//!
//! The subcommand selects the scenario kind (overriding the config file);
//! other flags override individual config fields.  Results land in the
//! output directory as CSV files plus a JSON summary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 unusable configuration,
//! 3 dynamics failure (the offending simulation time is printed to
//! stderr).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rv_euler::scenarios_cli::{
    execute, output::write_report, FormulationChoice, ScenarioConfig, ScenarioError, ScenarioKind,
};

#[derive(Parser)]
#[command(
    name = "rvsim",
    version,
    about = "Orbit, convergence, entry, and comparison scenarios for the \
             singularity-free translational dynamics library"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one period of a circular orbit and report the error
    /// against the analytic solution.
    Orbit(RunArgs),
    /// Sweep the orbit problem over step counts.
    Convergence(RunArgs),
    /// Fly an atmospheric entry in the rotating frame under prescribed
    /// angle-of-attack and bank schedules.
    Entry(RunArgs),
    /// Run two propagations of the orbit problem and report their
    /// Cartesian difference.
    Compare(RunArgs),
}

impl Command {
    fn kind(&self) -> ScenarioKind {
        match self {
            Command::Orbit(_) => ScenarioKind::Orbit,
            Command::Convergence(_) => ScenarioKind::Convergence,
            Command::Entry(_) => ScenarioKind::Entry,
            Command::Compare(_) => ScenarioKind::Compare,
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Orbit(a)
            | Command::Convergence(a)
            | Command::Entry(a)
            | Command::Compare(a) => a,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration file (TOML).  Omitted sections take
    /// defaults; with no file at all the built-in defaults run.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Directory for result files (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Formulation override (flags beat config-file values).
    #[arg(long, value_enum)]
    formulation: Option<FormulationArg>,

    /// Step-count override.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    RvEuler,
    Spherical,
    Both,
}

impl From<FormulationArg> for FormulationChoice {
    fn from(f: FormulationArg) -> Self {
        match f {
            FormulationArg::RvEuler => FormulationChoice::RvEuler,
            FormulationArg::Spherical => FormulationChoice::Spherical,
            FormulationArg::Both => FormulationChoice::Both,
        }
    }
}

fn load_config(args: &RunArgs) -> Result<ScenarioConfig, ScenarioError> {
    match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ScenarioError::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            ScenarioConfig::from_toml_str(&text)
        }
        None => Ok(ScenarioConfig::default()),
    }
}

fn run(cli: &Cli) -> Result<(), ScenarioError> {
    let args = cli.command.args();
    let mut config = load_config(args)?;
    config.apply_overrides(
        Some(cli.command.kind()),
        args.formulation.map(FormulationChoice::from),
        args.steps,
    );

    let report = execute(&config)?;
    let paths = write_report(&report, &args.out)?;

    println!(
        "{}: formulation {}, {} steps over {:.3} s",
        report.kind.label(),
        report.formulation.label(),
        report.steps,
        report.t_final
    );
    for leg in &report.legs {
        match &leg.error_series {
            Some(series) => println!(
                "  {}: {} samples, max position error {:.6e} km",
                leg.formulation.label(),
                leg.samples.len(),
                series.e_r_max
            ),
            None => println!("  {}: {} samples", leg.formulation.label(), leg.samples.len()),
        }
    }
    if !report.convergence.is_empty() {
        let failures = report.convergence.iter().filter(|r| r.failure.is_some()).count();
        println!("  {} sweep rows ({} failed)", report.convergence.len(), failures);
    }
    if let Some(c) = &report.comparison {
        println!(
            "  max Cartesian difference: {:.6e} km, {:.6e} km/s",
            c.max_delta_r, c.max_delta_v
        );
    }
    if let Some(terminal) = &report.terminal {
        println!(
            "  terminal: r = {:.3} km, v = {:.4} km/s, gamma = {:.3} deg, eps_b1 = {:.6}, eta_b = {:.6}",
            terminal.radius, terminal.speed, terminal.gamma_deg, terminal.eps_b1, terminal.eta_b
        );
        println!(
            "  target residuals: longitude {:+.4} deg, latitude {:+.4} deg",
            terminal.longitude_residual_deg, terminal.latitude_residual_deg
        );
    }
    if let Some(summary) = &report.constraint_summary {
        println!("  path constraints: {}", if summary.all_ok() { "satisfied" } else { "VIOLATED" });
    }
    for path in &paths {
        println!("  wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, turning `rvsim ... | head` into a
    // panic on the first print after the reader closes.  Restore the
    // conventional Unix behavior: die quietly when the pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            if let Some(t) = e.failing_time() {
                eprintln!("offending simulation time: {t} s");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
