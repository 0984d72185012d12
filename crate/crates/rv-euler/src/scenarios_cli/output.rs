//! Deterministic result files for scenario runs.
//!
//! Column layouts are part of the tool's contract and are frozen:
//!
//! * `trajectory.csv` — `t,r,v,eps_a1,eps_a2,eps_a3,eta_a,eps_b1,eps_b2,eps_b3,eta_b,x,y,z,vx,vy,vz`
//! * `error.csv` — `t,e_r`
//! * `constraints.csv` — `t,aero_load,q,alpha,sigma` (angles in degrees)
//! * `convergence.csv` — `formulation,n,e_r_max,failure`
//! * `difference.csv` — `t,delta_r,delta_v`
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! rerun of the same scenario produces byte-identical files.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::propagation::{ConvergenceRow, ErrorSeries};
use crate::scenarios_cli::{
    ComparisonSeries, ConstraintSample, RunReport, ScenarioError, ScenarioKind, TrajectorySample,
};

pub const TRAJECTORY_HEADER: &str =
    "t,r,v,eps_a1,eps_a2,eps_a3,eta_a,eps_b1,eps_b2,eps_b3,eta_b,x,y,z,vx,vy,vz";
pub const ERROR_HEADER: &str = "t,e_r";
pub const CONSTRAINTS_HEADER: &str = "t,aero_load,q,alpha,sigma";
pub const CONVERGENCE_HEADER: &str = "formulation,n,e_r_max,failure";
pub const DIFFERENCE_HEADER: &str = "t,delta_r,delta_v";

fn create(path: &Path) -> Result<BufWriter<fs::File>, ScenarioError> {
    Ok(BufWriter::new(fs::File::create(path)?))
}

fn write_trajectory_csv(path: &Path, samples: &[TrajectorySample]) -> Result<(), ScenarioError> {
    let mut w = create(path)?;
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            s.t,
            s.r,
            s.v,
            s.ep_a.eps.x,
            s.ep_a.eps.y,
            s.ep_a.eps.z,
            s.ep_a.eta,
            s.ep_b.eps.x,
            s.ep_b.eps.y,
            s.ep_b.eps.z,
            s.ep_b.eta,
            s.cart.r_vec.x,
            s.cart.r_vec.y,
            s.cart.r_vec.z,
            s.cart.v_vec.x,
            s.cart.v_vec.y,
            s.cart.v_vec.z,
        )?;
    }
    w.flush()?;
    Ok(())
}

fn write_error_csv(path: &Path, series: &ErrorSeries) -> Result<(), ScenarioError> {
    let mut w = create(path)?;
    writeln!(w, "{ERROR_HEADER}")?;
    for (t, e) in series.times.iter().zip(&series.e_r) {
        writeln!(w, "{t},{e}")?;
    }
    w.flush()?;
    Ok(())
}

fn write_constraints_csv(path: &Path, rows: &[ConstraintSample]) -> Result<(), ScenarioError> {
    let mut w = create(path)?;
    writeln!(w, "{CONSTRAINTS_HEADER}")?;
    for c in rows {
        writeln!(w, "{},{},{},{},{}", c.t, c.aero_load, c.q, c.alpha_deg, c.sigma_deg)?;
    }
    w.flush()?;
    Ok(())
}

fn write_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<(), ScenarioError> {
    let mut w = create(path)?;
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for row in rows {
        let e_r_max = row.e_r_max.map(|e| e.to_string()).unwrap_or_default();
        // Failure text is quoted so commas inside messages cannot split
        // the column.
        let failure = row
            .failure
            .as_deref()
            .map(|f| format!("\"{}\"", f.replace('"', "\"\"")))
            .unwrap_or_default();
        writeln!(w, "{},{},{},{}", row.formulation.label(), row.n, e_r_max, failure)?;
    }
    w.flush()?;
    Ok(())
}

fn write_difference_csv(path: &Path, series: &ComparisonSeries) -> Result<(), ScenarioError> {
    let mut w = create(path)?;
    writeln!(w, "{DIFFERENCE_HEADER}")?;
    for ((t, dr), dv) in series.times.iter().zip(&series.delta_r).zip(&series.delta_v) {
        writeln!(w, "{t},{dr},{dv}")?;
    }
    w.flush()?;
    Ok(())
}

// ── JSON summary ────────────────────────────────────────────────────────────

#[derive(Serialize)]
struct LegDoc {
    formulation: &'static str,
    samples: usize,
    e_r_max: Option<f64>,
}

#[derive(Serialize)]
struct ConvergenceRowDoc {
    formulation: &'static str,
    n: usize,
    e_r_max: Option<f64>,
    failure: Option<String>,
}

#[derive(Serialize)]
struct ComparisonDoc {
    max_delta_r: f64,
    max_delta_v: f64,
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    kind: &'static str,
    formulation: &'static str,
    steps: usize,
    renormalize: bool,
    t_final: f64,
    legs: Vec<LegDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    convergence: Vec<ConvergenceRowDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constraint_summary: Option<&'a crate::scenarios_cli::ConstraintSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<ComparisonDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terminal: Option<&'a crate::scenarios_cli::TerminalDiagnostics>,
    files: Vec<String>,
}

/// The JSON summary document for a finished run, listing the data files
/// written alongside it.
pub fn summary_json(report: &RunReport, files: &[String]) -> Result<String, ScenarioError> {
    let doc = SummaryDoc {
        kind: report.kind.label(),
        formulation: report.formulation.label(),
        steps: report.steps,
        renormalize: report.renormalize,
        t_final: report.t_final,
        legs: report
            .legs
            .iter()
            .map(|leg| LegDoc {
                formulation: leg.formulation.label(),
                samples: leg.samples.len(),
                e_r_max: leg.error_series.as_ref().map(|s| s.e_r_max),
            })
            .collect(),
        convergence: report
            .convergence
            .iter()
            .map(|row| ConvergenceRowDoc {
                formulation: row.formulation.label(),
                n: row.n,
                e_r_max: row.e_r_max,
                failure: row.failure.clone(),
            })
            .collect(),
        constraint_summary: report.constraint_summary.as_ref(),
        comparison: report
            .comparison
            .as_ref()
            .map(|c| ComparisonDoc { max_delta_r: c.max_delta_r, max_delta_v: c.max_delta_v }),
        terminal: report.terminal.as_ref(),
        files: files.to_vec(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| ScenarioError::Io(e.to_string()))
}

/// Writes every output file for a run into `out_dir` (created if needed)
/// and returns the paths written.  File names by kind:
///
/// * orbit — `trajectory.csv`, `error.csv`, `summary.json`
/// * convergence — `convergence.csv`, `summary.json`
/// * entry — `trajectory.csv`, `constraints.csv`, `summary.json`
/// * compare — `trajectory_a.csv`/`trajectory_b.csv`,
///   `error_a.csv`/`error_b.csv`, `difference.csv`, `summary.json`
///   (leg-to-formulation mapping is recorded in the summary)
pub fn write_report(report: &RunReport, out_dir: &Path) -> Result<Vec<PathBuf>, ScenarioError> {
    fs::create_dir_all(out_dir)?;
    let mut names: Vec<String> = Vec::new();
    let mut paths: Vec<PathBuf> = Vec::new();
    let mut emit = |name: &str| -> PathBuf {
        names.push(name.to_string());
        let p = out_dir.join(name);
        paths.push(p.clone());
        p
    };

    match report.kind {
        ScenarioKind::Orbit => {
            let leg = report
                .legs
                .first()
                .ok_or_else(|| ScenarioError::Io("orbit report has no trajectory".into()))?;
            write_trajectory_csv(&emit("trajectory.csv"), &leg.samples)?;
            if let Some(series) = &leg.error_series {
                write_error_csv(&emit("error.csv"), series)?;
            }
        }
        ScenarioKind::Convergence => {
            write_convergence_csv(&emit("convergence.csv"), &report.convergence)?;
        }
        ScenarioKind::Entry => {
            let leg = report
                .legs
                .first()
                .ok_or_else(|| ScenarioError::Io("entry report has no trajectory".into()))?;
            write_trajectory_csv(&emit("trajectory.csv"), &leg.samples)?;
            write_constraints_csv(&emit("constraints.csv"), &report.constraints)?;
        }
        ScenarioKind::Compare => {
            for (leg, suffix) in report.legs.iter().zip(["a", "b"]) {
                write_trajectory_csv(&emit(&format!("trajectory_{suffix}.csv")), &leg.samples)?;
                if let Some(series) = &leg.error_series {
                    write_error_csv(&emit(&format!("error_{suffix}.csv")), series)?;
                }
            }
            if let Some(series) = &report.comparison {
                write_difference_csv(&emit("difference.csv"), series)?;
            }
        }
    }

    let summary_path = emit("summary.json");
    let mut json_names = names.clone();
    // The summary lists itself last, matching the order files appear on disk.
    if let Some(last) = json_names.last_mut() {
        *last = "summary.json".to_string();
    }
    fs::write(&summary_path, summary_json(report, &json_names)?)?;
    Ok(paths)
}
