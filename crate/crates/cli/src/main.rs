//! `tridiag-bounds`: eigenvalue bounds of symmetric tridiagonal interval
//! matrices from the command line.

mod problem;
mod report;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use tridiag_interval::pipeline::PIPELINE_FULL_PATH_ORDER;
use tridiag_interval::{
    analyze, default_tolerance, extremal_bounds, invariance_verdict, property_checks,
    AnalysisOptions, Interval, InvarianceOptions, InvarianceStatus,
};

use problem::InputError;
use report::{Details, Output, Timings, Witness};
use verify::{Outcome, VerifyInput};

#[derive(Debug, Parser)]
#[command(
    name = "tridiag-bounds",
    version,
    about = "Eigenvalue bounds of symmetric tridiagonal interval matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue intervals for every index, with witnesses and status.
    Bounds(Common),
    /// Largest and smallest eigenvalue ranges; valid for any input.
    Extremal(Common),
    /// Sign-invariance verdict with its certificate or witness.
    CheckInvariance(Common),
    /// Definiteness and stability of every member.
    Properties(Common),
    /// Compares the engine against brute-force oracles.
    Verify(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file (JSON, or CSV with --csv).
    file: PathBuf,
    /// Solver tolerance; defaults to 1e-12 times the matrix scale.
    #[arg(long)]
    tol: Option<f64>,
    /// Probe offset of the disjoint-interval refinement; defaults to 1e-6 times the scale.
    #[arg(long)]
    eps: Option<f64>,
    /// Print the JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Read the four-column CSV format.
    #[arg(long)]
    csv: bool,
    /// Seed of the random members drawn by `verify`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest block order for which admissible zero patterns are enumerated.
    #[arg(long, value_name = "ORDER")]
    max_enum: Option<usize>,
    /// Omit timings and report the lexicographically first witness, so that
    /// repeated runs print identical bytes.
    #[arg(long)]
    deterministic: bool,
    /// Exit with status 1 on an unknown verdict or a failed check.
    #[arg(long)]
    strict: bool,
    /// Skip the disjoint-interval refinement.
    #[arg(long)]
    no_refine: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Engine(#[from] tridiag_interval::Error),
}

const CHECK_INVARIANCE_FULL_ORDER: usize = 30;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<(String, u8), CliError> {
    let (name, c) = match command {
        Command::Bounds(c) => ("bounds", c),
        Command::Extremal(c) => ("extremal", c),
        Command::CheckInvariance(c) => ("check-invariance", c),
        Command::Properties(c) => ("properties", c),
        Command::Verify(c) => ("verify", c),
    };
    let problem = problem::load(&c.file, c.csv)?;
    let m = problem.matrix();
    let tol = c.tol.unwrap_or_else(|| default_tolerance(&m));
    let start = Instant::now();
    let mut out = Output {
        command: name.to_string(),
        name: problem.name.clone(),
        n: m.n(),
        status: String::new(),
        intervals: Vec::new(),
        witnesses: Vec::new(),
        verdict: None,
        details: Details::Invariance { tol },
        notes: Vec::new(),
        timings: None,
    };
    let finish = |out: &mut Output| {
        if !c.deterministic {
            out.timings = Some(Timings {
                compute_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    };
    let mut code = 0;
    let text = match command {
        Command::Bounds(_) => {
            let a = analyze(&m, &analysis_options(c, tol, PIPELINE_FULL_PATH_ORDER))?;
            fill_bounds(&mut out, &a);
            finish(&mut out);
            (!c.json).then(|| report::render_bounds(&out, &m, &a))
        }
        Command::Extremal(_) => {
            let e = extremal_bounds(&m, tol)?;
            out.status = "exact".into();
            out.intervals = vec![
                Interval::hull_of(e.lower_largest, e.upper_largest)?,
                Interval::hull_of(e.lower_smallest, e.upper_smallest)?,
            ];
            out.details = Details::Extremal(e.clone());
            finish(&mut out);
            (!c.json).then(|| report::render_extremal(&out, &e))
        }
        Command::CheckInvariance(_) => {
            let opts = invariance_options(c, CHECK_INVARIANCE_FULL_ORDER);
            let v = invariance_verdict(&m, tol, &opts)?;
            out.status = v.status.to_string();
            if c.strict && v.status == InvarianceStatus::Unknown {
                code = 1;
            }
            out.verdict = Some(v.clone());
            finish(&mut out);
            (!c.json).then(|| report::render_invariance(&out, &v))
        }
        Command::Properties(_) => {
            let p = property_checks(&m, tol)?;
            out.status = "decided".into();
            if [
                p.positive_definite,
                p.positive_semidefinite,
                p.schur_stable,
                p.hurwitz_stable,
            ]
            .contains(&tridiag_interval::Decision::Undecided)
            {
                out.status = "undecided".into();
            }
            out.intervals = vec![p.max_spectral_radius];
            out.details = Details::Properties(p.clone());
            finish(&mut out);
            (!c.json).then(|| report::render_properties(&out, &p))
        }
        Command::Verify(_) => {
            let a = analyze(&m, &analysis_options(c, tol, PIPELINE_FULL_PATH_ORDER))?;
            let e = extremal_bounds(&m, tol)?;
            let checks = verify::run_checks(&VerifyInput {
                m: &m,
                analysis: &a,
                extremal: &e,
                seed: c.seed,
            })?;
            fill_bounds(&mut out, &a);
            let failed = checks.iter().any(|ch| ch.outcome == Outcome::Fail);
            out.status = if failed { "fail" } else { "pass" }.into();
            if failed && c.strict {
                code = 1;
            }
            out.details = Details::Verify {
                checks: checks.clone(),
            };
            finish(&mut out);
            (!c.json).then(|| report::render_verify(&out, &checks))
        }
    };
    let text = match text {
        Some(t) => t,
        None => {
            let mut s = serde_json::to_string_pretty(&out).expect("output serializes");
            s.push('\n');
            s
        }
    };
    Ok((text, code))
}

fn invariance_options(c: &Common, default_order: usize) -> InvarianceOptions {
    InvarianceOptions {
        full_path: true,
        max_full_order: c.max_enum.unwrap_or(default_order),
        deterministic: c.deterministic,
    }
}

fn analysis_options(c: &Common, tol: f64, default_order: usize) -> AnalysisOptions {
    AnalysisOptions {
        tol: Some(tol),
        eps: c.eps,
        refine: !c.no_refine,
        invariance: invariance_options(c, default_order),
    }
}

fn fill_bounds(out: &mut Output, a: &tridiag_interval::Analysis) {
    let r = &a.report;
    out.status = r.status.to_string();
    out.intervals = r.intervals.clone();
    out.witnesses = (0..r.n())
        .map(|k| Witness {
            k: k + 1,
            lower: r.lower_witness[k].clone(),
            upper: r.upper_witness[k].clone(),
        })
        .collect();
    out.verdict = Some(a.verdict.clone());
    out.notes = r.notes.clone();
    out.details = Details::Bounds {
        estimates: r.estimates.clone(),
        tol: a.tol,
        blocks: a.blocks.clone(),
        shift: a.normalization.shift,
    };
}
