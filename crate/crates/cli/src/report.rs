//! Machine output schema and the plain-text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tridiag_interval::{
    Analysis, ExtremalBounds, Interval, InvarianceVerdict, PropertyReport, SymTri, SymTriInterval,
};

use crate::verify::Check;

/// Witnesses are listed in text output up to this order.
pub const TEXT_WITNESS_ORDER: usize = 16;

/// Top-level JSON document; every subcommand fills the same keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub command: String,
    pub name: Option<String>,
    pub n: usize,
    pub status: String,
    /// Eigenvalue intervals, full precision, `k = 1..n` descending.
    pub intervals: Vec<Interval>,
    pub witnesses: Vec<Witness>,
    pub verdict: Option<InvarianceVerdict>,
    pub details: Details,
    pub notes: Vec<String>,
    /// Wall-clock timings; `null` under `--deterministic`.
    pub timings: Option<Timings>,
}

/// Vertex matrices attaining the endpoints of interval `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub lower: SymTri,
    pub upper: SymTri,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Details {
    Bounds {
        /// Endpoints before outward widening.
        estimates: Vec<Interval>,
        tol: f64,
        /// `(offset, order)` of the diagonal blocks after normalization.
        blocks: Vec<(usize, usize)>,
        shift: f64,
    },
    Extremal(ExtremalBounds),
    Invariance {
        tol: f64,
    },
    Properties(PropertyReport),
    Verify {
        checks: Vec<Check>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub compute_ms: f64,
}

/// Endpoint rounded toward −∞ at 4 decimals.
pub fn floor4(x: f64) -> String {
    fixed4((x * 1e4).floor() / 1e4)
}

/// Endpoint rounded toward +∞ at 4 decimals.
pub fn ceil4(x: f64) -> String {
    fixed4((x * 1e4).ceil() / 1e4)
}

pub fn fixed4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub fn outward(iv: &Interval) -> String {
    format!("[{}, {}]", floor4(iv.lo()), ceil4(iv.hi()))
}

/// One character per entry: `U` at the upper endpoint, `L` at the lower,
/// `=` for a point entry, `*` strictly inside.
pub fn selector(m: &SymTriInterval, w: &SymTri) -> String {
    let pick = |iv: &Interval, x: f64| {
        if iv.is_degenerate() && x == iv.lo() {
            '='
        } else if x == iv.hi() {
            'U'
        } else if x == iv.lo() {
            'L'
        } else {
            '*'
        }
    };
    let a: String = m
        .diag()
        .iter()
        .zip(w.diag())
        .map(|(iv, &x)| pick(iv, x))
        .collect();
    let b: String = m
        .off()
        .iter()
        .zip(w.off())
        .map(|(iv, &x)| pick(iv, x))
        .collect();
    format!("a:{a} b:{b}")
}

fn header(out: &mut String, o: &Output) {
    let name = o.name.as_deref().unwrap_or("<input>");
    let _ = writeln!(out, "{} {} (n = {})", o.command, name, o.n);
}

fn verdict_line(out: &mut String, v: &InvarianceVerdict) {
    let _ = write!(out, "invariance: {}", v.status);
    if let Some(c) = &v.certificate {
        let _ = write!(out, " ({})", c.describe());
    }
    if let Some(w) = &v.witness {
        let _ = write!(
            out,
            " (zero pattern {} shares value {})",
            w.set,
            fixed4(w.value)
        );
    }
    out.push('\n');
}

fn notes(out: &mut String, o: &Output) {
    for note in &o.notes {
        let _ = writeln!(out, "note: {note}");
    }
}

pub fn render_bounds(o: &Output, m: &SymTriInterval, a: &Analysis) -> String {
    let mut out = String::new();
    header(&mut out, o);
    let _ = writeln!(out, "status: {}", o.status);
    verdict_line(&mut out, &a.verdict);
    let show = o.n <= TEXT_WITNESS_ORDER;
    let width = o
        .intervals
        .iter()
        .map(|iv| outward(iv).len())
        .max()
        .unwrap_or(0);
    for (k, iv) in o.intervals.iter().enumerate() {
        let _ = write!(out, "lambda_{:<3} {:<width$}", k + 1, outward(iv));
        if show {
            let w = &o.witnesses[k];
            let _ = write!(
                out,
                "  lower at {}  upper at {}",
                selector(m, &w.lower),
                selector(m, &w.upper)
            );
        }
        out.push('\n');
    }
    if !show {
        let _ = writeln!(
            out,
            "witnesses omitted for n > {TEXT_WITNESS_ORDER}; use --json"
        );
    }
    notes(&mut out, o);
    out
}

pub fn render_extremal(o: &Output, e: &ExtremalBounds) -> String {
    let mut out = String::new();
    header(&mut out, o);
    let rows = [
        ("upper lambda_1", e.upper_largest),
        ("lower lambda_1", e.lower_largest),
        ("upper lambda_n", e.upper_smallest),
        ("lower lambda_n", e.lower_smallest),
    ];
    for (label, v) in rows {
        let _ = writeln!(out, "{label} = {}", fixed4(v));
    }
    let _ = writeln!(out, "error bound: {:.3e}", e.error);
    notes(&mut out, o);
    out
}

pub fn render_invariance(o: &Output, v: &InvarianceVerdict) -> String {
    let mut out = String::new();
    header(&mut out, o);
    verdict_line(&mut out, v);
    if let Some(w) = &v.witness {
        for (i, r) in w.ranges.iter().enumerate() {
            let _ = writeln!(out, "  segment {}: {}", i + 1, outward(r));
        }
    }
    for note in &v.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn render_properties(o: &Output, p: &PropertyReport) -> String {
    let mut out = String::new();
    header(&mut out, o);
    let _ = writeln!(out, "positive definite:     {}", p.positive_definite);
    let _ = writeln!(out, "positive semidefinite: {}", p.positive_semidefinite);
    let _ = writeln!(out, "Schur stable:          {}", p.schur_stable);
    let _ = writeln!(out, "Hurwitz stable:        {}", p.hurwitz_stable);
    let _ = writeln!(
        out,
        "max spectral radius:   {}",
        outward(&p.max_spectral_radius)
    );
    let e = &p.extremal;
    let _ = writeln!(
        out,
        "lambda_1 set:          {}",
        outward(&Interval::hull_of(e.lower_largest, e.upper_largest).expect("finite"))
    );
    let _ = writeln!(
        out,
        "lambda_n set:          {}",
        outward(&Interval::hull_of(e.lower_smallest, e.upper_smallest).expect("finite"))
    );
    out
}

pub fn render_verify(o: &Output, checks: &[Check]) -> String {
    let mut out = String::new();
    header(&mut out, o);
    for c in checks {
        let _ = writeln!(out, "{} {}: {}", c.outcome, c.name, c.detail);
    }
    let _ = writeln!(out, "result: {}", o.status);
    out
}
