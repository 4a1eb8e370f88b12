//! Oracle comparisons behind the `verify` subcommand.

use std::fmt;

use serde::{Deserialize, Serialize};
use tridiag_interval::oracle::{
    is_eigenvalue_bruteforce, sample_ranges, vertex_ranges, OracleRange, Sampling,
};
use tridiag_interval::{
    kth_eigenvalue, normalize, Analysis, Error, ExtremalBounds, InvarianceStatus, Membership,
    MembershipTester, Result, Status, SymTriInterval,
};

/// Random members drawn for the sampling checks.
pub const VERIFY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, passed: String) -> Self {
        let (outcome, detail) = if failures.is_empty() {
            (Outcome::Pass, passed)
        } else {
            (Outcome::Fail, failures.join("; "))
        };
        Check {
            name: name.to_string(),
            outcome,
            detail,
        }
    }

    fn skip(name: &str, why: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            outcome: Outcome::Skip,
            detail: why.into(),
        }
    }
}

pub struct VerifyInput<'a> {
    pub m: &'a SymTriInterval,
    pub analysis: &'a Analysis,
    pub extremal: &'a ExtremalBounds,
    pub seed: u64,
}

/// Absolute agreement demanded between the engine and the oracles.
pub fn agreement(m: &SymTriInterval, tol: f64) -> f64 {
    1e-9 * m.scale().max(1.0) + 4.0 * tol
}

pub fn run_checks(input: &VerifyInput<'_>) -> Result<Vec<Check>> {
    let VerifyInput {
        m,
        analysis,
        extremal,
        seed,
    } = *input;
    let tol = analysis.tol;
    let agree = agreement(m, tol);
    let widened = analysis.normalization.any_widened();
    let vertices = match vertex_ranges(m, tol) {
        Ok(v) => Some(v),
        Err(Error::EnumerationCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let samples = sample_ranges(
        m,
        &Sampling::Random {
            samples: VERIFY_SAMPLES,
            seed,
        },
        tol,
    )?;
    let tester = MembershipTester::with_inner(m, &analysis.report, tol)?;

    let mut checks = Vec::new();
    let too_large = || {
        format!(
            "vertex enumeration is capped at n = {}",
            tridiag_interval::oracle::ENUMERATION_CAP.div_ceil(2)
        )
    };
    match &vertices {
        Some(v) => {
            checks.push(extremal_vs_vertex(extremal, v, widened, agree));
            checks.push(inner_within_vertex(analysis, v, widened, agree));
            checks.push(exact_vs_vertex(analysis, v, widened, agree));
        }
        None => {
            for name in [
                "extremal vs vertex",
                "inner within vertex",
                "exact vs vertex",
            ] {
                checks.push(Check::skip(name, too_large()));
            }
        }
    }
    checks.push(samples_inside(analysis, &tester, &samples, agree));
    checks.push(witness_reproduction(m, analysis, agree)?);
    checks.push(outer_encloses(analysis, &tester));
    checks.push(membership_consistency(
        m,
        analysis,
        &tester,
        vertices.is_some(),
        agree,
    )?);
    checks.push(verdict_witness(m, analysis, tol, agree)?);
    Ok(checks)
}

fn extremal_vs_vertex(e: &ExtremalBounds, v: &[OracleRange], widened: bool, agree: f64) -> Check {
    let n = v.len();
    let mut pairs = vec![
        ("upper lambda_1", e.upper_largest, v[0].hi),
        ("lower lambda_n", e.lower_smallest, v[n - 1].lo),
    ];
    if !widened {
        pairs.push(("lower lambda_1", e.lower_largest, v[0].lo));
        pairs.push(("upper lambda_n", e.upper_smallest, v[n - 1].hi));
    }
    let failures = pairs
        .iter()
        .filter(|(_, got, want)| (got - want).abs() > agree)
        .map(|(label, got, want)| format!("{label} = {got} but vertex extremum is {want}"))
        .collect();
    Check::new(
        "extremal vs vertex",
        failures,
        format!("{} values within {agree:.1e}", pairs.len()),
    )
}

fn inner_within_vertex(a: &Analysis, v: &[OracleRange], widened: bool, agree: f64) -> Check {
    if widened {
        return Check::skip(
            "inner within vertex",
            "normalization widened an off-diagonal entry",
        );
    }
    let failures = a
        .report
        .estimates
        .iter()
        .zip(v)
        .filter(|(iv, r)| iv.lo() < r.lo - agree || iv.hi() > r.hi + agree)
        .map(|(iv, r)| format!("k={}: {iv} not within [{}, {}]", r.k, r.lo, r.hi))
        .collect();
    Check::new(
        "inner within vertex",
        failures,
        format!("{} intervals", v.len()),
    )
}

fn exact_vs_vertex(a: &Analysis, v: &[OracleRange], widened: bool, agree: f64) -> Check {
    if a.report.status != Status::Exact {
        return Check::skip("exact vs vertex", format!("status is {}", a.report.status));
    }
    if widened {
        return Check::skip(
            "exact vs vertex",
            "normalization widened an off-diagonal entry",
        );
    }
    let failures = a
        .report
        .estimates
        .iter()
        .zip(v)
        .filter(|(iv, r)| (iv.lo() - r.lo).abs() > agree || (iv.hi() - r.hi).abs() > agree)
        .map(|(iv, r)| format!("k={}: {iv} vs vertex [{}, {}]", r.k, r.lo, r.hi))
        .collect();
    Check::new(
        "exact vs vertex",
        failures,
        format!("{} intervals within {agree:.1e}", v.len()),
    )
}

fn samples_inside(
    a: &Analysis,
    tester: &MembershipTester<'_>,
    s: &[OracleRange],
    agree: f64,
) -> Check {
    let exact = a.report.status == Status::Exact;
    let mut failures = Vec::new();
    for (k, r) in s.iter().enumerate() {
        let outer = tester.outer().intervals[k];
        if r.lo < outer.lo() || r.hi > outer.hi() {
            failures.push(format!(
                "k={}: samples [{}, {}] leave outer {outer}",
                r.k, r.lo, r.hi
            ));
        }
        let iv = a.report.intervals[k];
        if exact && (r.lo < iv.lo() - agree || r.hi > iv.hi() + agree) {
            failures.push(format!(
                "k={}: samples [{}, {}] leave exact {iv}",
                r.k, r.lo, r.hi
            ));
        }
    }
    let within = if exact {
        "outer and exact intervals"
    } else {
        "outer intervals"
    };
    let evaluated = s.first().map_or(0, |r| r.evaluated);
    Check::new(
        "samples inside",
        failures,
        format!("{evaluated} members within {within}"),
    )
}

fn witness_reproduction(m: &SymTriInterval, a: &Analysis, agree: f64) -> Result<Check> {
    let r = &a.report;
    let mut failures = Vec::new();
    for k in 0..r.n() {
        for (w, end, label) in [
            (&r.upper_witness[k], r.estimates[k].hi(), "upper"),
            (&r.lower_witness[k], r.estimates[k].lo(), "lower"),
        ] {
            if !m.contains(w) {
                failures.push(format!("k={}: {label} witness is not a member", k + 1));
                continue;
            }
            let got = kth_eigenvalue(w, k + 1, a.tol)?;
            if (got - end).abs() > agree {
                failures.push(format!(
                    "k={}: {label} witness gives {got}, endpoint is {end}",
                    k + 1
                ));
            }
        }
    }
    Ok(Check::new(
        "witness reproduction",
        failures,
        format!("{} witnesses", 2 * r.n()),
    ))
}

fn outer_encloses(a: &Analysis, tester: &MembershipTester<'_>) -> Check {
    let failures = a
        .report
        .estimates
        .iter()
        .zip(&tester.outer().intervals)
        .enumerate()
        .filter(|(_, (iv, o))| !o.encloses(iv))
        .map(|(k, (iv, o))| format!("k={}: {iv} not inside outer {o}", k + 1))
        .collect();
    Check::new(
        "outer encloses",
        failures,
        format!("{} intervals", a.report.n()),
    )
}

fn membership_consistency(
    m: &SymTriInterval,
    a: &Analysis,
    tester: &MembershipTester<'_>,
    brute: bool,
    agree: f64,
) -> Result<Check> {
    let est = &a.report.estimates;
    let mut failures = Vec::new();
    let mut on_spectrum = Vec::new();
    for iv in est {
        on_spectrum.extend([iv.lo(), iv.mid(), iv.hi()]);
    }
    for &x in &on_spectrum {
        if tester.test(x) == Membership::NotEigenvalue {
            failures.push(format!("{x} is attained but was rejected"));
        }
    }
    let mut probes: Vec<f64> = Vec::new();
    let top = est
        .iter()
        .map(|iv| iv.hi())
        .fold(f64::NEG_INFINITY, f64::max);
    let bottom = est.iter().map(|iv| iv.lo()).fold(f64::INFINITY, f64::min);
    probes.push(top + 1.0 + agree);
    probes.push(bottom - 1.0 - agree);
    for w in est.windows(2) {
        if w[1].hi() < w[0].lo() {
            probes.push(0.5 * (w[1].hi() + w[0].lo()));
        }
    }
    let mut proven = 0;
    for &x in &probes {
        if tester.test(x) != Membership::NotEigenvalue {
            continue;
        }
        proven += 1;
        if brute && is_eigenvalue_bruteforce(m, x, agree)? {
            failures.push(format!(
                "{x} was rejected but a sampled member has it as an eigenvalue"
            ));
        }
    }
    let how = if brute {
        "confirmed by brute force"
    } else {
        "brute force skipped"
    };
    Ok(Check::new(
        "membership consistency",
        failures,
        format!(
            "{} attained values accepted, {proven}/{} gap probes rejected, {how}",
            on_spectrum.len(),
            probes.len()
        ),
    ))
}

fn verdict_witness(m: &SymTriInterval, a: &Analysis, tol: f64, agree: f64) -> Result<Check> {
    let v = &a.verdict;
    match v.status {
        InvarianceStatus::Unknown => Ok(Check::skip("verdict witness", "verdict is unknown")),
        InvarianceStatus::Invariant => {
            let ok = v.certificate.as_ref().is_some_and(|c| c.recheck());
            let failures = if ok {
                Vec::new()
            } else {
                vec!["certificate does not recheck".to_string()]
            };
            let what = v
                .certificate
                .as_ref()
                .map_or_else(String::new, |c| c.describe());
            Ok(Check::new(
                "verdict witness",
                failures,
                format!("certificate rechecked: {what}"),
            ))
        }
        InvarianceStatus::NotInvariant => {
            let Some(w) = &v.witness else {
                return Ok(Check::new(
                    "verdict witness",
                    vec!["no witness recorded".into()],
                    String::new(),
                ));
            };
            let nm = normalize(m).0;
            let mut failures = Vec::new();
            for (seg, range) in w.set.segments(m.n()).into_iter().zip(&w.ranges) {
                if !range.contains(w.value) {
                    failures.push(format!("value {} outside segment range {range}", w.value));
                    continue;
                }
                let sub = nm.principal(seg.clone());
                let attained = match vertex_ranges(&sub, tol) {
                    Ok(vr) => vr
                        .iter()
                        .any(|r| r.lo - agree <= range.lo() && range.hi() <= r.hi + agree),
                    Err(Error::EnumerationCap { .. }) => true,
                    Err(e) => return Err(e),
                };
                if !attained {
                    failures.push(format!(
                        "rows {}..{}: range {range} is not attained by vertices",
                        seg.start + 1,
                        seg.end
                    ));
                }
            }
            Ok(Check::new(
                "verdict witness",
                failures,
                format!(
                    "zero pattern {} shares value {} across {} segments",
                    w.set,
                    w.value,
                    w.ranges.len()
                ),
            ))
        }
    }
}
