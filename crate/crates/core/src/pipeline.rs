//! End-to-end analysis: normalize, split into blocks, decide invariance per
//! block, compute the endpoints and upgrade them to exact when possible.

use serde::{Deserialize, Serialize};

use crate::bounds::{eigenvalue_bounds, EigBoundsReport, Status};
use crate::error::{Error, Result};
use crate::invariance::{
    check_sign_invariance_with, disjoint_refinement, IndexSet, InvarianceOptions, InvarianceStatus,
    InvarianceVerdict, NonInvarianceWitness,
};
use crate::matrix::SymTriInterval;
use crate::normalize::{normalize, split_blocks, Block, NormalizationRecord};
use crate::sturm::default_tol_for_scale;

/// Blocks up to this order also run the enumeration when the sufficient
/// invariance tests are inconclusive.
pub const PIPELINE_FULL_PATH_ORDER: usize = 16;

/// Default probe offset relative to the matrix scale.
pub const DEFAULT_RELATIVE_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Solver tolerance; `None` scales [`crate::sturm::DEFAULT_RELATIVE_TOL`]
    /// by the matrix scale.
    pub tol: Option<f64>,
    /// Probe offset of the refinement; `None` uses
    /// [`DEFAULT_RELATIVE_EPS`] times the matrix scale.
    pub eps: Option<f64>,
    /// Try the disjoint-set refinement when invariance is not certified.
    pub refine: bool,
    pub invariance: InvarianceOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            tol: None,
            eps: None,
            refine: true,
            invariance: InvarianceOptions {
                max_full_order: PIPELINE_FULL_PATH_ORDER,
                ..Default::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub report: EigBoundsReport,
    /// Combined verdict; witnesses use row indices of the full matrix.
    pub verdict: InvarianceVerdict,
    pub normalization: NormalizationRecord,
    /// `(offset, order)` of every diagonal block.
    pub blocks: Vec<(usize, usize)>,
    pub tol: f64,
}

/// Default tolerance for an interval matrix.
pub fn default_tolerance(m: &SymTriInterval) -> f64 {
    default_tol_for_scale(m.scale())
}

pub fn analyze(m: &SymTriInterval, opts: &AnalysisOptions) -> Result<Analysis> {
    let tol = opts.tol.unwrap_or_else(|| default_tolerance(m));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let eps = opts
        .eps
        .unwrap_or_else(|| DEFAULT_RELATIVE_EPS * m.scale().max(1.0));
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidEpsilon(eps));
    }

    let (nm, record) = normalize(m);
    let blocks = split_blocks(&nm);
    let verdict = blockwise_verdict(&blocks, tol, &opts.invariance)?;

    let mut report = eigenvalue_bounds(m, tol)?;
    match verdict.status {
        InvarianceStatus::Invariant => {
            report.status = Status::Exact;
            if let Some(c) = &verdict.certificate {
                report
                    .notes
                    .push(format!("sign invariance: {}", c.describe()));
            }
        }
        _ if opts.refine => {
            report = disjoint_refinement(m, report, eps, tol)?;
        }
        _ => {}
    }
    Ok(Analysis {
        report,
        verdict,
        normalization: record,
        blocks: blocks.iter().map(|b| (b.offset, b.matrix.n())).collect(),
        tol,
    })
}

/// Sign-invariance verdict of any interval matrix: normalized, split into
/// blocks, and decided block by block. Blocks larger than
/// `opts.max_full_order` only run the sufficient tests.
pub fn invariance_verdict(
    m: &SymTriInterval,
    tol: f64,
    opts: &InvarianceOptions,
) -> Result<InvarianceVerdict> {
    blockwise_verdict(&split_blocks(&normalize(m).0), tol, opts)
}

fn blockwise_verdict(
    blocks: &[Block],
    tol: f64,
    opts: &InvarianceOptions,
) -> Result<InvarianceVerdict> {
    let verdicts = blocks
        .iter()
        .map(|b| {
            let mut o = *opts;
            o.full_path = o.full_path && b.matrix.n() <= o.max_full_order;
            check_sign_invariance_with(&b.matrix, tol, &o)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(
        &blocks.iter().map(|b| b.offset).collect::<Vec<_>>(),
        verdicts,
    ))
}

/// Invariant iff every block is; the first non-invariant block supplies the
/// witness, shifted to full-matrix indices.
fn combine(offsets: &[usize], verdicts: Vec<InvarianceVerdict>) -> InvarianceVerdict {
    if verdicts.len() == 1 {
        return verdicts.into_iter().next().expect("one verdict");
    }
    let mut notes = Vec::new();
    let mut unknown = false;
    for (&off, v) in offsets.iter().zip(&verdicts) {
        for note in &v.notes {
            notes.push(format!("block at row {}: {note}", off + 1));
        }
        match v.status {
            InvarianceStatus::NotInvariant => {
                let w = v
                    .witness
                    .as_ref()
                    .expect("not-invariant verdict carries a witness");
                let members = w.set.members().iter().map(|i| i + off).collect();
                return InvarianceVerdict {
                    status: InvarianceStatus::NotInvariant,
                    witness: Some(NonInvarianceWitness {
                        set: IndexSet::from_members_unchecked(members),
                        value: w.value,
                        ranges: w.ranges.clone(),
                    }),
                    certificate: None,
                    notes,
                };
            }
            InvarianceStatus::Unknown => unknown = true,
            InvarianceStatus::Invariant => {}
        }
    }
    if unknown {
        return InvarianceVerdict {
            status: InvarianceStatus::Unknown,
            witness: None,
            certificate: None,
            notes,
        };
    }
    notes.push(format!("all {} blocks certified", verdicts.len()));
    InvarianceVerdict {
        status: InvarianceStatus::Invariant,
        witness: None,
        certificate: verdicts.into_iter().next().and_then(|v| v.certificate),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example7() -> SymTriInterval {
        SymTriInterval::from_pairs(
            &[
                (2975.0, 3025.0),
                (4965.0, 5035.0),
                (6955.0, 7045.0),
                (8945.0, 9055.0),
            ],
            &[(-2015.0, -1985.0), (-3020.0, -2980.0), (-4025.0, -3975.0)],
        )
        .unwrap()
    }

    #[test]
    fn example_is_exact() {
        let a = analyze(&example7(), &AnalysisOptions::default()).unwrap();
        assert_eq!(a.verdict.status, InvarianceStatus::Invariant);
        assert_eq!(a.report.status, Status::Exact);
        assert_eq!(a.blocks, vec![(0, 4)]);
    }

    #[test]
    fn blocks_combine() {
        let m = SymTriInterval::from_pairs(
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (5.0, 6.0)],
            &[(1.0, 1.0), (1.0, 1.0), (0.0, 0.0)],
        )
        .unwrap();
        let a = analyze(&m, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.blocks, vec![(0, 3), (3, 1)]);
        assert_eq!(a.verdict.status, InvarianceStatus::NotInvariant);
        assert_eq!(a.verdict.witness.unwrap().set.members(), &[2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = example7();
        let bad_tol = AnalysisOptions {
            tol: Some(-1.0),
            ..Default::default()
        };
        assert_eq!(analyze(&m, &bad_tol), Err(Error::InvalidTolerance(-1.0)));
        let bad_eps = AnalysisOptions {
            eps: Some(0.0),
            ..Default::default()
        };
        assert_eq!(analyze(&m, &bad_eps), Err(Error::InvalidEpsilon(0.0)));
    }
}
