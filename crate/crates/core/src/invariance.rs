//! Sign invariance of eigenvectors and exactness of the inner estimate.
//!
//! With `b̲ > 0` every member has simple eigenvalues, and the eigenvector
//! signs can only change where an eigenvector passes through a zero entry.
//! An eigenvector of `A` with `x_i = 0` exists exactly when the principal
//! submatrices `A[1:i−1]` and `A[i+1:n]` share an eigenvalue, and zeros never
//! occur at positions `1`, `n` or at two adjacent positions.
//!
//! [`check_sign_invariance`] first tries cheap sufficient conditions (pairwise
//! disjoint outer estimates of every split pair) and then, for small orders,
//! enumerates all admissible zero patterns looking for a common value of the
//! inner-estimated eigenvalue sets of the resulting submatrices.
//!
//! [`disjoint_refinement`] handles the case where the eigenvalue sets are
//! mutually disjoint: if points just outside each inner interval are proven
//! not to be eigenvalues of any member, the inner estimate is exact.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    eigenvalue_bounds, extremal_bounds, lower_bounds_sign_invariant, upper_bounds_sign_invariant,
    EigBoundsReport, Status,
};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::SymTriInterval;
use crate::normalize::normalize;
use crate::sturm::{all_eigenvalues, kth_eigenvalue};

/// Largest order for which the exponential enumeration runs.
pub const MAX_FULL_PATH_ORDER: usize = 30;

/// Largest order for which the per-split outer-estimate test runs; above it
/// only the Gershgorin test is tried.
pub const MAX_SPLIT_TEST_ORDER: usize = 64;

/// Candidate zero positions of an eigenvector: 1-based indices in
/// `2..=n−1`, strictly increasing, no two consecutive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates the structural constraints for order `n`.
    pub fn new(members: Vec<usize>, n: usize) -> Option<Self> {
        let in_range = members.iter().all(|&i| i >= 2 && i < n);
        let spaced = members.windows(2).all(|w| w[1] >= w[0] + 2);
        (in_range && spaced).then_some(IndexSet(members))
    }

    pub(crate) fn from_members_unchecked(members: Vec<usize>) -> Self {
        IndexSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based row ranges of the principal submatrices left after deleting
    /// the rows in the set: `[1, i_1−1], [i_1+1, i_2−1], …, [i_k+1, n]`.
    pub fn segments(&self, n: usize) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut start = 0;
        for &i in &self.0 {
            out.push(start..i - 1);
            start = i;
        }
        out.push(start..n);
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Lazy lexicographic enumeration of all nonempty admissible index sets.
#[derive(Debug, Clone)]
pub struct AdmissibleSets {
    n: usize,
    current: Vec<usize>,
    started: bool,
}

impl Iterator for AdmissibleSets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let max = self.n.saturating_sub(1);
        if !self.started {
            self.started = true;
            if self.n < 3 {
                return None;
            }
            self.current.push(2);
            return Some(IndexSet(self.current.clone()));
        }
        let last = *self.current.last()?;
        if last + 2 <= max {
            self.current.push(last + 2);
            return Some(IndexSet(self.current.clone()));
        }
        while let Some(x) = self.current.pop() {
            if x < max {
                self.current.push(x + 1);
                return Some(IndexSet(self.current.clone()));
            }
        }
        None
    }
}

/// Nonempty subsets of `{2, …, n−1}` without consecutive members.
pub fn admissible_index_sets(n: usize) -> AdmissibleSets {
    AdmissibleSets {
        n,
        current: Vec::new(),
        started: false,
    }
}

/// A superset of the eigenvalue sets: one interval per eigenvalue index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterEstimate {
    pub intervals: Vec<Interval>,
}

impl OuterEstimate {
    /// Union of the intervals as sorted disjoint pieces.
    pub fn union(&self) -> Vec<Interval> {
        merge_union(self.intervals.clone())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn is_disjoint_from(&self, other: &OuterEstimate) -> bool {
        intersect_unions(&self.union(), &other.union()).is_empty()
    }
}

fn merge_union(mut ivs: Vec<Interval>) -> Vec<Interval> {
    ivs.sort_by(|a, b| a.lo().total_cmp(&b.lo()));
    let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        match out.last_mut() {
            Some(last) if iv.lo() <= last.hi() => *last = last.hull(&iv),
            _ => out.push(iv),
        }
    }
    out
}

/// Intersection of two sorted disjoint unions.
fn intersect_unions(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        if let Some(x) = a[i].intersection(&b[j]) {
            out.push(x);
        }
        if a[i].hi() < b[j].hi() {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Weyl-type outer estimate `λ_k(Aᶜ) ± ρ(Δ)`, with `Δ` the radius matrix.
pub fn outer_estimate(m: &SymTriInterval, tol: f64) -> Result<OuterEstimate> {
    let center = m.midpoint();
    let delta = m.radius();
    let centers = all_eigenvalues(&center, tol)?;
    let rho = if delta.diag().iter().chain(delta.off()).all(|&x| x == 0.0) {
        0.0
    } else {
        // Δ ≥ 0, so λ_1(Δ) = ρ(Δ) = ‖Δ‖₂
        (kth_eigenvalue(&delta, 1, tol)? + tol) * (1.0 + 8.0 * f64::EPSILON)
    };
    let slack = rho + tol + 8.0 * f64::EPSILON * m.scale();
    Ok(OuterEstimate {
        intervals: centers
            .iter()
            .map(|&c| Interval::point(c).outward(slack))
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvarianceStatus {
    Invariant,
    NotInvariant,
    Unknown,
}

impl fmt::Display for InvarianceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvarianceStatus::Invariant => "invariant",
            InvarianceStatus::NotInvariant => "not-invariant",
            InvarianceStatus::Unknown => "unknown",
        })
    }
}

/// Outer estimates of the two submatrices around one split position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitCertificate {
    /// 1-based split index `i ∈ 2..=n−1`.
    pub index: usize,
    pub left: OuterEstimate,
    pub right: OuterEstimate,
}

impl SplitCertificate {
    pub fn holds(&self) -> bool {
        self.left.is_disjoint_from(&self.right)
    }
}

/// Why a matrix was declared sign invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    /// `n ≤ 2`: no interior entry can vanish.
    NoInteriorIndex { n: usize },
    /// Gershgorin discs of all rows are pairwise disjoint, so every split
    /// pair has disjoint spectra.
    GershgorinDiscs { discs: Vec<Interval> },
    /// Every split pair has disjoint outer estimates.
    SplitOuterEstimates { splits: Vec<SplitCertificate> },
    /// No admissible zero pattern produced a common value.
    Enumeration { sets_checked: usize },
}

impl Certificate {
    /// Re-checks the stored conditions.
    pub fn recheck(&self) -> bool {
        match self {
            Certificate::NoInteriorIndex { n } => *n <= 2,
            Certificate::GershgorinDiscs { discs } => pairwise_disjoint(discs),
            Certificate::SplitOuterEstimates { splits } => {
                splits.iter().all(SplitCertificate::holds)
            }
            Certificate::Enumeration { .. } => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Certificate::NoInteriorIndex { n } => format!("order {n} has no interior index"),
            Certificate::GershgorinDiscs { discs } => {
                format!("{} Gershgorin discs pairwise disjoint", discs.len())
            }
            Certificate::SplitOuterEstimates { splits } => {
                format!(
                    "outer estimates disjoint at all {} split positions",
                    splits.len()
                )
            }
            Certificate::Enumeration { sets_checked } => {
                format!("no common value in {sets_checked} admissible index sets")
            }
        }
    }
}

/// Evidence that the signs are not invariant: at the zero pattern `set`, the
/// inner-estimated eigenvalue sets of every remaining submatrix contain
/// `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonInvarianceWitness {
    pub set: IndexSet,
    pub value: f64,
    /// For each submatrix, the inner interval containing `value`.
    pub ranges: Vec<Interval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceVerdict {
    pub status: InvarianceStatus,
    pub witness: Option<NonInvarianceWitness>,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

impl InvarianceVerdict {
    fn invariant(certificate: Certificate) -> Self {
        InvarianceVerdict {
            status: InvarianceStatus::Invariant,
            witness: None,
            certificate: Some(certificate),
            notes: Vec::new(),
        }
    }

    fn unknown(note: impl Into<String>) -> Self {
        InvarianceVerdict {
            status: InvarianceStatus::Unknown,
            witness: None,
            certificate: None,
            notes: vec![note.into()],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceOptions {
    /// Run the enumeration when the sufficient tests are inconclusive.
    pub full_path: bool,
    /// Enumeration refuses larger orders.
    pub max_full_order: usize,
    /// Report the lexicographically first witness rather than whichever
    /// worker finds one first.
    pub deterministic: bool,
}

impl Default for InvarianceOptions {
    fn default() -> Self {
        InvarianceOptions {
            full_path: true,
            max_full_order: MAX_FULL_PATH_ORDER,
            deterministic: true,
        }
    }
}

fn pairwise_disjoint(ivs: &[Interval]) -> bool {
    let mut sorted = ivs.to_vec();
    sorted.sort_by(|a, b| a.lo().total_cmp(&b.lo()));
    sorted.windows(2).all(|w| w[0].hi() < w[1].lo())
}

/// Sufficient test: disjoint outer estimates for every split position.
fn split_certificates(m: &SymTriInterval, tol: f64) -> Result<Option<Vec<SplitCertificate>>> {
    let n = m.n();
    let mut splits = Vec::with_capacity(n.saturating_sub(2));
    for index in 2..n {
        let left = outer_estimate(&m.principal(0..index - 1), tol)?;
        let right = outer_estimate(&m.principal(index..n), tol)?;
        let cert = SplitCertificate { index, left, right };
        if !cert.holds() {
            return Ok(None);
        }
        splits.push(cert);
    }
    Ok(Some(splits))
}

/// Inner-estimated eigenvalue intervals of a normalized submatrix with
/// `b̲ > 0` (one hull per index).
fn inner_intervals(m: &SymTriInterval, tol: f64) -> Result<Vec<Interval>> {
    if m.n() == 1 {
        return Ok(vec![m.diag()[0]]);
    }
    let up = upper_bounds_sign_invariant(m, tol)?;
    let lo = lower_bounds_sign_invariant(m, tol)?;
    Ok(up
        .values
        .iter()
        .zip(&lo.values)
        .map(|(&u, &l)| Interval::new_unchecked(l.min(u), l.max(u)))
        .collect())
}

enum SetOutcome {
    Clear,
    Ambiguous,
    Common(NonInvarianceWitness),
}

fn common_value(set: &IndexSet, segments: &[&Vec<Interval>], tol: f64) -> SetOutcome {
    let mut raw = merge_union(segments[0].clone());
    let inflate =
        |v: &Vec<Interval>| merge_union(v.iter().map(|iv| iv.widen(2.0 * tol, 0)).collect());
    let mut inflated = inflate(segments[0]);
    for seg in &segments[1..] {
        raw = intersect_unions(&raw, &merge_union((*seg).clone()));
        inflated = intersect_unions(&inflated, &inflate(seg));
    }
    if let Some(piece) = raw.first() {
        let value = piece.mid();
        let ranges = segments
            .iter()
            .map(|seg| {
                *seg.iter()
                    .find(|iv| iv.contains(value))
                    .expect("value lies in every segment")
            })
            .collect();
        SetOutcome::Common(NonInvarianceWitness {
            set: set.clone(),
            value,
            ranges,
        })
    } else if inflated.is_empty() {
        SetOutcome::Clear
    } else {
        SetOutcome::Ambiguous
    }
}

pub fn check_sign_invariance(m: &SymTriInterval, tol: f64) -> Result<InvarianceVerdict> {
    check_sign_invariance_with(m, tol, &InvarianceOptions::default())
}

/// Decides sign invariance where possible. Non-normalized input is
/// normalized first; this leaves the answer unchanged.
pub fn check_sign_invariance_with(
    m: &SymTriInterval,
    tol: f64,
    opts: &InvarianceOptions,
) -> Result<InvarianceVerdict> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let owned;
    let m = if m.is_nonnegative() {
        m
    } else {
        owned = normalize(m).0;
        &owned
    };
    let n = m.n();
    if let Some(j) = m.off().iter().position(|iv| iv.lo() <= 0.0) {
        return Ok(InvarianceVerdict::unknown(format!(
            "b_{} has a zero lower endpoint; the zero-pattern characterization needs every b > 0",
            j + 2
        )));
    }
    if n <= 2 {
        return Ok(InvarianceVerdict::invariant(Certificate::NoInteriorIndex {
            n,
        }));
    }

    let discs = m.gershgorin_discs();
    if pairwise_disjoint(&discs) {
        return Ok(InvarianceVerdict::invariant(Certificate::GershgorinDiscs {
            discs,
        }));
    }
    if n <= MAX_SPLIT_TEST_ORDER {
        if let Some(splits) = split_certificates(m, tol)? {
            return Ok(InvarianceVerdict::invariant(
                Certificate::SplitOuterEstimates { splits },
            ));
        }
    }
    if !opts.full_path {
        return Ok(InvarianceVerdict::unknown(
            "sufficient conditions inconclusive; enumeration not run",
        ));
    }
    if n > opts.max_full_order {
        return Ok(InvarianceVerdict::unknown(format!(
            "sufficient conditions inconclusive; enumeration refused for n = {n} > {}",
            opts.max_full_order
        )));
    }
    enumerate_zero_patterns(m, tol, opts.deterministic)
}

fn enumerate_zero_patterns(
    m: &SymTriInterval,
    tol: f64,
    deterministic: bool,
) -> Result<InvarianceVerdict> {
    let n = m.n();
    // every segment is [s, e) with s = 0 or s−1 an interior index, e = n or
    // e an interior index (0-based)
    let starts: Vec<usize> = std::iter::once(0).chain(2..n).collect();
    let mut table: Vec<Vec<Option<Vec<Interval>>>> = vec![vec![None; n + 1]; n];
    let pairs: Vec<(usize, usize)> = starts
        .iter()
        .flat_map(|&s| {
            (s + 1..=n)
                .filter(move |&e| e == n || (1..n - 1).contains(&e))
                .map(move |e| (s, e))
        })
        .collect();
    let computed: Vec<((usize, usize), Vec<Interval>)> = pairs
        .par_iter()
        .map(|&(s, e)| Ok(((s, e), inner_intervals(&m.principal(s..e), tol)?)))
        .collect::<Result<_>>()?;
    for ((s, e), ivs) in computed {
        table[s][e] = Some(ivs);
    }

    let sets: Vec<IndexSet> = admissible_index_sets(n).collect();
    let outcome = |set: &IndexSet| {
        let segs: Vec<&Vec<Interval>> = set
            .segments(n)
            .iter()
            .map(|r| table[r.start][r.end].as_ref().expect("segment precomputed"))
            .collect();
        common_value(set, &segs, tol)
    };
    let found = if deterministic {
        sets.par_iter().find_map_first(|s| match outcome(s) {
            SetOutcome::Common(w) => Some(w),
            _ => None,
        })
    } else {
        sets.par_iter().find_map_any(|s| match outcome(s) {
            SetOutcome::Common(w) => Some(w),
            _ => None,
        })
    };
    if let Some(witness) = found {
        return Ok(InvarianceVerdict {
            status: InvarianceStatus::NotInvariant,
            notes: vec![format!(
                "submatrices left by zero pattern {} share the value {}",
                witness.set, witness.value
            )],
            witness: Some(witness),
            certificate: None,
        });
    }
    let ambiguous: Vec<String> = sets
        .par_iter()
        .filter(|s| matches!(outcome(s), SetOutcome::Ambiguous))
        .map(|s| s.to_string())
        .collect();
    if !ambiguous.is_empty() {
        return Ok(InvarianceVerdict::unknown(format!(
            "submatrix intervals touch within 2·tol for zero patterns {}",
            ambiguous.join(" ")
        )));
    }
    let mut verdict = InvarianceVerdict::invariant(Certificate::Enumeration {
        sets_checked: sets.len(),
    });
    verdict
        .notes
        .push("enumeration relies on inner estimates of the submatrices being exact".to_string());
    Ok(verdict)
}

/// Answer of [`membership_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    IsEigenvalue,
    NotEigenvalue,
    Unknown,
}

/// Interval Sturm recurrence for `λI − A` over all members. Each step uses
/// every variable once, so while no quotient interval contains zero the
/// enclosure is the exact range up to outward rounding. Returns `true` when
/// no quotient can vanish, i.e. `det(λI − A) ≠ 0` for every member.
pub fn interval_sturm_nonsingular(m: &SymTriInterval, lambda: f64) -> bool {
    let lam = Interval::point(lambda);
    let mut d = lam.sub(&m.diag()[0]);
    if d.contains_zero() {
        return false;
    }
    for (a, b) in m.diag()[1..].iter().zip(m.off()) {
        let q = match b.sqr().div(&d) {
            Some(q) => q,
            None => return false,
        };
        d = lam.sub(a).sub(&q);
        if d.contains_zero() {
            return false;
        }
    }
    true
}

/// Reusable membership oracle for one interval matrix.
#[derive(Debug, Clone)]
pub struct MembershipTester<'a> {
    m: &'a SymTriInterval,
    outer: OuterEstimate,
    discs: Vec<Interval>,
    inner: Vec<Interval>,
    tol: f64,
}

impl<'a> MembershipTester<'a> {
    /// Computes the inner estimate itself.
    pub fn new(m: &'a SymTriInterval, tol: f64) -> Result<Self> {
        let inner = eigenvalue_bounds(m, tol)?;
        Self::with_inner(m, &inner, tol)
    }

    pub fn with_inner(m: &'a SymTriInterval, inner: &EigBoundsReport, tol: f64) -> Result<Self> {
        if inner.n() != m.n() {
            return Err(Error::DimensionMismatch {
                expected: m.n(),
                found: inner.n(),
            });
        }
        Ok(MembershipTester {
            m,
            outer: outer_estimate(m, tol)?,
            discs: m.gershgorin_discs(),
            inner: inner.estimates.clone(),
            tol,
        })
    }

    pub fn outer(&self) -> &OuterEstimate {
        &self.outer
    }

    /// `IsEigenvalue` within `tol` of an inner interval; `NotEigenvalue` only
    /// with proof and at distance more than `3·tol` from every inner interval.
    pub fn test(&self, lambda: f64) -> Membership {
        if !lambda.is_finite() {
            return Membership::Unknown;
        }
        let gap = self
            .inner
            .iter()
            .map(|iv| iv.distance_to(lambda))
            .fold(f64::INFINITY, f64::min);
        if gap <= self.tol {
            return Membership::IsEigenvalue;
        }
        if gap <= 3.0 * self.tol {
            return Membership::Unknown;
        }
        if !self.outer.contains(lambda)
            || !self.discs.iter().any(|d| d.contains(lambda))
            || interval_sturm_nonsingular(self.m, lambda)
        {
            return Membership::NotEigenvalue;
        }
        Membership::Unknown
    }
}

/// Is `lambda` an eigenvalue of some member of `m`?
pub fn membership_test(m: &SymTriInterval, lambda: f64, tol: f64) -> Result<Membership> {
    Ok(MembershipTester::new(m, tol)?.test(lambda))
}

/// Upgrades an inner estimate to [`Status::Exact`] when the inner intervals
/// are pairwise disjoint and, for every interior index `i = 2..n−1`, the
/// probes `μ̲_i − ε` and `μ̄_i + ε` are proven not to be eigenvalues of any
/// member. Otherwise returns `inner` unchanged with a note.
pub fn disjoint_refinement(
    m: &SymTriInterval,
    inner: EigBoundsReport,
    eps: f64,
    tol: f64,
) -> Result<EigBoundsReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if inner.n() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: inner.n(),
        });
    }
    let mut out = inner;
    if out.status == Status::Exact {
        return Ok(out);
    }
    let n = out.n();
    let est = out.estimates.clone();
    if let Some(k) = (0..n.saturating_sub(1)).find(|&k| est[k].lo() <= est[k + 1].hi()) {
        out.notes.push(format!(
            "refinement skipped: inner intervals {} and {} are not disjoint",
            k + 1,
            k + 2
        ));
        return Ok(out);
    }

    // the outermost endpoints must coincide with the assumption-free values
    let ext = extremal_bounds(m, tol)?;
    let close = |a: f64, b: f64| (a - b).abs() <= 2.0 * tol;
    if !(close(est[0].hi(), ext.upper_largest)
        && close(est[0].lo(), ext.lower_largest)
        && close(est[n - 1].hi(), ext.upper_smallest)
        && close(est[n - 1].lo(), ext.lower_smallest))
    {
        out.notes.push(
            "refinement skipped: extremal endpoints disagree with the direct vertex values".into(),
        );
        return Ok(out);
    }

    let tester = MembershipTester::with_inner(m, &out, tol)?;
    for i in 2..n {
        let iv = est[i - 1];
        for probe in [iv.lo() - eps, iv.hi() + eps] {
            let verdict = tester.test(probe);
            if verdict != Membership::NotEigenvalue {
                out.notes.push(format!(
                    "refinement failed: probe {probe} next to interval {i} is {verdict:?}"
                ));
                return Ok(out);
            }
        }
    }
    out.status = Status::Exact;
    out.notes.push(format!(
        "disjoint eigenvalue sets confirmed with probe offset {eps}"
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SymTri;

    #[test]
    fn admissible_small_orders() {
        let sets = |n| {
            admissible_index_sets(n)
                .map(|s| s.members().to_vec())
                .collect::<Vec<_>>()
        };
        assert!(sets(1).is_empty());
        assert!(sets(2).is_empty());
        assert_eq!(sets(3), vec![vec![2]]);
        assert_eq!(sets(5), vec![vec![2], vec![2, 4], vec![3], vec![4]]);
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![2, 4], 5).is_some());
        assert!(IndexSet::new(vec![1], 5).is_none());
        assert!(IndexSet::new(vec![5], 5).is_none());
        assert!(IndexSet::new(vec![2, 3], 5).is_none());
    }

    #[test]
    fn segments_cover_remaining_rows() {
        let s = IndexSet::new(vec![2, 4], 6).unwrap();
        assert_eq!(s.segments(6), vec![0..1, 2..3, 4..6]);
    }

    #[test]
    fn analytic_not_invariant() {
        let m = SymTriInterval::from_point(&SymTri::new(vec![0.0; 3], vec![1.0, 1.0]).unwrap());
        let v = check_sign_invariance(&m, 1e-12).unwrap();
        assert_eq!(v.status, InvarianceStatus::NotInvariant);
        let w = v.witness.unwrap();
        assert_eq!(w.set.members(), &[2]);
        assert!(w.value.abs() <= 1e-9);
    }

    #[test]
    fn zero_lower_offdiagonal_is_unknown() {
        let m = SymTriInterval::from_pairs(
            &[(1.0, 2.0), (3.0, 4.0), (5.0, 6.0)],
            &[(0.0, 1.0), (0.5, 1.0)],
        )
        .unwrap();
        let v = check_sign_invariance(&m, 1e-12).unwrap();
        assert_eq!(v.status, InvarianceStatus::Unknown);
    }

    #[test]
    fn separated_discs_certify() {
        let m = SymTriInterval::from_pairs(
            &[(0.0, 1.0), (10.0, 11.0), (20.0, 21.0), (30.0, 31.0)],
            &[(0.5, 1.0), (0.5, 1.0), (0.5, 1.0)],
        )
        .unwrap();
        let v = check_sign_invariance(&m, 1e-12).unwrap();
        assert_eq!(v.status, InvarianceStatus::Invariant);
        assert!(matches!(
            v.certificate,
            Some(Certificate::GershgorinDiscs { .. })
        ));
        assert!(v.certificate.unwrap().recheck());
    }

    #[test]
    fn invalid_epsilon() {
        let m = SymTriInterval::from_pairs(&[(1.0, 2.0)], &[]).unwrap();
        let r = eigenvalue_bounds(&m, 1e-12).unwrap();
        assert_eq!(
            disjoint_refinement(&m, r, 0.0, 1e-12),
            Err(Error::InvalidEpsilon(0.0))
        );
    }

    #[test]
    fn interval_sturm_below_spectrum() {
        let m = SymTriInterval::from_pairs(&[(1.0, 2.0), (1.0, 2.0)], &[(-1.0, 1.0)]).unwrap();
        assert!(interval_sturm_nonsingular(&m, -5.0));
        assert!(interval_sturm_nonsingular(&m, 10.0));
        assert!(!interval_sturm_nonsingular(&m, 1.5));
    }
}
