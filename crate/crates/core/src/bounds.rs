//! Endpoints of the eigenvalue sets `λ_k(𝐀) = [λ̲_k, λ̄_k]`.
//!
//! Upper endpoints follow the midpoint-eigenvector construction: every
//! diagonal entry is taken at its upper endpoint, and off-diagonal entry `i`
//! at its upper endpoint exactly when consecutive entries `x_i, x_{i+1}` of
//! the `k`-th midpoint eigenvector have the same sign. The eigenvalue `λ_k`
//! of that vertex matrix is `λ̄_k` when the eigenvector signs are invariant
//! over the set, and an inner estimate otherwise. Lower endpoints come from
//! `λ̲_k(𝐀) = −λ̄_{n+1−k}(−𝐀)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, OUTWARD_ULPS};
use crate::matrix::{SymTri, SymTriInterval};
use crate::normalize::{abs_offdiagonal, denormalize_bounds, normalize, split_blocks};
use crate::sturm::{
    all_eigenvalues_full_precision, eigenvector_signs, kth_eigenvalue, kth_eigenvalues_near, Sign,
    SignPattern,
};

/// How much the reported intervals can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The intervals are the eigenvalue sets (up to solver tolerance).
    Exact,
    /// Every reported interval is contained in the true eigenvalue set.
    InnerEstimate,
    /// Every reported interval contains the true eigenvalue set.
    Outer,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::InnerEstimate => "inner-estimate",
            Status::Outer => "outer",
        })
    }
}

/// Eigenvalue intervals of an interval matrix, descending in `k`, with the
/// vertex matrices that attain each endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigBoundsReport {
    /// Reported intervals: `estimates` widened outward by `2·tol` and
    /// [`OUTWARD_ULPS`] ulps.
    pub intervals: Vec<Interval>,
    /// `[λ_k(lower_witness[k]), λ_k(upper_witness[k])]` as computed.
    pub estimates: Vec<Interval>,
    pub upper_witness: Vec<SymTri>,
    pub lower_witness: Vec<SymTri>,
    pub status: Status,
    pub notes: Vec<String>,
    /// Solver tolerance the endpoints were computed with.
    pub tol: f64,
}

impl EigBoundsReport {
    pub fn n(&self) -> usize {
        self.estimates.len()
    }

    /// Builds a report from per-index endpoint values and witnesses.
    ///
    /// If an upper value falls below the matching lower value (possible for
    /// inner estimates), the pair is swapped together with its witnesses.
    pub fn assemble(
        upper: Vec<f64>,
        upper_witness: Vec<SymTri>,
        lower: Vec<f64>,
        lower_witness: Vec<SymTri>,
        tol: f64,
        status: Status,
        mut notes: Vec<String>,
    ) -> Self {
        let n = upper.len();
        assert!(lower.len() == n && upper_witness.len() == n && lower_witness.len() == n);
        let mut estimates = Vec::with_capacity(n);
        let mut up_w = upper_witness;
        let mut lo_w = lower_witness;
        for k in 0..n {
            let (mut lo, mut hi) = (lower[k], upper[k]);
            if lo > hi {
                notes.push(format!(
                    "k={}: computed lower endpoint exceeded upper; swapped",
                    k + 1
                ));
                std::mem::swap(&mut lo, &mut hi);
                std::mem::swap(&mut up_w[k], &mut lo_w[k]);
            }
            estimates.push(Interval::new_unchecked(lo, hi));
        }
        let intervals = estimates
            .iter()
            .map(|iv| iv.widen(2.0 * tol, OUTWARD_ULPS))
            .collect();
        EigBoundsReport {
            intervals,
            estimates,
            upper_witness: up_w,
            lower_witness: lo_w,
            status,
            notes,
            tol,
        }
    }
}

/// One direction of the endpoint computation.
#[derive(Debug, Clone, PartialEq)]
pub struct OneSidedBounds {
    /// Endpoint for each `k = 1..n`, descending order.
    pub values: Vec<f64>,
    /// Vertex matrix attaining each value, in the coordinates of the input.
    pub witnesses: Vec<SymTri>,
    /// Midpoint eigenvector sign patterns that selected each vertex. For
    /// lower endpoints these belong to the normalized `−𝐀`.
    pub patterns: Vec<SignPattern>,
    /// Number of off-diagonal entries taken at the upper endpoint, in the
    /// same coordinates as `patterns`.
    pub upper_selections: Vec<usize>,
    /// Some pattern had a zero entry, so the exactness argument does not apply.
    pub ambiguous: bool,
    pub notes: Vec<String>,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

fn check_preconditions(m: &SymTriInterval) -> Result<()> {
    if !m.is_nonnegative() {
        return Err(Error::NotNormalized);
    }
    if let Some(index) = m.off().iter().position(|iv| iv.hi() <= 0.0) {
        return Err(Error::NonPositiveOffDiagonal { index });
    }
    Ok(())
}

/// Bound on `‖A − Aᶜ‖₂` for every member `A`: the largest row sum of the
/// radius matrix, rounded up.
fn radius_row_bound(m: &SymTriInterval) -> f64 {
    let r = m.radius();
    (0..m.n())
        .map(|i| {
            let left = if i > 0 { r.off()[i - 1] } else { 0.0 };
            r.diag()[i] + left + r.off().get(i).copied().unwrap_or(0.0)
        })
        .fold(0.0, f64::max)
        * (1.0 + 4.0 * f64::EPSILON)
}

/// Upper endpoints `λ̄_1, …, λ̄_n` for a nonnegative interval matrix with
/// `b̄ > 0`.
pub fn upper_bounds_sign_invariant(m: &SymTriInterval, tol: f64) -> Result<OneSidedBounds> {
    check_tol(tol)?;
    check_preconditions(m)?;
    let n = m.n();
    if n == 1 {
        return Ok(OneSidedBounds {
            values: vec![m.diag()[0].hi()],
            witnesses: vec![m.upper()],
            patterns: vec![SignPattern::new(vec![Sign::Pos])],
            upper_selections: vec![0],
            ambiguous: false,
            notes: Vec::new(),
        });
    }
    let center = m.midpoint();
    let mid_eigs = all_eigenvalues_full_precision(&center);
    let radius = radius_row_bound(m);

    let selections: Vec<(SymTri, SignPattern, usize)> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let pattern = eigenvector_signs(&center, mid_eigs[k - 1])?;
            let choice: Vec<bool> = (0..n - 1).map(|i| pattern.agrees(i)).collect();
            let selected = choice.iter().filter(|&&c| c).count();
            Ok((m.vertex_with(true, &choice), pattern, selected))
        })
        .collect::<Result<_>>()?;
    let items: Vec<(&SymTri, usize, f64)> = selections
        .iter()
        .enumerate()
        .map(|(i, (w, _, _))| (w, i + 1, mid_eigs[i]))
        .collect();
    let values: Vec<f64> = items
        .par_chunks(64)
        .map(|chunk| kth_eigenvalues_near(chunk, radius, tol))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let per_k = values
        .into_iter()
        .zip(selections)
        .map(|(v, (w, p, s))| (v, w, p, s));

    let mut out = OneSidedBounds {
        values: Vec::with_capacity(n),
        witnesses: Vec::with_capacity(n),
        patterns: Vec::with_capacity(n),
        upper_selections: Vec::with_capacity(n),
        ambiguous: false,
        notes: Vec::new(),
    };
    for (k, (value, witness, pattern, selected)) in (1..=n).zip(per_k) {
        if pattern.has_zero() {
            out.ambiguous = true;
            out.notes.push(format!(
                "k={k}: midpoint eigenvector sign pattern {pattern} has a zero entry; lower endpoint taken there"
            ));
        } else if selected != n - k {
            out.ambiguous = true;
            out.notes.push(format!(
                "k={k}: {selected} off-diagonal entries at upper endpoint, expected {}",
                n - k
            ));
        }
        out.values.push(value);
        out.witnesses.push(witness);
        out.patterns.push(pattern);
        out.upper_selections.push(selected);
    }
    Ok(out)
}

/// Lower endpoints `λ̲_1, …, λ̲_n` through `λ̲_k(𝐀) = −λ̄_{n+1−k}(−𝐀)`.
/// Witnesses are returned in the coordinates of `m`.
pub fn lower_bounds_sign_invariant(m: &SymTriInterval, tol: f64) -> Result<OneSidedBounds> {
    check_tol(tol)?;
    check_preconditions(m)?;
    let n = m.n();
    let (neg, rec) = normalize(&m.negated());
    let up = upper_bounds_sign_invariant(&neg, tol)?;
    let mut out = OneSidedBounds {
        values: Vec::with_capacity(n),
        witnesses: Vec::with_capacity(n),
        patterns: Vec::with_capacity(n),
        upper_selections: Vec::with_capacity(n),
        ambiguous: up.ambiguous,
        notes: up.notes.iter().map(|s| format!("(negated) {s}")).collect(),
    };
    for k in 1..=n {
        let j = n - k;
        out.values.push(rec.shift - up.values[j]);
        out.witnesses.push(rec.map_back(&up.witnesses[j]).negated());
        out.patterns.push(up.patterns[j].clone());
        out.upper_selections.push(up.upper_selections[j]);
    }
    Ok(out)
}

/// Per-block endpoint data in normalized coordinates.
struct BlockBounds {
    upper: Vec<f64>,
    upper_witness: Vec<SymTri>,
    lower: Vec<f64>,
    lower_witness: Vec<SymTri>,
}

fn block_bounds(
    m: &SymTriInterval,
    tol: f64,
    notes: &mut Vec<String>,
    offset: usize,
) -> Result<BlockBounds> {
    if m.n() == 1 {
        let iv = m.diag()[0];
        return Ok(BlockBounds {
            upper: vec![iv.hi()],
            upper_witness: vec![m.upper()],
            lower: vec![iv.lo()],
            lower_witness: vec![m.lower()],
        });
    }
    let up = upper_bounds_sign_invariant(m, tol)?;
    let lo = lower_bounds_sign_invariant(m, tol)?;
    let tag = |s: &String| {
        if offset == 0 {
            s.clone()
        } else {
            format!("block at row {}: {s}", offset + 1)
        }
    };
    notes.extend(up.notes.iter().map(tag));
    notes.extend(lo.notes.iter().map(tag));
    Ok(BlockBounds {
        upper: up.values,
        upper_witness: up.witnesses,
        lower: lo.values,
        lower_witness: lo.witnesses,
    })
}

fn block_diagonal(parts: &[&SymTri]) -> SymTri {
    let mut diag = Vec::new();
    let mut off = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            off.push(0.0);
        }
        diag.extend_from_slice(p.diag());
        off.extend_from_slice(p.off());
    }
    SymTri::new_unchecked(diag, off)
}

/// Endpoint values with the witness attaining each.
type Endpoints = (Vec<f64>, Vec<SymTri>);

/// Combines block endpoints. The `k`-th largest upper endpoint of the block
/// diagonal matrix is the `k`-th largest of all block upper endpoints; its
/// witness takes, in every block, the witness of that block's last endpoint
/// among the top `k`. Lower endpoints are symmetric from the bottom.
fn merge_blocks(blocks: &[BlockBounds], tol: f64) -> Result<(Endpoints, Endpoints)> {
    let n: usize = blocks.iter().map(|b| b.upper.len()).sum();
    let mut items: Vec<(f64, usize, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(c, b)| b.upper.iter().enumerate().map(move |(j, &v)| (v, c, j)))
        .collect();
    items.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut upper_w = Vec::with_capacity(n);
    let mut counts = vec![0usize; blocks.len()];
    for &(_, c, _) in &items {
        counts[c] += 1;
        let parts: Vec<&SymTri> = blocks
            .iter()
            .zip(&counts)
            .map(|(b, &m)| &b.upper_witness[m.max(1) - 1])
            .collect();
        upper_w.push(block_diagonal(&parts));
    }

    let mut items: Vec<(f64, usize, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(c, b)| b.lower.iter().enumerate().map(move |(j, &v)| (v, c, j)))
        .collect();
    items.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(y.2.cmp(&x.2)));
    let mut lower_w_rev = Vec::with_capacity(n);
    let mut counts = vec![0usize; blocks.len()];
    for &(_, c, _) in &items {
        counts[c] += 1;
        let parts: Vec<&SymTri> = blocks
            .iter()
            .zip(&counts)
            .map(|(b, &r)| {
                let nb = b.lower.len();
                &b.lower_witness[nb - r.max(1)]
            })
            .collect();
        lower_w_rev.push(block_diagonal(&parts));
    }
    lower_w_rev.reverse();

    // recompute on the assembled witnesses so every value is attained by
    // its witness even when block estimates are not monotone
    let eval = |ws: &[SymTri]| -> Result<Vec<f64>> {
        ws.par_iter()
            .enumerate()
            .map(|(k, w)| kth_eigenvalue(w, k + 1, tol))
            .collect()
    };
    let upper = eval(&upper_w)?;
    let lower = eval(&lower_w_rev)?;
    Ok(((upper, upper_w), (lower, lower_w_rev)))
}

/// Inner estimate of all eigenvalue sets of an arbitrary interval matrix:
/// normalize, split into blocks, run both directions per block, merge and map
/// back. The status is [`Status::InnerEstimate`]; certifying sign invariance
/// (see [`crate::invariance`]) upgrades it to exact.
pub fn eigenvalue_bounds(m: &SymTriInterval, tol: f64) -> Result<EigBoundsReport> {
    check_tol(tol)?;
    let (nm, rec) = normalize(m);
    let blocks = split_blocks(&nm);
    let mut notes = Vec::new();
    let per_block: Vec<BlockBounds> = blocks
        .iter()
        .map(|b| block_bounds(&b.matrix, tol, &mut notes, b.offset))
        .collect::<Result<_>>()?;
    let ((upper, upper_w), (lower, lower_w)) = if per_block.len() == 1 {
        let b = per_block.into_iter().next().expect("one block");
        ((b.upper, b.upper_witness), (b.lower, b.lower_witness))
    } else {
        notes.push(format!("split into {} diagonal blocks", blocks.len()));
        merge_blocks(&per_block, tol)?
    };
    let report = EigBoundsReport::assemble(
        upper,
        upper_w,
        lower,
        lower_w,
        tol,
        Status::InnerEstimate,
        notes,
    );
    denormalize_bounds(report, &rec)
}

/// The four extremal endpoints, computable without any sign-invariance
/// assumption.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalBounds {
    /// `λ̄_1`, attained at `(ā, |b|̄)`.
    pub upper_largest: f64,
    /// `λ̲_1`, attained at `(a̲, |b|̲)`.
    pub lower_largest: f64,
    /// `λ̄_n`, attained at `(ā, |b|̲)`.
    pub upper_smallest: f64,
    /// `λ̲_n`, attained at `(a̲, |b|̄)`.
    pub lower_smallest: f64,
    /// Absolute error bound of each value; zero when every block is `1 × 1`.
    pub error: f64,
}

impl ExtremalBounds {
    /// `(λ̄_1, λ̲_1, λ̄_n, λ̲_n)`.
    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (
            self.upper_largest,
            self.lower_largest,
            self.upper_smallest,
            self.lower_smallest,
        )
    }

    /// Rigorous-to-tolerance enclosure of one of the four values.
    pub fn enclose(&self, value: f64) -> Interval {
        if self.error == 0.0 {
            Interval::point(value)
        } else {
            Interval::point(value).widen(self.error, OUTWARD_ULPS)
        }
    }
}

/// `λ̄_1, λ̲_1, λ̄_n, λ̲_n` of any interval matrix.
///
/// The off-diagonal is replaced by magnitudes (which preserves every
/// member's spectrum) and the matrix is split into blocks; each block needs
/// one eigenvalue of one vertex matrix per value.
pub fn extremal_bounds(m: &SymTriInterval, tol: f64) -> Result<ExtremalBounds> {
    check_tol(tol)?;
    let abs = abs_offdiagonal(m);
    let blocks = split_blocks(&abs);
    let mut acc = ExtremalBounds {
        upper_largest: f64::NEG_INFINITY,
        lower_largest: f64::NEG_INFINITY,
        upper_smallest: f64::INFINITY,
        lower_smallest: f64::INFINITY,
        error: 0.0,
    };
    for block in &blocks {
        let b = &block.matrix;
        let nb = b.n();
        let (ul, ll, us, ls) = if nb == 1 {
            let iv = b.diag()[0];
            (iv.hi(), iv.lo(), iv.hi(), iv.lo())
        } else {
            acc.error = tol;
            let up_off = vec![true; nb - 1];
            let lo_off = vec![false; nb - 1];
            (
                kth_eigenvalue(&b.vertex_with(true, &up_off), 1, tol)?,
                kth_eigenvalue(&b.vertex_with(false, &lo_off), 1, tol)?,
                kth_eigenvalue(&b.vertex_with(true, &lo_off), nb, tol)?,
                kth_eigenvalue(&b.vertex_with(false, &up_off), nb, tol)?,
            )
        };
        acc.upper_largest = acc.upper_largest.max(ul);
        acc.lower_largest = acc.lower_largest.max(ll);
        acc.upper_smallest = acc.upper_smallest.min(us);
        acc.lower_smallest = acc.lower_smallest.min(ls);
    }
    Ok(acc)
}

/// Number of consecutive sign agreements in `pattern`, i.e. the number of
/// off-diagonal entries taken at their upper endpoint. For the `k`-th
/// eigenvalue this equals `n − k`.
pub fn cardinality_of_upper_selection(pattern: &SignPattern) -> Result<usize> {
    if let Some(pos) = pattern.signs().iter().position(|&s| s == Sign::Zero) {
        return Err(Error::ZeroSign(pos));
    }
    Ok((0..pattern.len().saturating_sub(1))
        .filter(|&i| pattern.agrees(i))
        .count())
}

/// Three-valued answer of a property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Yes,
    No,
    /// The value is too close to the threshold for the solver tolerance.
    Undecided,
}

impl Decision {
    fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Yes, Decision::Yes) => Decision::Yes,
            _ => Decision::Undecided,
        }
    }

    /// `x < c` for `x` known to lie in `enc`.
    fn less(enc: Interval, c: f64) -> Decision {
        if enc.hi() < c {
            Decision::Yes
        } else if enc.lo() >= c {
            Decision::No
        } else {
            Decision::Undecided
        }
    }

    /// `x > c` for `x` known to lie in `enc`.
    fn greater(enc: Interval, c: f64) -> Decision {
        if enc.lo() > c {
            Decision::Yes
        } else if enc.hi() <= c {
            Decision::No
        } else {
            Decision::Undecided
        }
    }

    /// `x ≥ c` for `x` known to lie in `enc`.
    fn at_least(enc: Interval, c: f64) -> Decision {
        if enc.lo() >= c {
            Decision::Yes
        } else if enc.hi() < c {
            Decision::No
        } else {
            Decision::Undecided
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undecided => "undecided",
        })
    }
}

/// Properties that hold for every member of the interval matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub positive_definite: Decision,
    pub positive_semidefinite: Decision,
    pub schur_stable: Decision,
    pub hurwitz_stable: Decision,
    /// Enclosure of `max_A ρ(A) = max(λ̄_1, −λ̲_n)`.
    pub max_spectral_radius: Interval,
    pub extremal: ExtremalBounds,
}

pub fn property_checks(m: &SymTriInterval, tol: f64) -> Result<PropertyReport> {
    let ext = extremal_bounds(m, tol)?;
    let top = ext.enclose(ext.upper_largest);
    let bottom = ext.enclose(ext.lower_smallest);
    let radius_lo = top.lo().max(-bottom.hi());
    let radius_hi = top.hi().max(-bottom.lo());
    Ok(PropertyReport {
        positive_definite: Decision::greater(bottom, 0.0),
        positive_semidefinite: Decision::at_least(bottom, 0.0),
        schur_stable: Decision::greater(bottom, -1.0).and(Decision::less(top, 1.0)),
        hurwitz_stable: Decision::less(top, 0.0),
        max_spectral_radius: Interval::new_unchecked(radius_lo, radius_hi),
        extremal: ext,
    })
}
