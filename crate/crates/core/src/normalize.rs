//! Reduction of an interval matrix to nonnegative form, the inverse mapping
//! of results, and splitting into independent diagonal blocks.
//!
//! The diagonal is shifted by `α = max(0, max_i −a̲_i)`, which moves every
//! eigenvalue by `α`. Each off-diagonal interval is then made nonnegative:
//!
//! | original `[b̲, b̄]` | normalized             |
//! |--------------------|------------------------|
//! | `b̲ ≥ 0`            | unchanged              |
//! | `b̄ ≤ 0`            | `[−b̄, −b̲]` (flipped)   |
//! | `b̲ < 0 < b̄`        | `[0, max(−b̲, b̄)]` (widened) |
//!
//! Negating a single off-diagonal entry of a point matrix leaves its spectrum
//! unchanged, so the spectrum of a member depends only on `|b_i|`. For a
//! widened entry `|b_i|` ranges over exactly `[0, max(−b̲, b̄)]`, which makes
//! the widened rule spectrally exact as well. Results computed on the
//! normalized matrix are mapped back with [`denormalize_bounds`].

use serde::{Deserialize, Serialize};

use crate::bounds::EigBoundsReport;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::{SymTri, SymTriInterval};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    /// Diagonal shift `α ≥ 0` that was added.
    pub shift: f64,
    /// Off-diagonal intervals that were negated.
    pub flipped: Vec<bool>,
    /// Mixed-sign off-diagonal intervals replaced by `[0, max(−b̲, b̄)]`.
    pub widened: Vec<bool>,
    original: SymTriInterval,
    normalized: SymTriInterval,
}

impl NormalizationRecord {
    pub fn n(&self) -> usize {
        self.original.n()
    }

    pub fn original(&self) -> &SymTriInterval {
        &self.original
    }

    pub fn normalized(&self) -> &SymTriInterval {
        &self.normalized
    }

    pub fn any_widened(&self) -> bool {
        self.widened.iter().any(|&w| w)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0.0 && !self.flipped.iter().chain(&self.widened).any(|&f| f)
    }

    /// Maps a member of the normalized matrix to the corresponding member of
    /// the original one. Endpoints map to endpoints exactly.
    pub fn map_back(&self, w: &SymTri) -> SymTri {
        assert_eq!(w.n(), self.n(), "witness order does not match record");
        let diag = w
            .diag()
            .iter()
            .zip(self.normalized.diag().iter().zip(self.original.diag()))
            .map(|(&x, (norm, orig))| {
                if x == norm.hi() {
                    orig.hi()
                } else if x == norm.lo() {
                    orig.lo()
                } else {
                    (x - self.shift).clamp(orig.lo(), orig.hi())
                }
            })
            .collect();
        let off = w
            .off()
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let orig = self.original.off()[j];
                if self.flipped[j] {
                    -x + 0.0
                } else if self.widened[j] {
                    if x <= orig.hi() {
                        x
                    } else {
                        -x
                    }
                } else {
                    x
                }
            })
            .collect();
        SymTri::new_unchecked(diag, off)
    }
}

fn normalize_off(iv: &Interval) -> (Interval, bool, bool) {
    if iv.lo() >= 0.0 {
        (*iv, false, false)
    } else if iv.hi() <= 0.0 {
        (iv.neg(), true, false)
    } else {
        (
            Interval::new_unchecked(0.0, (-iv.lo()).max(iv.hi())),
            false,
            true,
        )
    }
}

/// Off-diagonal magnitudes `{|b| : b ∈ b_i}` without touching the diagonal.
pub(crate) fn abs_offdiagonal(m: &SymTriInterval) -> SymTriInterval {
    SymTriInterval::new_unchecked(
        m.diag().to_vec(),
        m.off().iter().map(|iv| normalize_off(iv).0).collect(),
    )
}

/// Brings `m` to nonnegative form, returning the matrix and the record needed
/// to map results back.
pub fn normalize(m: &SymTriInterval) -> (SymTriInterval, NormalizationRecord) {
    let shift = m.diag().iter().map(|iv| -iv.lo()).fold(0.0, f64::max) + 0.0;
    let diag = m
        .diag()
        .iter()
        .map(|iv| if shift == 0.0 { *iv } else { iv.shift(shift) })
        .collect();
    let mut flipped = Vec::with_capacity(m.off().len());
    let mut widened = Vec::with_capacity(m.off().len());
    let off = m
        .off()
        .iter()
        .map(|iv| {
            let (out, f, w) = normalize_off(iv);
            flipped.push(f);
            widened.push(w);
            out
        })
        .collect();
    let normalized = SymTriInterval::new_unchecked(diag, off);
    let record = NormalizationRecord {
        shift,
        flipped,
        widened,
        original: m.clone(),
        normalized: normalized.clone(),
    };
    (normalized, record)
}

/// Maps a report computed on `rec.normalized()` back to the original matrix:
/// endpoints move down by the shift (outward rounded) and witnesses are
/// mapped entry by entry.
///
/// Widened entries are noted in the report. They do not change its status:
/// the normalized and original matrices have identical sets of spectra.
pub fn denormalize_bounds(
    bounds: EigBoundsReport,
    rec: &NormalizationRecord,
) -> Result<EigBoundsReport> {
    if bounds.n() != rec.n() {
        return Err(Error::DimensionMismatch {
            expected: rec.n(),
            found: bounds.n(),
        });
    }
    if rec.is_identity() {
        return Ok(bounds);
    }
    let mut out = bounds;
    let alpha = rec.shift;
    if alpha != 0.0 {
        for iv in &mut out.intervals {
            *iv = iv.shift(-alpha);
        }
        for iv in &mut out.estimates {
            *iv = Interval::new_unchecked(iv.lo() - alpha, (iv.hi() - alpha).max(iv.lo() - alpha));
        }
    }
    out.upper_witness = out.upper_witness.iter().map(|w| rec.map_back(w)).collect();
    out.lower_witness = out.lower_witness.iter().map(|w| rec.map_back(w)).collect();
    if rec.any_widened() {
        let idx: Vec<String> = rec
            .widened
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(j, _)| (j + 2).to_string())
            .collect();
        out.notes.push(format!(
            "mixed-sign off-diagonal b_{{{}}} replaced by [0, max(-lo, hi)]; spectra of the set are unchanged",
            idx.join(",")
        ));
    }
    Ok(out)
}

/// A diagonal block of a block-diagonal interval matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub matrix: SymTriInterval,
    /// 0-based row of the block's first entry in the full matrix.
    pub offset: usize,
}

impl Block {
    pub fn rows(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.matrix.n()
    }
}

/// Splits at every off-diagonal entry that is identically zero. For a
/// normalized matrix this is exactly `b̄_i = 0`.
pub fn split_blocks(m: &SymTriInterval) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for (j, iv) in m.off().iter().enumerate() {
        if iv.lo() == 0.0 && iv.hi() == 0.0 {
            blocks.push(Block {
                matrix: m.principal(start..j + 1),
                offset: start,
            });
            start = j + 1;
        }
    }
    blocks.push(Block {
        matrix: m.principal(start..m.n()),
        offset: start,
    });
    blocks
}
