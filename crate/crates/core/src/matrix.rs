//! Point and interval symmetric tridiagonal matrices.
//!
//! Both types store the diagonal `a_1..a_n` and the off-diagonal `b_2..b_n`;
//! off-diagonal entry `j` (0-based) couples rows `j` and `j + 1`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTri {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTri {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                found: off.len(),
            });
        }
        if diag.iter().chain(&off).any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { diag, off })
    }

    pub fn diagonal(diag: Vec<f64>) -> Result<Self> {
        let off = vec![0.0; diag.len().saturating_sub(1)];
        Self::new(diag, off)
    }

    pub(crate) fn new_unchecked(diag: Vec<f64>, off: Vec<f64>) -> Self {
        debug_assert_eq!(diag.len(), off.len() + 1);
        Self { diag, off }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    #[inline]
    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.n())
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, |b| b.abs());
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin enclosure `[min(a - |b| - |b'|), max(a + |b| + |b'|)]` of
    /// the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n() {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = self.off.get(i).map_or(0.0, |b| b.abs());
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn negated(&self) -> SymTri {
        SymTri {
            diag: self.diag.iter().map(|x| -x).collect(),
            off: self.off.iter().map(|x| -x).collect(),
        }
    }

    pub fn shifted(&self, alpha: f64) -> SymTri {
        SymTri {
            diag: self.diag.iter().map(|x| x + alpha).collect(),
            off: self.off.clone(),
        }
    }

    /// Principal submatrix on the 0-based row range `rows`.
    pub fn principal(&self, rows: Range<usize>) -> SymTri {
        assert!(
            rows.start < rows.end && rows.end <= self.n(),
            "bad principal range {rows:?}"
        );
        SymTri {
            diag: self.diag[rows.clone()].to_vec(),
            off: self.off[rows.start..rows.end - 1].to_vec(),
        }
    }

    /// `y = T x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Dense row-major copy, mostly for oracles and diagnostics.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            rows[i][i] = self.diag[i];
            if i + 1 < n {
                rows[i][i + 1] = self.off[i];
                rows[i + 1][i] = self.off[i];
            }
        }
        rows
    }
}

/// Interval symmetric tridiagonal matrix: every member has `a_i ∈ diag[i]`
/// and `b_{i+1} ∈ off[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTriInterval {
    diag: Vec<Interval>,
    off: Vec<Interval>,
}

impl SymTriInterval {
    pub fn new(diag: Vec<Interval>, off: Vec<Interval>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                found: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    /// Convenience constructor from `(lo, hi)` pairs.
    pub fn from_pairs(diag: &[(f64, f64)], off: &[(f64, f64)]) -> Result<Self> {
        let diag = diag
            .iter()
            .map(|&(l, h)| Interval::new(l, h))
            .collect::<Result<_>>()?;
        let off = off
            .iter()
            .map(|&(l, h)| Interval::new(l, h))
            .collect::<Result<_>>()?;
        Self::new(diag, off)
    }

    /// Degenerate interval matrix containing only `t`.
    pub fn from_point(t: &SymTri) -> Self {
        Self {
            diag: t.diag().iter().map(|&x| Interval::point(x)).collect(),
            off: t.off().iter().map(|&x| Interval::point(x)).collect(),
        }
    }

    pub(crate) fn new_unchecked(diag: Vec<Interval>, off: Vec<Interval>) -> Self {
        debug_assert_eq!(diag.len(), off.len() + 1);
        Self { diag, off }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn diag(&self) -> &[Interval] {
        &self.diag
    }

    #[inline]
    pub fn off(&self) -> &[Interval] {
        &self.off
    }

    /// Midpoint matrix.
    pub fn midpoint(&self) -> SymTri {
        SymTri::new_unchecked(
            self.diag.iter().map(Interval::mid).collect(),
            self.off.iter().map(Interval::mid).collect(),
        )
    }

    /// Entrywise radius matrix (nonnegative).
    pub fn radius(&self) -> SymTri {
        SymTri::new_unchecked(
            self.diag.iter().map(Interval::rad).collect(),
            self.off.iter().map(Interval::rad).collect(),
        )
    }

    /// The matrix with every entry at its upper endpoint.
    pub fn upper(&self) -> SymTri {
        SymTri::new_unchecked(
            self.diag.iter().map(Interval::hi).collect(),
            self.off.iter().map(Interval::hi).collect(),
        )
    }

    /// The matrix with every entry at its lower endpoint.
    pub fn lower(&self) -> SymTri {
        SymTri::new_unchecked(
            self.diag.iter().map(Interval::lo).collect(),
            self.off.iter().map(Interval::lo).collect(),
        )
    }

    /// Vertex selected by bit mask: bit `i < n` picks the upper endpoint of
    /// `diag[i]`, bit `n + j` the upper endpoint of `off[j]`.
    pub fn vertex(&self, mask: u64) -> SymTri {
        let n = self.n();
        let pick = |iv: &Interval, bit: usize| {
            if mask >> bit & 1 == 1 {
                iv.hi()
            } else {
                iv.lo()
            }
        };
        SymTri::new_unchecked(
            self.diag
                .iter()
                .enumerate()
                .map(|(i, iv)| pick(iv, i))
                .collect(),
            self.off
                .iter()
                .enumerate()
                .map(|(j, iv)| pick(iv, n + j))
                .collect(),
        )
    }

    /// Member at fractional position `t ∈ [0,1]` within each entry, ordered
    /// diagonal first.
    pub fn member_at(&self, t: &[f64]) -> SymTri {
        let n = self.n();
        assert_eq!(t.len(), 2 * n - 1);
        let at = |iv: &Interval, s: f64| (iv.lo() + s * iv.width()).clamp(iv.lo(), iv.hi());
        SymTri::new_unchecked(
            self.diag
                .iter()
                .zip(&t[..n])
                .map(|(iv, &s)| at(iv, s))
                .collect(),
            self.off
                .iter()
                .zip(&t[n..])
                .map(|(iv, &s)| at(iv, s))
                .collect(),
        )
    }

    /// Replaces the diagonal by its upper endpoints and the off-diagonal by a
    /// per-entry endpoint choice (`true` = upper).
    pub fn vertex_with(&self, diag_upper: bool, off_upper: &[bool]) -> SymTri {
        assert_eq!(off_upper.len(), self.off.len());
        SymTri::new_unchecked(
            self.diag
                .iter()
                .map(|iv| if diag_upper { iv.hi() } else { iv.lo() })
                .collect(),
            self.off
                .iter()
                .zip(off_upper)
                .map(|(iv, &up)| if up { iv.hi() } else { iv.lo() })
                .collect(),
        )
    }

    pub fn contains(&self, t: &SymTri) -> bool {
        t.n() == self.n()
            && self
                .diag
                .iter()
                .zip(t.diag())
                .all(|(iv, &x)| iv.contains(x))
            && self.off.iter().zip(t.off()).all(|(iv, &x)| iv.contains(x))
    }

    pub fn is_point(&self) -> bool {
        self.diag
            .iter()
            .chain(&self.off)
            .all(Interval::is_degenerate)
    }

    /// `A̲ ≥ 0` entrywise.
    pub fn is_nonnegative(&self) -> bool {
        self.diag.iter().chain(&self.off).all(|iv| iv.lo() >= 0.0)
    }

    pub fn negated(&self) -> SymTriInterval {
        SymTriInterval {
            diag: self.diag.iter().map(Interval::neg).collect(),
            off: self.off.iter().map(Interval::neg).collect(),
        }
    }

    /// Adds `alpha` to every diagonal interval (outward rounded).
    pub fn shifted(&self, alpha: f64) -> SymTriInterval {
        SymTriInterval {
            diag: self.diag.iter().map(|iv| iv.shift(alpha)).collect(),
            off: self.off.clone(),
        }
    }

    /// Principal interval submatrix on the 0-based row range `rows`.
    pub fn principal(&self, rows: Range<usize>) -> SymTriInterval {
        assert!(
            rows.start < rows.end && rows.end <= self.n(),
            "bad principal range {rows:?}"
        );
        SymTriInterval {
            diag: self.diag[rows.clone()].to_vec(),
            off: self.off[rows.start..rows.end - 1].to_vec(),
        }
    }

    /// Largest absolute row sum over all endpoint magnitudes; a bound on
    /// `‖A‖∞` for every member.
    pub fn scale(&self) -> f64 {
        let mag = |iv: &Interval| iv.lo().abs().max(iv.hi().abs());
        (0..self.n())
            .map(|i| {
                let left = if i > 0 { mag(&self.off[i - 1]) } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, mag);
                mag(&self.diag[i]) + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Outer Gershgorin discs, one per row, valid for every member.
    pub fn gershgorin_discs(&self) -> Vec<Interval> {
        let mag = |iv: &Interval| iv.lo().abs().max(iv.hi().abs());
        (0..self.n())
            .map(|i| {
                let left = if i > 0 { mag(&self.off[i - 1]) } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, mag);
                let r = left + right;
                Interval::new_unchecked(self.diag[i].lo() - r, self.diag[i].hi() + r).outward(0.0)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SymTriInterval {
        SymTriInterval::from_pairs(
            &[(1.0, 2.0), (3.0, 5.0), (-1.0, 0.0)],
            &[(0.5, 1.5), (-2.0, -1.0)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(SymTri::new(vec![], vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            SymTri::new(vec![1.0, 2.0], vec![]),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 0
            })
        ));
        assert_eq!(
            SymTri::new(vec![f64::NAN], vec![]),
            Err(Error::NonFiniteEntry)
        );
        assert!(SymTri::new(vec![4.0], vec![]).is_ok());
    }

    #[test]
    fn vertex_mask_layout() {
        let m = sample();
        assert_eq!(m.vertex(0), m.lower());
        assert_eq!(m.vertex((1 << 5) - 1), m.upper());
        let v = m.vertex(0b01010);
        assert_eq!(v.diag(), &[1.0, 5.0, -1.0]);
        assert_eq!(v.off(), &[1.5, -2.0]);
        assert!(m.contains(&v));
    }

    #[test]
    fn midpoint_and_radius() {
        let m = sample();
        assert_eq!(m.midpoint().diag(), &[1.5, 4.0, -0.5]);
        assert_eq!(m.radius().off(), &[0.5, 0.5]);
    }

    #[test]
    fn principal_submatrix() {
        let m = sample();
        let s = m.principal(1..3);
        assert_eq!(s.n(), 2);
        assert_eq!(s.off()[0], Interval::new(-2.0, -1.0).unwrap());
        assert_eq!(m.principal(2..3).off().len(), 0);
    }

    #[test]
    fn gershgorin_of_point() {
        let t = SymTri::new(vec![2.0, 2.0], vec![1.0]).unwrap();
        assert_eq!(t.gershgorin(), (1.0, 3.0));
        assert_eq!(t.inf_norm(), 3.0);
    }
}
