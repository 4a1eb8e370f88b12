//! Brute-force ground truth for small instances.
//!
//! Everything here is independent of the Sturm solver: eigenvalues come from
//! a dense symmetric QR eigensolver. Vertex enumeration visits all
//! `2^(2n−1)` endpoint combinations; sampling draws members from a uniform
//! grid or from a seeded random generator. Both are parallel over members
//! and reduce deterministically (ties go to the lowest member index).

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{SymTri, SymTriInterval};

/// Largest number of interval entries (`2n − 1`) vertex enumeration accepts.
pub const ENUMERATION_CAP: usize = 24;

/// Largest number of members a grid may contain.
pub const GRID_BUDGET: u64 = 10_000_000;

/// Random members added to the vertices by [`is_eigenvalue_bruteforce`].
const MEMBERSHIP_SAMPLES: usize = 256;
const MEMBERSHIP_SEED: u64 = 0x5eed_0fe1;

/// Extrema of `λ_k` over a family of members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRange {
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    pub argmax: SymTri,
    pub argmin: SymTri,
    /// Number of members evaluated.
    pub evaluated: u64,
    /// Seed of the random generator, when random sampling was used.
    pub seed: Option<u64>,
}

/// How [`grid_sample`] chooses members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sampling {
    /// `points_per_entry` equispaced values in every entry, endpoints included.
    Grid { points_per_entry: usize },
    /// `samples` independent uniform members.
    Random { samples: usize, seed: u64 },
}

/// Eigenvalues of a point matrix in descending order, from a dense solver.
pub fn dense_eigenvalues(t: &SymTri) -> Vec<f64> {
    let mut ev: Vec<f64> = to_dmatrix(t)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Eigenpairs of a point matrix in descending eigenvalue order; each vector
/// has unit length.
pub fn dense_eigenpairs(t: &SymTri) -> Vec<(f64, Vec<f64>)> {
    let eig = SymmetricEigen::new(to_dmatrix(t));
    let mut pairs: Vec<(f64, Vec<f64>)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, eig.eigenvectors.column(i).iter().copied().collect()))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

/// `det(λI − T)` by the three-term recurrence. Overflows for large `n` or
/// large entries; meant for desk-scale cross-checks.
pub fn characteristic_polynomial(t: &SymTri, lambda: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, lambda - t.diag()[0]);
    for (a, b) in t.diag()[1..].iter().zip(t.off()) {
        let next = (lambda - a) * cur - b * b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn to_dmatrix(t: &SymTri) -> DMatrix<f64> {
    let n = t.n();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = t.diag()[i];
    }
    for (j, &b) in t.off().iter().enumerate() {
        a[(j, j + 1)] = b;
        a[(j + 1, j)] = b;
    }
    a
}

fn check_args(m: &SymTriInterval, k: usize, tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if k == 0 || k > m.n() {
        return Err(Error::IndexOutOfRange { k, n: m.n() });
    }
    Ok(())
}

fn check_cap(m: &SymTriInterval) -> Result<()> {
    let bits = 2 * m.n() - 1;
    if bits > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            bits,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// Running extrema of every eigenvalue index; `(value, member index)`.
#[derive(Clone)]
struct Extrema {
    max: Vec<(f64, u64)>,
    min: Vec<(f64, u64)>,
}

impl Extrema {
    fn empty(n: usize) -> Self {
        Extrema {
            max: vec![(f64::NEG_INFINITY, u64::MAX); n],
            min: vec![(f64::INFINITY, u64::MAX); n],
        }
    }

    fn push(mut self, idx: u64, ev: &[f64]) -> Self {
        for (k, &v) in ev.iter().enumerate() {
            if better_max((v, idx), self.max[k]) {
                self.max[k] = (v, idx);
            }
            if better_min((v, idx), self.min[k]) {
                self.min[k] = (v, idx);
            }
        }
        self
    }

    fn merge(mut self, other: Extrema) -> Self {
        for k in 0..self.max.len() {
            if better_max(other.max[k], self.max[k]) {
                self.max[k] = other.max[k];
            }
            if better_min(other.min[k], self.min[k]) {
                self.min[k] = other.min[k];
            }
        }
        self
    }
}

fn better_max(a: (f64, u64), b: (f64, u64)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

fn better_min(a: (f64, u64), b: (f64, u64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

fn ranges_from<F>(n: usize, count: u64, member: F, seed: Option<u64>) -> Vec<OracleRange>
where
    F: Fn(u64) -> SymTri + Sync,
{
    let ext = (0..count)
        .into_par_iter()
        .fold(
            || Extrema::empty(n),
            |acc, i| acc.push(i, &dense_eigenvalues(&member(i))),
        )
        .reduce(|| Extrema::empty(n), Extrema::merge);
    (0..n)
        .map(|k| OracleRange {
            k: k + 1,
            lo: ext.min[k].0,
            hi: ext.max[k].0,
            argmax: member(ext.max[k].1),
            argmin: member(ext.min[k].1),
            evaluated: count,
            seed,
        })
        .collect()
}

/// Exact extrema of every `λ_k` over the vertex matrices.
pub fn vertex_ranges(m: &SymTriInterval, tol: f64) -> Result<Vec<OracleRange>> {
    check_args(m, 1, tol)?;
    check_cap(m)?;
    let count = 1u64 << (2 * m.n() - 1);
    Ok(ranges_from(m.n(), count, |mask| m.vertex(mask), None))
}

/// Exact extrema of `λ_k` over all vertex matrices.
pub fn vertex_enumerate(m: &SymTriInterval, k: usize, tol: f64) -> Result<OracleRange> {
    check_args(m, k, tol)?;
    Ok(vertex_ranges(m, tol)?.swap_remove(k - 1))
}

/// Member `i` of a sampled family.
type MemberFn<'a> = Box<dyn Fn(u64) -> SymTri + Sync + 'a>;

/// Members at fractional positions derived from a member index.
fn sampler(m: &SymTriInterval, sampling: Sampling) -> Result<(u64, MemberFn<'_>)> {
    let entries = 2 * m.n() - 1;
    match sampling {
        Sampling::Grid { points_per_entry } => {
            let p = points_per_entry.max(1);
            let total = (p as f64).powi(entries as i32);
            if total > GRID_BUDGET as f64 {
                return Err(Error::GridBudget {
                    points: total,
                    budget: GRID_BUDGET,
                });
            }
            let step = if p == 1 { 0.0 } else { 1.0 / (p - 1) as f64 };
            let f = move |mut idx: u64| {
                let t: Vec<f64> = (0..entries)
                    .map(|_| {
                        let digit = idx % p as u64;
                        idx /= p as u64;
                        if p == 1 {
                            0.5
                        } else {
                            digit as f64 * step
                        }
                    })
                    .collect();
                m.member_at(&t)
            };
            Ok((total as u64, Box::new(f)))
        }
        Sampling::Random { samples, seed } => {
            let f = move |idx: u64| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(idx);
                let t: Vec<f64> = (0..entries).map(|_| rng.gen::<f64>()).collect();
                m.member_at(&t)
            };
            Ok((samples as u64, Box::new(f)))
        }
    }
}

/// Extrema of `λ_k` over sampled members. Always an inner approximation of
/// the eigenvalue set.
pub fn grid_sample(
    m: &SymTriInterval,
    k: usize,
    sampling: &Sampling,
    tol: f64,
) -> Result<OracleRange> {
    check_args(m, k, tol)?;
    Ok(sample_ranges(m, sampling, tol)?.swap_remove(k - 1))
}

/// [`grid_sample`] for every index at once.
pub fn sample_ranges(
    m: &SymTriInterval,
    sampling: &Sampling,
    tol: f64,
) -> Result<Vec<OracleRange>> {
    check_args(m, 1, tol)?;
    let seed = match sampling {
        Sampling::Random { seed, .. } => Some(*seed),
        Sampling::Grid { .. } => None,
    };
    let (count, member) = sampler(m, *sampling)?;
    let count = count.max(1);
    Ok(ranges_from(m.n(), count, member, seed))
}

/// Whether `lambda` is an eigenvalue of some member, judged on the vertices,
/// the midpoint and a fixed random sample: true if some visited member has
/// an eigenvalue within `tol`, or if `det(A − λI)` changes sign across the
/// visited members (the box is connected, so some member is singular).
pub fn is_eigenvalue_bruteforce(m: &SymTriInterval, lambda: f64, tol: f64) -> Result<bool> {
    check_args(m, 1, tol)?;
    check_cap(m)?;
    if !lambda.is_finite() {
        return Err(Error::NonFiniteQuery);
    }
    let vertices = 1u64 << (2 * m.n() - 1);
    let (_, random) = sampler(
        m,
        Sampling::Random {
            samples: MEMBERSHIP_SAMPLES,
            seed: MEMBERSHIP_SEED,
        },
    )?;
    let member = |i: u64| {
        if i < vertices {
            m.vertex(i)
        } else if i == vertices {
            m.midpoint()
        } else {
            random(i - vertices - 1)
        }
    };
    // (hit, saw positive determinant, saw negative determinant)
    let (hit, pos, neg) = (0..vertices + 1 + MEMBERSHIP_SAMPLES as u64)
        .into_par_iter()
        .map(|i| {
            let ev = dense_eigenvalues(&member(i));
            let hit = ev.iter().any(|v| (v - lambda).abs() <= tol);
            let negatives = ev.iter().filter(|&&v| v < lambda).count();
            (hit, negatives % 2 == 0, negatives % 2 == 1)
        })
        .reduce(
            || (false, false, false),
            |a, b| (a.0 || b.0, a.1 || b.1, a.2 || b.2),
        );
    Ok(hit || (pos && neg))
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
    fn dense_matches_known_spectrum() {
        let t = SymTri::new(vec![2.0, 2.0, 2.0], vec![1.0, 1.0]).unwrap();
        let ev = dense_eigenvalues(&t);
        let s = 2f64.sqrt();
        for (got, want) in ev.iter().zip([2.0 + s, 2.0, 2.0 - s]) {
            assert!((got - want).abs() < 1e-13);
        }
        for &v in &ev {
            assert!(characteristic_polynomial(&t, v).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenpairs_are_unit() {
        let t = SymTri::new(vec![1.0, 3.0, -2.0], vec![0.5, 2.0]).unwrap();
        for (v, x) in dense_eigenpairs(&t) {
            let ax = t.mul_vec(&x);
            let res: f64 = ax
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - v * b).abs())
                .fold(0.0, f64::max);
            assert!(res < 1e-12);
        }
    }

    #[test]
    fn example_top_vertex() {
        let m = example7();
        let r = vertex_enumerate(&m, 1, 1e-9).unwrap();
        assert!((r.hi - 12720.2273).abs() < 1e-3);
        // eigenvalues depend on |b| only; the maximizing vertex takes ā and |b|̄
        assert_eq!(r.argmax.diag(), m.upper().diag());
        assert!(r
            .argmax
            .off()
            .iter()
            .zip(m.off())
            .all(|(&x, iv)| x.abs() == iv.lo().abs()));
        assert_eq!(r.evaluated, 128);
    }

    #[test]
    fn point_matrix_ranges_collapse() {
        let t = SymTri::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        let m = SymTriInterval::from_point(&t);
        let ev = dense_eigenvalues(&t);
        for k in 1..=2 {
            let r = vertex_enumerate(&m, k, 1e-12).unwrap();
            assert_eq!((r.lo, r.hi), (ev[k - 1], ev[k - 1]));
            let g = grid_sample(
                &m,
                k,
                &Sampling::Random {
                    samples: 10,
                    seed: 1,
                },
                1e-12,
            )
            .unwrap();
            assert_eq!((g.lo, g.hi), (ev[k - 1], ev[k - 1]));
        }
    }

    #[test]
    fn caps_are_errors() {
        let m = SymTriInterval::from_pairs(&[(0.0, 1.0); 13], &[(0.0, 1.0); 12]).unwrap();
        assert_eq!(
            vertex_enumerate(&m, 1, 1e-9),
            Err(Error::EnumerationCap { bits: 25, cap: 24 })
        );
        let small = SymTriInterval::from_pairs(&[(0.0, 1.0); 5], &[(0.0, 1.0); 4]).unwrap();
        assert!(matches!(
            grid_sample(
                &small,
                1,
                &Sampling::Grid {
                    points_per_entry: 10
                },
                1e-9
            ),
            Err(Error::GridBudget { .. })
        ));
        assert!(grid_sample(
            &small,
            1,
            &Sampling::Grid {
                points_per_entry: 5
            },
            1e-9
        )
        .is_ok());
    }

    #[test]
    fn random_sampling_is_deterministic() {
        let m = example7();
        let s = Sampling::Random {
            samples: 500,
            seed: 42,
        };
        assert_eq!(
            grid_sample(&m, 2, &s, 1e-9).unwrap(),
            grid_sample(&m, 2, &s, 1e-9).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let m = example7();
        assert!(!is_eigenvalue_bruteforce(&m, 5000.0, 1e-6).unwrap());
        let mid = dense_eigenvalues(&m.midpoint());
        assert!(is_eigenvalue_bruteforce(&m, mid[1], 1e-6).unwrap());
        // interior of the first set, not within tol of any visited member
        assert!(is_eigenvalue_bruteforce(&m, 12600.123, 1e-9).unwrap());
    }
}
