//! Sturm-sequence eigensolver for real symmetric tridiagonal matrices.
//!
//! Eigenvalues are indexed in descending order: `λ_1 ≥ λ_2 ≥ … ≥ λ_n`.
//!
//! The characteristic polynomials are taken monic, `χ_j(λ) = det(λI − T_j)`
//! where `T_j` is the leading `j × j` submatrix and `χ_0 ≡ 1`. The solver
//! never forms `χ_j` directly; it runs the quotient recurrence
//!
//! ```text
//! d_1 = λ − a_1,   d_j = (λ − a_j) − b_j² / d_{j−1},   d_j = χ_j / χ_{j−1},
//! ```
//!
//! which cannot overflow. A positive `d_j` is a sign agreement between
//! `χ_{j−1}` and `χ_j`, and the number of agreements is the number of
//! eigenvalues strictly below `λ`.
//!
//! Whenever `|d_j|` drops below [`pivot_guard`] it is replaced by
//! `−pivot_guard`. This is the evaluation at `λ` minus an infinitesimal, so an
//! eigenvalue exactly at `λ` is not counted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymTri;

/// Relative default tolerance: `tol = DEFAULT_RELATIVE_TOL · max(1, ‖T‖∞)`.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-12;

/// Residual bound accepted by [`eigenvector`], relative to `‖T‖∞`.
pub const EIGENVECTOR_RESIDUAL: f64 = 1e-8;

const MAX_RESTARTS: usize = 5;

/// Default absolute tolerance for a matrix of the given scale.
pub fn default_tol_for_scale(scale: f64) -> f64 {
    DEFAULT_RELATIVE_TOL * scale.max(1.0)
}

pub fn default_tol(t: &SymTri) -> f64 {
    default_tol_for_scale(t.inf_norm())
}

/// Replacement magnitude for vanishing quotients,
/// `f64::MIN_POSITIVE · max(1, max b_j²)`. Keeps `b_j² / d` finite.
pub fn pivot_guard(off: &[f64]) -> f64 {
    let max_sq = off.iter().map(|b| b * b).fold(1.0, f64::max);
    f64::MIN_POSITIVE * max_sq
}

/// Sign of one entry of a sign sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: f64, zero_threshold: f64) -> Sign {
        if x.abs() <= zero_threshold {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

/// Signs of `χ_0(λ), …, χ_n(λ)` together with the eigenvalue count below `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmEvaluation {
    /// Entries are `+1` or `−1`; `signs[0] = +1`.
    pub signs: Vec<i8>,
    pub count_below: usize,
}

impl SturmEvaluation {
    /// Number of sign agreements between consecutive terms.
    pub fn agreements(&self) -> usize {
        self.signs.windows(2).filter(|w| w[0] == w[1]).count()
    }
}

/// Entrywise signs of an eigenvector, `s[j] = sign(x_{j+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignPattern(signs)
    }

    /// Signs of a vector with entries of magnitude `≤ zero_threshold`
    /// reported as zero.
    pub fn from_vector(x: &[f64], zero_threshold: f64) -> Self {
        SignPattern(x.iter().map(|&v| Sign::of(v, zero_threshold)).collect())
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&Sign::Zero)
    }

    /// `true` when `x_i x_{i+1} > 0` for off-diagonal position `i` (0-based).
    pub fn agrees(&self, i: usize) -> bool {
        let (a, b) = (self.0[i], self.0[i + 1]);
        a != Sign::Zero && a == b
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern(self.0.iter().map(|s| s.flip()).collect())
    }

    /// Equality up to a global sign flip.
    pub fn matches_up_to_sign(&self, other: &SignPattern) -> bool {
        self == other || *self == other.negated()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

pub fn sturm_count(t: &SymTri, lambda: f64) -> Result<SturmEvaluation> {
    if !lambda.is_finite() {
        return Err(Error::NonFiniteQuery);
    }
    let guard = pivot_guard(t.off());
    let mut signs = Vec::with_capacity(t.n() + 1);
    signs.push(1i8);
    let mut chi_sign = 1i8;
    let mut count_below = 0;
    let mut d = 1.0;
    for j in 0..t.n() {
        d = if j == 0 {
            lambda - t.diag()[0]
        } else {
            let b = t.off()[j - 1];
            (lambda - t.diag()[j]) - b * b / d
        };
        if d.abs() < guard {
            d = -guard;
        }
        if d > 0.0 {
            count_below += 1;
        } else {
            chi_sign = -chi_sign;
        }
        signs.push(chi_sign);
    }
    Ok(SturmEvaluation { signs, count_below })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Gershgorin interval pushed out far enough that the strict counts at the
/// endpoints are `0` and `n`.
fn spectrum_bracket(t: &SymTri, guard: f64) -> (f64, f64) {
    let (lo, hi) = t.gershgorin();
    let pad = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) + guard;
    (lo - pad, hi + pad)
}

/// Number of independent Sturm evaluations interleaved by the batched
/// kernels. Each evaluation is a chain of dependent divisions; running
/// several side by side hides the division latency.
const LANES: usize = 8;

/// One evaluation slot of [`count_lanes`].
#[derive(Clone, Copy)]
struct Query<'a> {
    diag: &'a [f64],
    off: &'a [f64],
    lambda: f64,
    guard: f64,
}

/// Strict counts for up to [`LANES`] queries on matrices of equal order.
/// Missing slots repeat the first query.
fn count_lanes(queries: &[Query<'_>]) -> [usize; LANES] {
    debug_assert!(!queries.is_empty() && queries.len() <= LANES);
    let q: [Query<'_>; LANES] = std::array::from_fn(|l| queries[l.min(queries.len() - 1)]);
    let n = q[0].diag.len();
    for x in &q {
        assert!(x.diag.len() == n && x.off.len() + 1 == n);
    }
    let mut d = [0.0; LANES];
    let mut count = [0usize; LANES];
    for l in 0..LANES {
        let mut x = q[l].lambda - q[l].diag[0];
        if x.abs() < q[l].guard {
            x = -q[l].guard;
        }
        d[l] = x;
        count[l] = usize::from(x > 0.0);
    }
    for j in 1..n {
        for l in 0..LANES {
            let b = q[l].off[j - 1];
            let mut x = (q[l].lambda - q[l].diag[j]) - b * b / d[l];
            if x.abs() < q[l].guard {
                x = -q[l].guard;
            }
            d[l] = x;
            count[l] += usize::from(x > 0.0);
        }
    }
    count
}

/// Strict counts for any number of queries, [`LANES`] at a time.
fn count_many(queries: &[Query<'_>]) -> Vec<usize> {
    queries
        .chunks(LANES)
        .flat_map(|c| count_lanes(c).into_iter().take(c.len()))
        .collect()
}

/// Bisection state for one eigenvalue: `count(lo) < target ≤ count(hi)`.
#[derive(Clone, Copy)]
struct Bracket<'a> {
    diag: &'a [f64],
    off: &'a [f64],
    guard: f64,
    target: usize,
    lo: f64,
    hi: f64,
}

impl Bracket<'_> {
    fn midpoint(&self, tol: f64) -> Option<f64> {
        let mid = self.lo + 0.5 * (self.hi - self.lo);
        (self.hi - self.lo > tol && mid > self.lo && mid < self.hi).then_some(mid)
    }
}

/// Runs all brackets to width `tol`, keeping every lane busy.
fn bisect_many(brackets: &[Bracket<'_>], tol: f64) -> Vec<f64> {
    let mut out = vec![0.0; brackets.len()];
    let mut pending = (0..brackets.len()).rev().collect::<Vec<_>>();
    let mut active: Vec<(usize, Bracket<'_>)> = Vec::with_capacity(LANES);
    loop {
        while active.len() < LANES {
            match pending.pop() {
                Some(i) => active.push((i, brackets[i])),
                None => break,
            }
        }
        // retire converged lanes before evaluating
        let mut queries: Vec<Query<'_>> = Vec::with_capacity(LANES);
        let mut mids = Vec::with_capacity(LANES);
        active.retain(|(i, b)| match b.midpoint(tol) {
            Some(m) => {
                queries.push(Query {
                    diag: b.diag,
                    off: b.off,
                    lambda: m,
                    guard: b.guard,
                });
                mids.push(m);
                true
            }
            None => {
                out[*i] = b.lo + 0.5 * (b.hi - b.lo);
                false
            }
        });
        if active.is_empty() {
            if pending.is_empty() {
                return out;
            }
            continue;
        }
        let counts = count_lanes(&queries);
        for ((_, b), (&mid, &c)) in active.iter_mut().zip(mids.iter().zip(&counts)) {
            if c >= b.target {
                b.hi = mid;
            } else {
                b.lo = mid;
            }
        }
    }
}

/// `λ_k(T)` (k-th largest, 1-based) to within `±tol`.
pub fn kth_eigenvalue(t: &SymTri, k: usize, tol: f64) -> Result<f64> {
    let n = t.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    check_tol(tol)?;
    if n == 1 {
        return Ok(t.diag()[0]);
    }
    let guard = pivot_guard(t.off());
    let (lo, hi) = spectrum_bracket(t, guard);
    let b = Bracket {
        diag: t.diag(),
        off: t.off(),
        guard,
        target: n - k + 1,
        lo,
        hi,
    };
    Ok(bisect_many(&[b], tol)[0])
}

/// `λ_{k_i}(T_i)` for a batch of matrices of equal order, each searched first
/// in `[center_i − radius, center_i + radius]` and in the Gershgorin bracket
/// when the counts do not confirm the guess.
pub(crate) fn kth_eigenvalues_near(
    items: &[(&SymTri, usize, f64)],
    radius: f64,
    tol: f64,
) -> Result<Vec<f64>> {
    check_tol(tol)?;
    let mut brackets = Vec::with_capacity(items.len());
    let mut probes = Vec::with_capacity(2 * items.len());
    for &(t, k, center) in items {
        let n = t.n();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { k, n });
        }
        let guard = pivot_guard(t.off());
        let pad = radius.abs() + tol + 4.0 * f64::EPSILON * center.abs() + guard;
        let (lo, hi) = (center - pad, center + pad);
        brackets.push(Bracket {
            diag: t.diag(),
            off: t.off(),
            guard,
            target: n - k + 1,
            lo,
            hi,
        });
        for lambda in [lo, hi] {
            probes.push(Query {
                diag: t.diag(),
                off: t.off(),
                lambda,
                guard,
            });
        }
    }
    let orders_match = items.windows(2).all(|w| w[0].0.n() == w[1].0.n());
    if !orders_match {
        return items
            .iter()
            .map(|&(t, k, c)| kth_eigenvalues_near(&[(t, k, c)], radius, tol).map(|v| v[0]))
            .collect();
    }
    if items.first().is_some_and(|(t, _, _)| t.n() == 1) {
        return Ok(items.iter().map(|(t, _, _)| t.diag()[0]).collect());
    }
    let finite = brackets
        .iter()
        .all(|b| b.lo.is_finite() && b.hi.is_finite());
    let counts = if finite {
        count_many(&probes)
    } else {
        vec![0; probes.len()]
    };
    for (i, (b, &(t, _, _))) in brackets.iter_mut().zip(items).enumerate() {
        let confirmed = finite && counts[2 * i] < b.target && counts[2 * i + 1] >= b.target;
        if !confirmed {
            (b.lo, b.hi) = spectrum_bracket(t, b.guard);
        }
    }
    Ok(bisect_many(&brackets, tol))
}

/// All eigenvalues in descending order, each within `±tol`.
///
/// A single shared bisection tree splits the Gershgorin bracket until every
/// eigenvalue is isolated, so the counts spent on common prefixes are paid
/// once.
pub fn all_eigenvalues(t: &SymTri, tol: f64) -> Result<Vec<f64>> {
    check_tol(tol)?;
    Ok(all_eigenvalues_unchecked(t, tol))
}

/// All eigenvalues bisected down to adjacent floating-point numbers.
pub fn all_eigenvalues_full_precision(t: &SymTri) -> Vec<f64> {
    all_eigenvalues_unchecked(t, 0.0)
}

fn all_eigenvalues_unchecked(t: &SymTri, tol: f64) -> Vec<f64> {
    let n = t.n();
    if n == 1 {
        return vec![t.diag()[0]];
    }
    let guard = pivot_guard(t.off());
    let (lo, hi) = spectrum_bracket(t, guard);
    let mut ascending = vec![0.0; n];
    let mut stack = vec![(lo, hi, 0usize, n)];
    let mut batch = Vec::with_capacity(LANES);
    let mut queries = Vec::with_capacity(LANES);
    while !stack.is_empty() {
        batch.clear();
        queries.clear();
        while batch.len() < LANES {
            let Some((lo, hi, c_lo, c_hi)) = stack.pop() else {
                break;
            };
            if c_lo == c_hi {
                continue;
            }
            let mid = lo + 0.5 * (hi - lo);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                ascending[c_lo..c_hi].fill(mid);
                continue;
            }
            batch.push((lo, hi, c_lo, c_hi, mid));
            queries.push(Query {
                diag: t.diag(),
                off: t.off(),
                lambda: mid,
                guard,
            });
        }
        if batch.is_empty() {
            continue;
        }
        let counts = count_lanes(&queries);
        for (&(lo, hi, c_lo, c_hi, mid), &c) in batch.iter().zip(&counts) {
            // clamp keeps the tree consistent if rounding breaks monotonicity
            let c = c.clamp(c_lo, c_hi);
            stack.push((mid, hi, c, c_hi));
            stack.push((lo, mid, c_lo, c));
        }
    }
    ascending.reverse();
    ascending
}

/// Threshold under which a quotient `d_j` marks `χ_j(λ)` as numerically zero:
/// `n · ε · ‖T‖∞`.
pub fn sign_zero_threshold(t: &SymTri) -> f64 {
    t.n() as f64 * f64::EPSILON * t.inf_norm().max(f64::MIN_POSITIVE)
}

/// Eigenvector signs at a simple eigenvalue `lambda_k` of `T` with `b > 0`.
///
/// With positive off-diagonals, `sign(x_j) = sign(χ_{j−1}(λ_k))`. Entries
/// whose quotient `|d_{j−1}|` is below [`sign_zero_threshold`] are reported
/// as [`Sign::Zero`].
pub fn eigenvector_signs(t: &SymTri, lambda_k: f64) -> Result<SignPattern> {
    if !lambda_k.is_finite() {
        return Err(Error::NonFiniteQuery);
    }
    if let Some(index) = t.off().iter().position(|&b| b <= 0.0) {
        return Err(Error::NonPositiveOffDiagonal { index });
    }
    let n = t.n();
    let threshold = sign_zero_threshold(t);
    let guard = pivot_guard(t.off());
    let mut pattern = Vec::with_capacity(n);
    pattern.push(Sign::Pos);
    let mut chi_sign = Sign::Pos;
    let mut d = 1.0;
    for j in 0..n - 1 {
        d = if j == 0 {
            lambda_k - t.diag()[0]
        } else {
            let b = t.off()[j - 1];
            (lambda_k - t.diag()[j]) - b * b / d
        };
        let zero = d.abs() <= threshold;
        if d.abs() < guard {
            d = -guard;
        }
        if d < 0.0 {
            chi_sign = chi_sign.flip();
        }
        pattern.push(if zero { Sign::Zero } else { chi_sign });
    }
    Ok(SignPattern(pattern))
}

/// LU factorization with partial pivoting of `T − σI` (two superdiagonals
/// after row interchanges).
struct TridiagonalLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(t: &SymTri, sigma: f64, pivot_floor: f64) -> Self {
        let n = t.n();
        let mut d: Vec<f64> = t.diag().iter().map(|a| a - sigma).collect();
        let mut dl = t.off().to_vec();
        let mut du = t.off().to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let floor = |x: f64| {
            if x.abs() < pivot_floor {
                pivot_floor.copysign(x)
            } else {
                x
            }
        };
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                d[i] = floor(d[i]);
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                swapped[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
            }
        }
        d[n - 1] = floor(d[n - 1]);
        TridiagonalLu {
            d,
            du,
            du2,
            dl,
            swapped,
        }
    }

    fn solve(&self, rhs: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                rhs.swap(i, i + 1);
            }
            rhs[i + 1] -= self.dl[i] * rhs[i];
        }
        rhs[n - 1] /= self.d[n - 1];
        if n >= 2 {
            rhs[n - 2] = (rhs[n - 2] - self.du[n - 2] * rhs[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            rhs[i] = (rhs[i] - self.du[i] * rhs[i + 1] - self.du2[i] * rhs[i + 2]) / self.d[i];
        }
    }
}

fn normalize(x: &mut [f64]) -> bool {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(max.is_finite() && max > 0.0) {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= max);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

fn residual(t: &SymTri, x: &[f64], lambda: f64) -> f64 {
    t.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(tx, xi)| (tx - lambda * xi).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Unit eigenvector for the eigenvalue approximation `lambda_k`, by inverse
/// iteration with up to five restarts from perturbed shifts.
pub fn eigenvector(t: &SymTri, lambda_k: f64) -> Result<Vec<f64>> {
    if !lambda_k.is_finite() {
        return Err(Error::NonFiniteQuery);
    }
    let n = t.n();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let scale = t.inf_norm();
    let accept = EIGENVECTOR_RESIDUAL * scale;
    let floor = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    for restart in 0..=MAX_RESTARTS {
        // restart r nudges the shift by ±r·ε‖T‖ and changes the start vector
        let nudge = restart as f64 * floor * if restart % 2 == 0 { 1.0 } else { -1.0 };
        let lu = TridiagonalLu::factor(t, lambda_k + nudge, floor);
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + ((i * 7919 + restart * 104_729) % 97) as f64 / 97.0)
            .collect();
        normalize(&mut x);
        for _ in 0..4 {
            lu.solve(&mut x);
            if !normalize(&mut x) {
                break;
            }
            if residual(t, &x, lambda_k) <= accept {
                return Ok(x);
            }
        }
    }
    Err(Error::NoConvergence {
        restarts: MAX_RESTARTS,
    })
}
