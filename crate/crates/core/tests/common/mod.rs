#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tridiag_interval::{SymTri, SymTriInterval};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example7() -> SymTriInterval {
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

fn centered(mid: f64, rad: f64) -> (f64, f64) {
    (mid - rad, mid + rad)
}

/// Diagonally dominant instance with `|b| ≥ 0.2`: diagonal centers near
/// `10 i`, off-diagonal magnitudes in `[0.2, 2.3]` with random sign.
pub fn random_dominant(rng: &mut ChaCha8Rng, n: usize) -> SymTriInterval {
    let diag: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            centered(
                10.0 * i as f64 + rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..0.5),
            )
        })
        .collect();
    let off: Vec<(f64, f64)> = (1..n)
        .map(|_| {
            let (lo, hi) = centered(rng.gen_range(0.5..2.0), rng.gen_range(0.0..0.3));
            if rng.gen_bool(0.5) {
                (-hi, -lo)
            } else {
                (lo, hi)
            }
        })
        .collect();
    SymTriInterval::from_pairs(&diag, &off).unwrap()
}

/// Unstructured instance: entries anywhere in `[-5, 5]`, off-diagonals may
/// straddle zero.
pub fn random_general(rng: &mut ChaCha8Rng, n: usize) -> SymTriInterval {
    let pair = |rng: &mut ChaCha8Rng| {
        let (x, y): (f64, f64) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        (x.min(y), x.max(y))
    };
    let diag: Vec<_> = (0..n).map(|_| pair(rng)).collect();
    let off: Vec<_> = (1..n).map(|_| pair(rng)).collect();
    SymTriInterval::from_pairs(&diag, &off).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> SymTri {
    SymTri::new(
        (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect(),
        (1..n).map(|_| rng.gen_range(-10.0..10.0)).collect(),
    )
    .unwrap()
}

/// Uniform random member.
pub fn random_member(rng: &mut ChaCha8Rng, m: &SymTriInterval) -> SymTri {
    let t: Vec<f64> = (0..2 * m.n() - 1).map(|_| rng.gen::<f64>()).collect();
    m.member_at(&t)
}
