mod common;

use common::*;
use proptest::prelude::*;
use tridiag_interval::oracle::vertex_ranges;
use tridiag_interval::*;

#[test]
fn shift_moves_reported_bounds() {
    // a 1×1 matrix [5, 8] shifted by 3 and mapped back to [2, 5]
    let original = SymTriInterval::from_pairs(&[(2.0, 5.0)], &[]).unwrap();
    let (shifted, _) = normalize(&original.shifted(3.0));
    let rec_from = SymTriInterval::from_pairs(&[(-1.0, 2.0)], &[]).unwrap();
    let (norm, rec) = normalize(&rec_from);
    assert_eq!(rec.shift, 1.0);
    assert_eq!(shifted.diag()[0], Interval::new(5.0, 8.0).unwrap());
    let bounds = eigenvalue_bounds(&norm, 1e-12).unwrap();
    let back = denormalize_bounds(bounds, &rec).unwrap();
    assert_eq!(back.estimates[0], Interval::new(-1.0, 2.0).unwrap());
    assert!(back.intervals[0].encloses(&Interval::new(-1.0, 2.0).unwrap()));
}

#[test]
fn denormalize_checks_dimensions() {
    let (_, rec) = normalize(&example7());
    let other = SymTriInterval::from_pairs(&[(1.0, 2.0), (1.0, 2.0)], &[(1.0, 1.0)]).unwrap();
    let report = eigenvalue_bounds(&other, 1e-12).unwrap();
    assert_eq!(
        denormalize_bounds(report, &rec),
        Err(Error::DimensionMismatch {
            expected: 4,
            found: 2
        })
    );
}

#[test]
fn identity_record_leaves_report_unchanged() {
    let m = SymTriInterval::from_pairs(&[(1.0, 2.0), (3.0, 4.0)], &[(0.5, 1.0)]).unwrap();
    let (nm, rec) = normalize(&m);
    let report = eigenvalue_bounds(&nm, 1e-12).unwrap();
    assert_eq!(denormalize_bounds(report.clone(), &rec).unwrap(), report);
}

#[test]
fn scalar_blocks_reproduce_diagonal() {
    let m = SymTriInterval::from_pairs(
        &[(1.0, 2.0), (-3.0, 4.0), (5.0, 6.0)],
        &[(0.0, 0.0), (0.0, 0.0)],
    )
    .unwrap();
    let r = eigenvalue_bounds(&m, 1e-12).unwrap();
    // k-th largest lower ends and k-th largest upper ends
    let want = [(5.0, 6.0), (1.0, 4.0), (-3.0, 2.0)];
    for (got, (lo, hi)) in r.estimates.iter().zip(want) {
        assert!((got.lo() - lo).abs() <= 1e-9 && (got.hi() - hi).abs() <= 1e-9);
    }
}

#[test]
fn round_trip_matches_oracle_on_original() {
    let mut rng = rng(11);
    let mut checked = 0;
    while checked < 30 {
        let n = 2 + checked % 4;
        let m = random_dominant(&mut rng, n).shifted(-25.0);
        let (nm, rec) = normalize(&m);
        if rec.any_widened()
            || check_sign_invariance(&m, 1e-12).unwrap().status != InvarianceStatus::Invariant
        {
            continue;
        }
        let report = denormalize_bounds(eigenvalue_bounds(&nm, 1e-12).unwrap(), &rec).unwrap();
        let oracle = vertex_ranges(&m, 1e-12).unwrap();
        for (iv, o) in report.estimates.iter().zip(&oracle) {
            assert!((iv.lo() - o.lo).abs() <= 1e-9 && (iv.hi() - o.hi).abs() <= 1e-9);
        }
        for (k, w) in report.upper_witness.iter().enumerate() {
            assert!(m.contains(w), "upper witness {k} is not a member");
        }
        for (k, w) in report.lower_witness.iter().enumerate() {
            assert!(m.contains(w), "lower witness {k} is not a member");
        }
        checked += 1;
    }
}

#[test]
fn widened_entries_keep_extremal_values() {
    // λ̄_1 and λ̲_n sit at vertices of both matrices, so vertex extrema agree
    let mut rng = rng(12);
    for _ in 0..20 {
        let m = random_general(&mut rng, 4);
        let (nm, rec) = normalize(&m);
        let a = vertex_ranges(&m, 1e-12).unwrap();
        let b = vertex_ranges(&nm, 1e-12).unwrap();
        assert!((a[0].hi + rec.shift - b[0].hi).abs() < 1e-9);
        assert!((a[3].lo + rec.shift - b[3].lo).abs() < 1e-9);
    }
}

fn arb_interval() -> impl Strategy<Value = (f64, f64)> {
    (-50.0f64..50.0, 0.0f64..10.0).prop_map(|(lo, w)| (lo, lo + w))
}

fn arb_matrix() -> impl Strategy<Value = SymTriInterval> {
    (1usize..8).prop_flat_map(|n| {
        (
            prop::collection::vec(arb_interval(), n),
            prop::collection::vec(arb_interval(), n - 1),
        )
            .prop_map(|(d, o)| SymTriInterval::from_pairs(&d, &o).unwrap())
    })
}

proptest! {
    #[test]
    fn normalization_is_idempotent(m in arb_matrix()) {
        let once = normalize(&m).0;
        prop_assert_eq!(normalize(&once).0, once.clone());
        prop_assert!(once.is_nonnegative());
    }

    #[test]
    fn blocks_cover_all_rows(m in arb_matrix()) {
        let nm = normalize(&m).0;
        let blocks = split_blocks(&nm);
        let mut next = 0;
        for b in &blocks {
            prop_assert_eq!(b.offset, next);
            prop_assert!(b.matrix.off().iter().all(|iv| iv.hi() > 0.0));
            next += b.matrix.n();
        }
        prop_assert_eq!(next, m.n());
    }

    #[test]
    fn map_back_yields_members(m in arb_matrix(), mask in any::<u64>()) {
        let (nm, rec) = normalize(&m);
        prop_assert!(m.contains(&rec.map_back(&nm.vertex(mask))));
    }
}
