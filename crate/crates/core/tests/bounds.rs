mod common;

use common::*;
use rand::Rng;
use tridiag_interval::oracle::{dense_eigenvalues, vertex_ranges};
use tridiag_interval::sturm::kth_eigenvalue;
use tridiag_interval::*;

#[test]
fn example_lower_endpoint() {
    let r = eigenvalue_bounds(&example7(), 1e-9).unwrap();
    assert!((r.estimates[3].lo() - 842.9250).abs() < 1e-3);
    for (k, w) in r.lower_witness.iter().enumerate() {
        assert!(
            example7().contains(w),
            "lower witness {} outside the set",
            k + 1
        );
    }
}

#[test]
fn point_matrix_gives_point_intervals() {
    let t = SymTri::new(vec![1.0, -2.0, 4.0], vec![0.5, -1.5]).unwrap();
    let r = eigenvalue_bounds(&SymTriInterval::from_point(&t), 1e-12).unwrap();
    for (iv, ev) in r.estimates.iter().zip(dense_eigenvalues(&t)) {
        assert!((iv.lo() - ev).abs() < 1e-11 && (iv.hi() - ev).abs() < 1e-11);
    }
    let ext = extremal_bounds(&SymTriInterval::from_point(&t), 1e-12).unwrap();
    let ev = dense_eigenvalues(&t);
    let (u1, l1, un, ln) = ext.as_tuple();
    for (got, want) in [(u1, ev[0]), (l1, ev[0]), (un, ev[2]), (ln, ev[2])] {
        assert!((got - want).abs() < 1e-11);
    }
}

#[test]
fn example_extremal_values() {
    let ext = extremal_bounds(&example7(), 1e-9).unwrap();
    assert!((ext.upper_largest - 12720.2273).abs() < 1e-3);
    assert!((ext.lower_largest - 12560.8377).abs() < 1e-3);
    assert!((ext.upper_smallest - 967.1083).abs() < 1e-3);
    assert!((ext.lower_smallest - 842.9250).abs() < 1e-3);
}

#[test]
fn lower_endpoints_match_oracle() {
    let mut rng = rng(31);
    let mut done = 0;
    while done < 10 {
        let m = random_dominant(&mut rng, 5);
        if check_sign_invariance(&m, 1e-12).unwrap().status != InvarianceStatus::Invariant {
            continue;
        }
        let r = eigenvalue_bounds(&m, 1e-12).unwrap();
        for (iv, o) in r.estimates.iter().zip(vertex_ranges(&m, 1e-12).unwrap()) {
            assert!((iv.lo() - o.lo).abs() <= 1e-9);
        }
        done += 1;
    }
}

#[test]
fn report_invariants() {
    let mut rng = rng(32);
    for i in 0..40 {
        let n = 1 + i % 7;
        let m = random_general(&mut rng, n);
        let a = analyze(&m, &AnalysisOptions::default()).unwrap();
        let r = &a.report;
        let tol = a.tol;
        for k in 0..n {
            // witnesses reproduce endpoints
            let up = kth_eigenvalue(&r.upper_witness[k], k + 1, tol).unwrap();
            let lo = kth_eigenvalue(&r.lower_witness[k], k + 1, tol).unwrap();
            assert!(
                (up - r.estimates[k].hi()).abs() <= 2.0 * tol,
                "instance {i} k={}",
                k + 1
            );
            assert!(
                (lo - r.estimates[k].lo()).abs() <= 2.0 * tol,
                "instance {i} k={}",
                k + 1
            );
            assert!(m.contains(&r.upper_witness[k]) && m.contains(&r.lower_witness[k]));
            assert!(r.intervals[k].encloses(&r.estimates[k]));
        }
        for k in 1..n {
            assert!(r.estimates[k - 1].hi() >= r.estimates[k].hi() - 2.0 * tol);
            assert!(r.estimates[k - 1].lo() >= r.estimates[k].lo() - 2.0 * tol);
        }
        // witnesses are vertices unless an entry was widened, so the
        // endpoints cannot leave the vertex range
        if n <= 6 && !a.normalization.any_widened() {
            let oracle = vertex_ranges(&m, 1e-12).unwrap();
            for (iv, o) in r.estimates.iter().zip(&oracle) {
                assert!(iv.hi() <= o.hi + 1e-9 && iv.lo() >= o.lo - 1e-9);
            }
        }
        // sampled members stay inside exact reports
        if r.status == Status::Exact {
            for _ in 0..500 {
                let ev = dense_eigenvalues(&random_member(&mut rng, &m));
                for (v, iv) in ev.iter().zip(&r.estimates) {
                    assert!(*v <= iv.hi() + 2.0 * tol && *v >= iv.lo() - 2.0 * tol);
                }
            }
        }
    }
}

#[test]
fn extremal_agrees_with_certified_bounds() {
    let mut rng = rng(33);
    let mut done = 0;
    while done < 20 {
        let m = random_dominant(&mut rng, 2 + done % 6);
        if check_sign_invariance(&m, 1e-12).unwrap().status != InvarianceStatus::Invariant {
            continue;
        }
        let r = eigenvalue_bounds(&m, 1e-12).unwrap();
        let e = extremal_bounds(&m, 1e-12).unwrap();
        let n = m.n();
        assert!((e.upper_largest - r.estimates[0].hi()).abs() < 1e-9);
        assert!((e.lower_largest - r.estimates[0].lo()).abs() < 1e-9);
        assert!((e.upper_smallest - r.estimates[n - 1].hi()).abs() < 1e-9);
        assert!((e.lower_smallest - r.estimates[n - 1].lo()).abs() < 1e-9);
        done += 1;
    }
}

#[test]
fn enlarging_entries_is_monotone() {
    let mut rng = rng(34);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let m = random_general(&mut rng, n);
        let grow = |iv: &Interval, rng: &mut rand_chacha::ChaCha8Rng| {
            (
                iv.lo() - rng.gen_range(0.0..1.0),
                iv.hi() + rng.gen_range(0.0..1.0),
            )
        };
        let d: Vec<_> = m.diag().iter().map(|iv| grow(iv, &mut rng)).collect();
        let o: Vec<_> = m.off().iter().map(|iv| grow(iv, &mut rng)).collect();
        let big = SymTriInterval::from_pairs(&d, &o).unwrap();
        let a = extremal_bounds(&m, 1e-12).unwrap();
        let b = extremal_bounds(&big, 1e-12).unwrap();
        assert!(b.upper_largest >= a.upper_largest - 1e-10);
        assert!(b.lower_smallest <= a.lower_smallest + 1e-10);
    }
}

#[test]
fn cardinality_examples() {
    use Sign::{Neg, Pos};
    let p = SignPattern::new(vec![Neg, Neg, Neg, Pos]);
    assert_eq!(cardinality_of_upper_selection(&p).unwrap(), 2);
    assert_eq!(
        cardinality_of_upper_selection(&SignPattern::new(vec![Pos; 6])).unwrap(),
        5
    );
    let alt = SignPattern::new((0..6).map(|i| if i % 2 == 0 { Pos } else { Neg }).collect());
    assert_eq!(cardinality_of_upper_selection(&alt).unwrap(), 0);
    let z = SignPattern::new(vec![Pos, Sign::Zero, Neg]);
    assert_eq!(cardinality_of_upper_selection(&z), Err(Error::ZeroSign(1)));
}

#[test]
fn property_examples() {
    let p = property_checks(&example7(), 1e-9).unwrap();
    assert_eq!(p.positive_definite, Decision::Yes);
    assert_eq!(p.positive_semidefinite, Decision::Yes);
    assert_eq!(p.hurwitz_stable, Decision::No);
    assert_eq!(p.schur_stable, Decision::No);
    assert!(p.max_spectral_radius.widen(1e-3, 0).contains(12720.2273));

    let shifted = property_checks(&example7().shifted(-13000.0), 1e-9).unwrap();
    assert_eq!(shifted.hurwitz_stable, Decision::Yes);
    assert_eq!(shifted.positive_definite, Decision::No);

    let identity = SymTriInterval::from_point(&SymTri::diagonal(vec![1.0; 3]).unwrap());
    let p = property_checks(&identity, 1e-12).unwrap();
    assert_eq!(p.hurwitz_stable, Decision::No);
    assert_eq!(p.schur_stable, Decision::No);

    let contraction =
        SymTriInterval::from_pairs(&[(-0.3, 0.2), (-0.1, 0.4)], &[(-0.2, 0.3)]).unwrap();
    assert_eq!(
        property_checks(&contraction, 1e-12).unwrap().schur_stable,
        Decision::Yes
    );
}

#[test]
fn precondition_errors() {
    let m = example7();
    assert_eq!(
        upper_bounds_sign_invariant(&m, 1e-9).unwrap_err(),
        Error::NotNormalized
    );
    let zero = SymTriInterval::from_pairs(&[(1.0, 2.0), (1.0, 2.0)], &[(0.0, 0.0)]).unwrap();
    assert_eq!(
        upper_bounds_sign_invariant(&zero, 1e-9).unwrap_err(),
        Error::NonPositiveOffDiagonal { index: 0 }
    );
    assert_eq!(
        eigenvalue_bounds(&m, -1.0).unwrap_err(),
        Error::InvalidTolerance(-1.0)
    );
}
