mod common;

use common::*;
use rand::Rng;
use tridiag_interval::invariance::{interval_sturm_nonsingular, SplitCertificate};
use tridiag_interval::oracle::{
    dense_eigenpairs, is_eigenvalue_bruteforce, sample_ranges, vertex_ranges, Sampling,
};
use tridiag_interval::*;

#[test]
fn admissible_sets_match_subset_filter() {
    for n in 1..=14usize {
        let mut brute = Vec::new();
        for mask in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect();
            if IndexSet::new(members.clone(), n).is_some() {
                brute.push(members);
            }
        }
        brute.sort();
        let mut lazy: Vec<Vec<usize>> = admissible_index_sets(n)
            .map(|s| s.members().to_vec())
            .collect();
        let lexicographic = lazy.clone();
        lazy.sort();
        assert_eq!(lazy, brute, "n = {n}");
        assert_eq!(lazy, lexicographic, "enumeration order for n = {n}");
    }
}

#[test]
fn outer_estimate_examples() {
    let t = SymTri::new(vec![1.0, 2.0, 3.0], vec![0.5, 0.5]).unwrap();
    let o = outer_estimate(&SymTriInterval::from_point(&t), 1e-12).unwrap();
    for (iv, ev) in o
        .intervals
        .iter()
        .zip(tridiag_interval::oracle::dense_eigenvalues(&t))
    {
        assert!(iv.contains(ev) && iv.width() < 1e-10);
    }
    let o = outer_estimate(&example7(), 1e-9).unwrap();
    assert!(o.intervals[0].encloses(&Interval::new(12560.8377, 12720.2273).unwrap()));

    let mut rng = rng(41);
    let m = random_general(&mut rng, 5);
    let o = outer_estimate(&m, 1e-12).unwrap();
    let samples = sample_ranges(
        &m,
        &Sampling::Random {
            samples: 1000,
            seed: 7,
        },
        1e-12,
    )
    .unwrap();
    for r in samples {
        assert!(o.contains(r.lo) && o.contains(r.hi));
    }
    for _ in 0..1000 {
        for v in tridiag_interval::oracle::dense_eigenvalues(&random_member(&mut rng, &m)) {
            assert!(o.contains(v));
        }
    }
}

#[test]
fn example_is_invariant_by_split_certificate() {
    let v = check_sign_invariance(&example7(), 1e-9).unwrap();
    assert_eq!(v.status, InvarianceStatus::Invariant);
    let cert = v.certificate.unwrap();
    assert!(cert.recheck());
    if let Certificate::SplitOuterEstimates { splits } = &cert {
        assert_eq!(
            splits.iter().map(|s| s.index).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert!(splits.iter().all(SplitCertificate::holds));
    }
}

/// Signs of every dense eigenvector over a grid of members, up to global sign.
fn grid_sign_patterns_constant(m: &SymTriInterval, points: usize) -> bool {
    let n = m.n();
    let entries = 2 * n - 1;
    let total = points.pow(entries as u32);
    let reference: Vec<SignPattern> = dense_eigenpairs(&m.midpoint())
        .iter()
        .map(|(_, x)| SignPattern::from_vector(x, 1e-9))
        .collect();
    (0..total).all(|mut idx| {
        let t: Vec<f64> = (0..entries)
            .map(|_| {
                let d = idx % points;
                idx /= points;
                d as f64 / (points - 1) as f64
            })
            .collect();
        let a = m.member_at(&t);
        dense_eigenpairs(&a)
            .iter()
            .zip(&reference)
            .all(|((_, x), r)| SignPattern::from_vector(x, 1e-9).matches_up_to_sign(r))
    })
}

#[test]
fn separated_instance_signs_constant_on_grid() {
    let m = SymTriInterval::from_pairs(
        &[(0.0, 1.0), (10.0, 11.0), (20.0, 21.0)],
        &[(0.5, 1.5), (0.5, 1.5)],
    )
    .unwrap();
    let v = check_sign_invariance(&m, 1e-12).unwrap();
    assert_eq!(v.status, InvarianceStatus::Invariant);
    // 6^5 = 7776 grid members
    assert!(grid_sign_patterns_constant(&m, 6));
}

#[test]
fn full_path_agrees_with_oracle() {
    let mut rng = rng(42);
    let opts = InvarianceOptions {
        full_path: true,
        max_full_order: 30,
        deterministic: true,
    };
    let mut seen = [0usize; 3];
    for i in 0..60 {
        let n = 3 + i % 3;
        // tight spacing so that the sufficient tests often fail
        let diag: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let c: f64 = rng.gen_range(-2.0..2.0);
                (c - 0.3, c + 0.3)
            })
            .collect();
        let off: Vec<(f64, f64)> = (1..n)
            .map(|_| {
                let c: f64 = rng.gen_range(0.5..1.5);
                (c - 0.2, c + 0.2)
            })
            .collect();
        let m = SymTriInterval::from_pairs(&diag, &off).unwrap();
        let v = check_sign_invariance_with(&m, 1e-12, &opts).unwrap();
        match v.status {
            InvarianceStatus::Invariant => {
                seen[0] += 1;
                let r = eigenvalue_bounds(&m, 1e-12).unwrap();
                let o = vertex_ranges(&m, 1e-12).unwrap();
                for (iv, o) in r.estimates.iter().zip(&o) {
                    assert!(
                        (iv.hi() - o.hi).abs() < 1e-9 && (iv.lo() - o.lo).abs() < 1e-9,
                        "instance {i}"
                    );
                }
            }
            InvarianceStatus::NotInvariant => {
                seen[1] += 1;
                let w = v.witness.unwrap();
                let segs = w.set.segments(n);
                assert_eq!(segs.len(), w.ranges.len());
                for r in &w.ranges {
                    assert!(r.contains(w.value));
                }
            }
            InvarianceStatus::Unknown => seen[2] += 1,
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "verdict mix {seen:?}");
}

#[test]
fn deterministic_witness_is_first_in_order() {
    let m = SymTriInterval::from_point(&SymTri::new(vec![0.0; 5], vec![1.0; 4]).unwrap());
    let det = InvarianceOptions {
        deterministic: true,
        ..Default::default()
    };
    let a = check_sign_invariance_with(&m, 1e-12, &det).unwrap();
    let b = check_sign_invariance_with(&m, 1e-12, &det).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.status, InvarianceStatus::NotInvariant);
    let first = admissible_index_sets(5)
        .find(|s| a.witness.as_ref().is_some_and(|w| &w.set == s))
        .unwrap();
    assert_eq!(first, a.witness.unwrap().set);
    let fast = InvarianceOptions {
        deterministic: false,
        ..Default::default()
    };
    assert_eq!(
        check_sign_invariance_with(&m, 1e-12, &fast).unwrap().status,
        InvarianceStatus::NotInvariant
    );
}

#[test]
fn large_order_without_certificate_is_unknown() {
    let m = SymTriInterval::from_pairs(&[(0.0, 1.0); 40], &[(1.0, 2.0); 39]).unwrap();
    let v = check_sign_invariance(&m, 1e-12).unwrap();
    assert_eq!(v.status, InvarianceStatus::Unknown);
}

#[test]
fn membership_examples() {
    let m = example7();
    assert_eq!(
        membership_test(&m, 5000.0, 1e-9).unwrap(),
        Membership::NotEigenvalue
    );
    assert_eq!(
        membership_test(&m, 12600.0, 1e-9).unwrap(),
        Membership::IsEigenvalue
    );
    assert_eq!(
        membership_test(&m, -1e5, 1e-9).unwrap(),
        Membership::NotEigenvalue
    );
    assert!(interval_sturm_nonsingular(&m, 5000.0));
}

#[test]
fn membership_agrees_with_bruteforce() {
    let mut rng = rng(43);
    let mut decisive = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=4);
        let m = random_dominant(&mut rng, n);
        let lambda = rng.gen_range(-5.0..(10.0 * n as f64 + 5.0));
        let tol = 1e-9;
        let verdict = membership_test(&m, lambda, tol).unwrap();
        let brute = is_eigenvalue_bruteforce(&m, lambda, tol).unwrap();
        match verdict {
            Membership::IsEigenvalue => {
                decisive += 1;
                assert!(brute, "λ = {lambda}");
            }
            Membership::NotEigenvalue => {
                decisive += 1;
                assert!(!brute, "λ = {lambda}");
            }
            Membership::Unknown => {}
        }
    }
    assert!(decisive > 400);
}

#[test]
fn membership_consistency_band() {
    let m = example7();
    let tol = 1e-3;
    let tester = MembershipTester::new(&m, tol).unwrap();
    let edge = eigenvalue_bounds(&m, tol).unwrap().estimates[1].hi();
    let mut x = edge - 5.0 * tol;
    let mut last: Option<(f64, Membership)> = None;
    while x < edge + 5.0 * tol {
        let v = tester.test(x);
        if let Some((y, w)) = last {
            let opposite = matches!(
                (v, w),
                (Membership::IsEigenvalue, Membership::NotEigenvalue)
                    | (Membership::NotEigenvalue, Membership::IsEigenvalue)
            );
            assert!(!(opposite && x - y <= 2.0 * tol));
        }
        if v != Membership::Unknown {
            last = Some((x, v));
        }
        x += tol / 4.0;
    }
}

#[test]
fn refinement_never_upgrades_against_oracle() {
    let mut rng = rng(44);
    let mut upgraded = 0;
    for _ in 0..40 {
        let n = rng.gen_range(3..=4);
        let m = random_dominant(&mut rng, n);
        let inner = eigenvalue_bounds(&m, 1e-12).unwrap();
        let eps = 1e-3;
        let r = disjoint_refinement(&m, inner.clone(), eps, 1e-12).unwrap();
        if r.status == Status::Exact {
            upgraded += 1;
            for i in 1..n - 1 {
                for probe in [inner.estimates[i].lo() - eps, inner.estimates[i].hi() + eps] {
                    assert!(!is_eigenvalue_bruteforce(&m, probe, 1e-12).unwrap());
                }
            }
            // upgrade agrees with the exact sets from the oracle
            for (iv, o) in r.estimates.iter().zip(vertex_ranges(&m, 1e-12).unwrap()) {
                assert!((iv.lo() - o.lo).abs() < 1e-9 && (iv.hi() - o.hi).abs() < 1e-9);
            }
        }
    }
    assert!(upgraded > 0);
}
