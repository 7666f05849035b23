use cohsys::certify::{
    certify_empty_ext_high, certify_empty_ext_low, certify_large_alpha, count_value,
    enumerate_subtypes,
};
use cohsys::types::SystemType;

fn st(n: i64, d: i64, k: i64) -> SystemType {
    SystemType::new(n, d, k).unwrap()
}

// In the range where the subtype count cap stays below the multiple degree,
// every enumerated slope-feasible subtype must come out with a negative
// count, so large-weight existence certifies with no witnesses at all.
#[test]
fn counting_certificate_sweep() {
    for n in 2..=8i64 {
        for a in 2..=5i64 {
            for t in 0..n {
                for k in (n + 1)..=(a * n - t) {
                    let sys = st(n, a * n - t, k);
                    let cert = certify_large_alpha(&sys).unwrap();
                    assert!(
                        cert.success && cert.witnesses.is_empty(),
                        "({n}, {}, {k}) witnesses {:?}",
                        a * n - t,
                        cert.witnesses
                    );
                    for tri in enumerate_subtypes(&sys).unwrap() {
                        assert!(tri.lhs < 0, "({n}, {}, {k}) -> {tri:?}", a * n - t);
                        assert_eq!(count_value(&sys, tri.n1, tri.d1, tri.k1), tri.lhs);
                    }
                }
            }
        }
    }
}

// Many low-degree factors with the weight of the sections on them: the same
// counting argument still closes once the reduction step may skip the
// full-degree subtypes.
#[test]
fn counting_certificate_with_reduction() {
    for n in 2..=8i64 {
        for a in 2..=5i64 {
            for t in 2..n {
                if a < t {
                    continue;
                }
                for k in (n + 1)..=(a * n - 1) {
                    let sys = st(n, a * n - t, k);
                    let cert = certify_large_alpha(&sys).unwrap();
                    assert!(cert.success, "({n}, {}, {k})", a * n - t);
                }
            }
        }
    }
}

#[test]
fn success_is_upward_closed_in_sections() {
    // Within the no-reduction regime, certifying at k implies certifying at
    // k + 1: more sections only tighten the subtype count.
    for n in 2..=6i64 {
        for a in 2..=4i64 {
            for t in 0..n {
                let d = a * n - t;
                let mut seen_success = false;
                for k in (n + 1)..=(a * n - t) {
                    let ok = certify_large_alpha(&st(n, d, k)).unwrap().success;
                    if seen_success {
                        assert!(ok, "success lost from k-1 to k at ({n}, {d}, {k})");
                    }
                    seen_success = ok;
                }
            }
        }
    }
}

#[test]
fn extension_certificates_do_not_meet_existence() {
    // A certified-empty type can never also certify large-weight existence.
    for n in 2..=8i64 {
        for a in 2..=5i64 {
            for t in 1..n {
                for k in (n + 1)..(a * n) {
                    let sys = st(n, a * n - t, k);
                    let la = certify_large_alpha(&sys).unwrap();
                    if k >= a * t {
                        if let Ok(high) = certify_empty_ext_high(&sys) {
                            assert!(!(high.success && la.success), "({n}, {}, {k})", a * n - t);
                        }
                    }
                    if k <= a * t {
                        if let Ok(low) = certify_empty_ext_low(&sys) {
                            assert!(!(low.success && la.success), "({n}, {}, {k})", a * n - t);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn frozen_certificates() {
    let high = certify_empty_ext_high(&st(5, 7, 9)).unwrap();
    assert!(high.success);
    let ext = high.ext.unwrap();
    assert_eq!((ext.dim, ext.threshold), (2, 3));

    assert!(certify_empty_ext_high(&st(4, 5, 8)).unwrap().success);
    assert!(!certify_empty_ext_high(&st(5, 8, 9)).unwrap().success);
    assert!(certify_empty_ext_low(&st(8, 13, 2)).unwrap().success);
    assert!(!certify_empty_ext_low(&st(4, 5, 3)).unwrap().success);

    let la = certify_large_alpha(&st(2, 3, 3)).unwrap();
    assert!(la.success);
    assert!(certify_large_alpha(&st(2, 4, 5)).unwrap().success);
    assert!(certify_large_alpha(&st(3, 6, 3)).is_err());
}
