//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS` / `criterion N: FAIL` line.

use cohsys::certify::{certify_empty_ext_high, certify_empty_ext_low, certify_large_alpha};
use cohsys::formulas::beta;
use cohsys::knowledge::conjecture::{conjecture_scan, Verdict};
use cohsys::lab::{sample_system, violation_search};
use cohsys::rat::{ExtRat, OpenInterval, Rat};
use cohsys::types::SystemType;
use cohsys::{Classifier, Status};
use std::time::Instant;

fn st(n: i64, d: i64, k: i64) -> SystemType {
    SystemType::new(n, d, k).unwrap()
}

fn report(name: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!("criterion {name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {name}: {}", failures.join("; "));
}

fn expect_exact(
    cl: &Classifier,
    (n, d, k): (i64, i64, i64),
    lo: Rat,
    hi: ExtRat,
    failures: &mut Vec<String>,
) {
    let want = OpenInterval::new(lo, hi);
    match &cl.classify(&st(n, d, k)).status {
        Status::Exact(iv) if *iv == want => {}
        other => failures.push(format!("({n},{d},{k}): want EXACT {want}, got {}", other.name())),
    }
}

fn expect_empty(cl: &Classifier, (n, d, k): (i64, i64, i64), failures: &mut Vec<String>) {
    let got = cl.classify(&st(n, d, k));
    if got.status != Status::EmptyAll {
        failures.push(format!("({n},{d},{k}): want EMPTY_ALL, got {}", got.status.name()));
    }
}

#[test]
fn criterion_1_golden_classifications() {
    let cl = Classifier::new();
    let mut bad = Vec::new();
    let fin = |p, q| ExtRat::Fin(Rat::new(p, q));

    expect_exact(&cl, (6, 7, 4), Rat::new(5, 4), fin(2, 1), &mut bad);
    expect_exact(&cl, (2, 3, 3), Rat::int(1), ExtRat::Inf, &mut bad);
    expect_exact(&cl, (3, 5, 3), Rat::new(2, 3), ExtRat::Inf, &mut bad);
    for d in 3..=8 {
        let t = if d % 2 == 0 { 0 } else { 1 };
        expect_exact(&cl, (2, d, 2), Rat::new(t, 2), ExtRat::Inf, &mut bad);
    }
    expect_exact(&cl, (4, 7, 3), Rat::new(3, 5), fin(7, 1), &mut bad);
    expect_exact(&cl, (5, 9, 3), Rat::new(3, 4), fin(11, 3), &mut bad);
    expect_exact(&cl, (6, 11, 3), Rat::int(1), fin(7, 3), &mut bad);
    expect_exact(&cl, (7, 13, 3), Rat::new(3, 2), fin(8, 3), &mut bad);
    for n in 4..=10 {
        expect_empty(&cl, (n, 2 * n - 3, 2 * n - 1), &mut bad);
    }
    for t in 2..=5 {
        expect_empty(&cl, (2 * t, 3 * t, t), &mut bad);
    }
    expect_empty(&cl, (4, 6, 2), &mut bad);
    expect_empty(&cl, (6, 9, 3), &mut bad);

    report("1", bad);
}

#[test]
fn criterion_2_multiple_degree_equivalence() {
    let cl = Classifier::new();
    let full = OpenInterval::new(Rat::zero(), ExtRat::Inf);
    let mut bad = Vec::new();
    for n in 2..=6i64 {
        for a in 2..=4i64 {
            for k in (n + 1)..=((a + 1) * n - 1) {
                let direct = k * ((a + 1) * n - k) >= n * n - 1;
                let classified = matches!(
                    &cl.classify(&st(n, a * n, k)).status,
                    Status::Exact(iv) if *iv == full
                );
                if direct != classified {
                    bad.push(format!("({n},{},{k}) direct {direct} classified {classified}", a * n));
                }
            }
        }
    }
    report("2", bad);
}

#[test]
fn criterion_3_counting_certificates() {
    let mut bad = Vec::new();
    for n in 2..=8i64 {
        for a in 2..=5i64 {
            for t in 0..n {
                let d = a * n - t;
                for k in (n + 1)..=(a * n - t) {
                    match certify_large_alpha(&st(n, d, k)) {
                        Ok(c) if c.success => {
                            if c.witnesses.iter().any(|w| w.lhs >= 0) {
                                bad.push(format!("({n},{d},{k}): nonnegative count"));
                            }
                        }
                        _ => bad.push(format!("({n},{d},{k}): certificate failed")),
                    }
                }
                if t >= 2 && a >= t {
                    for k in (n + 1)..=(a * n - 1) {
                        match certify_large_alpha(&st(n, d, k)) {
                            Ok(c) if c.success => {}
                            _ => bad.push(format!("({n},{d},{k}): reduction certificate failed")),
                        }
                    }
                }
            }
        }
    }
    report("3", bad);
}

#[test]
fn criterion_4_emptiness_consistency() {
    let cl = Classifier::new();
    let mut bad = Vec::new();
    for n in 2..=8i64 {
        for a in 2..=5i64 {
            for t in 0..n {
                let d = a * n - t;
                for k in 1..=((a + 1) * n) {
                    let sys = st(n, d, k);
                    let high = certify_empty_ext_high(&sys).map(|c| c.success).unwrap_or(false);
                    let low = certify_empty_ext_low(&sys).map(|c| c.success).unwrap_or(false);
                    if high || low {
                        let know = cl.classify(&sys);
                        if know.status != Status::EmptyAll {
                            bad.push(format!(
                                "({n},{d},{k}): certified empty but classified {}",
                                know.status.name()
                            ));
                        }
                        if know.exists_some {
                            bad.push(format!("({n},{d},{k}): certified empty yet nonempty evidence"));
                        }
                    }
                }
            }
        }
    }
    report("4", bad);
}

#[test]
fn criterion_5a_forced_boundary_violation() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for seed in 0..50u64 {
        let sys = sample_system(2, 3, 3, seed).unwrap();
        if !violation_search(&sys, &Rat::new(9, 10), 2000, seed).found() {
            bad.push(format!("seed {seed}: no violation"));
        }
    }
    println!("criterion 5a runtime: {:.1}s", start.elapsed().as_secs_f64());
    report("5a", bad);
}

#[test]
fn criterion_5b_stable_side_is_quiet() {
    let start = Instant::now();
    let mut quiet = 0;
    for seed in 0..50u64 {
        let sys = sample_system(2, 3, 3, seed).unwrap();
        if !violation_search(&sys, &Rat::int(2), 2000, seed).found() {
            quiet += 1;
        }
    }
    println!("criterion 5b runtime: {:.1}s", start.elapsed().as_secs_f64());
    let mut bad = Vec::new();
    if quiet < 48 {
        bad.push(format!("only {quiet}/50 seeds quiet"));
    }
    report("5b", bad);
}

// The range of (6,7,4) is empty above 2, so at weight 5/2 every system is
// destabilized by some subsystem.  The witnessing subsystems, however, all
// need a section space meeting a proper subspace in higher than generic
// dimension: a measure-zero coincidence that uniform integer sampling of
// the subsystem side essentially never hits.  The criterion demands the
// sampler find witnesses for 48 of 50 seeds; this fails and is expected to
// fail, documenting the limitation honestly.
#[test]
fn criterion_5c_rare_destabilizers() {
    let start = Instant::now();
    let mut found = 0;
    for seed in 0..50u64 {
        let sys = sample_system(6, 7, 4, seed).unwrap();
        if violation_search(&sys, &Rat::new(5, 2), 10_000, seed).found() {
            found += 1;
        }
    }
    println!("criterion 5c runtime: {:.1}s", start.elapsed().as_secs_f64());
    let mut bad = Vec::new();
    if found < 48 {
        bad.push(format!("only {found}/50 seeds found a violation"));
    }
    report("5c", bad);
}

fn render(know: &cohsys::AlphaKnowledge) -> String {
    format!(
        "{:?}|{:?}|{:?}|{:?}|{:?}",
        know.status, know.nonempty_hull, know.empty_below, know.empty_above, know.citations()
    )
}

#[test]
fn criterion_6_interval_reasoner_invariants() {
    let mut lattice = Vec::new();
    for n in 1..=8i64 {
        for a in 1..=5i64 {
            for t in 0..n {
                for k in 0..=((a + 1) * n) {
                    lattice.push((n, a * n - t, k));
                }
            }
        }
    }
    lattice.sort_unstable();
    lattice.dedup();

    let mut bad = Vec::new();
    let cl = Classifier::new();
    let mut sequential = Vec::with_capacity(lattice.len());
    for &(n, d, k) in &lattice {
        let know = cl.classify(&st(n, d, k));
        if let Some(h) = &know.nonempty_hull {
            if h.is_empty() {
                bad.push(format!("({n},{d},{k}): degenerate hull"));
            }
            let w = know.constraint_window();
            if h.lo < w.lo || h.hi > w.hi {
                bad.push(format!("({n},{d},{k}): hull leaves constraint window"));
            }
        }
        if know.empty_all && know.exists_some {
            bad.push(format!("({n},{d},{k}): empty and nonempty at once"));
        }
        sequential.push(render(&know));
    }
    // Memoized rerun is the shared result, not a recomputation.
    let again = cl.classify(&st(8, 39, 20));
    let first = cl.classify(&st(8, 39, 20));
    if !std::sync::Arc::ptr_eq(&again, &first) {
        bad.push("memo not shared".into());
    }

    // Same lattice, fresh classifier, many threads: identical rendering.
    let fresh = Classifier::new();
    let chunks: Vec<&[(i64, i64, i64)]> = lattice.chunks(lattice.len() / 8 + 1).collect();
    let parallel: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                let cl = &fresh;
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(n, d, k)| render(&cl.classify(&st(n, d, k))))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    if parallel != sequential {
        bad.push("parallel sweep differs from sequential".into());
    }

    report("6", bad);
}

#[test]
fn criterion_7_conjecture_scan_regression() {
    let cl = Classifier::new();
    let expected_flags = [
        (4, 5, 6),
        (5, 6, 8),
        (5, 11, 12),
        (6, 13, 15),
        (7, 15, 18),
        (8, 17, 21),
        (6, 19, 20),
        (7, 22, 24),
        (8, 25, 28),
    ];
    let mut flagged = Vec::new();
    let mut bad = Vec::new();
    for n in 2..=8i64 {
        for a in 2..=4i64 {
            for t in 1..n {
                let d = a * n - t;
                for k in n..=((a + 1) * n) {
                    let Ok(rep) = conjecture_scan(&cl, &st(n, d, k)) else {
                        continue;
                    };
                    if rep.verdict == Verdict::Contradicted {
                        bad.push(format!("({n},{d},{k}): contradicted"));
                    }
                    if !rep.flags.is_empty() {
                        flagged.push((n, d, k));
                    }
                    // Predictions only ever claim existence where the
                    // dimension count allows it.
                    if rep.predicted && beta(n, d, k) < 0 {
                        bad.push(format!("({n},{d},{k}): predicted despite negative dimension"));
                    }
                }
            }
        }
    }
    flagged.sort_unstable();
    let mut want = expected_flags.to_vec();
    want.sort_unstable();
    if flagged != want {
        bad.push(format!("flagged {flagged:?}, want {want:?}"));
    }
    report("7", bad);
}
