//! The rule table: every certified statement about stability ranges, keyed by
//! the numerical invariants `(n, d, k, a, t, l, m)`. Rules only add evidence;
//! ordering never changes the merged result.

use super::{Classifier, EmptyRay, Evidence, EvidenceKind};
use crate::certify;
use crate::formulas::{alpha_c, beta};
use crate::rat::{ExtRat, OpenInterval, Rat};
use crate::types::SystemType;
use num_integer::gcd;

use EvidenceKind::*;

fn ev(out: &mut Vec<Evidence>, kind: EvidenceKind, citation: &'static str) {
    out.push(Evidence { kind, citation });
}

fn interval(lo: Rat, hi: impl Into<ExtRat>) -> EvidenceKind {
    NonemptyOn(OpenInterval::new(lo, hi))
}

/// Check `(a-1)*t <= a*(a*n - k) + (a-2)*n`: the extension space at the upper
/// wall is big enough for the descent construction.
fn ext_room_high(n: i64, a: i64, t: i64, k: i64) -> bool {
    (a - 1) * t <= a * (a * n - k) + (a - 2) * n
}

pub(super) fn gather(cl: &Classifier, st: &SystemType) -> Vec<Evidence> {
    let &SystemType { n, d, k, a, t, lm } = st;
    let mut out = Vec::new();
    let o = &mut out;

    // Sectionless base cases: a line bundle is vacuously stable; a split
    // bundle of higher rank never is.
    if k == 0 {
        if n == 1 {
            ev(o, interval(Rat::zero(), ExtRat::Inf), "rank-one-base");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "zero-sections-empty");
        }
        return out;
    }

    // Rank one with sections: need positive degree and no more sections than
    // the bundle carries; then every weight works.
    if n == 1 {
        if d <= 0 {
            ev(o, EmptyOn(EmptyRay::All), "positive-degree");
        } else if k > d + 1 {
            ev(o, EmptyOn(EmptyRay::All), "expected-dimension");
        } else {
            ev(o, interval(Rat::zero(), ExtRat::Inf), "rank-one-base");
        }
        return out;
    }

    // ---- global necessities ----

    if d <= 0 {
        ev(o, EmptyOn(EmptyRay::All), "positive-degree");
    }
    if beta(n, d, k) < 0 {
        ev(o, EmptyOn(EmptyRay::All), "expected-dimension");
    }
    if t >= 1 {
        if k >= a * n {
            ev(o, EmptyOn(EmptyRay::All), "critical-value-bound");
        } else {
            let ac = alpha_c(st).expect("t >= 1, 1 <= k < a*n");
            ev(o, EmptyOn(EmptyRay::Below(ac)), "critical-value-bound");
        }
    }
    if k < n {
        // Upper wall from section degrees: d/(n-k) - m*n/(k*(n-k)).
        let (_, m) = lm.expect("0 < k < n");
        let w = Rat::new(d * k - m * n, k * (n - k));
        ev(o, EmptyOn(EmptyRay::FromIncl(w)), "section-degree-cap");
    }

    // ---- small k: full classifications ----

    if k < n && t == 0 && beta(n, d, k) >= 0 {
        ev(o, NonemptyAbove(Rat::zero()), "multiple-degree-base");
    }

    if k == 1 {
        let (l, m) = lm.expect("k = 1 < n");
        if l >= 1 {
            let hi = Rat::new(d - m * n, n - 1);
            ev(o, interval(Rat::int(t), hi), "k1-classification");
            ev(o, EmptyOn(EmptyRay::Below(Rat::int(t))), "k1-classification");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k1-classification");
        }
    }

    if k == 2 && n >= 3 {
        let (l, m) = lm.expect("k = 2 < n");
        if l >= 1 && 2 * d >= n * (n - 2) + 3 && (n, d) != (4, 6) {
            let lo = Rat::new(t, 2);
            let hi = Rat::new(2 * d - m * n, 2 * (n - 2));
            ev(o, interval(lo.clone(), hi), "k2-classification");
            ev(o, EmptyOn(EmptyRay::Below(lo)), "k2-classification");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k2-classification");
        }
    }

    if k == 3 && n >= 4 {
        let (l, m) = lm.expect("k = 3 < n");
        if l >= 1 && 3 * d >= n * (n - 3) + 8 && (n, d) != (6, 9) {
            let (lo, hi) = match (n, d) {
                (4, 7) => (Rat::new(3, 5), Rat::int(7)),
                (5, 9) => (Rat::new(3, 4), Rat::new(11, 3)),
                (6, 11) => (Rat::int(1), Rat::new(7, 3)),
                (7, 13) => (Rat::new(3, 2), Rat::new(8, 3)),
                _ => (Rat::new(t, 3), Rat::new(3 * d - m * n, 3 * (n - 3))),
            };
            ev(o, interval(lo.clone(), hi.clone()), "k3-classification");
            ev(o, EmptyOn(EmptyRay::Below(lo)), "k3-classification");
            ev(o, EmptyOn(EmptyRay::FromIncl(hi)), "k3-classification");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k3-classification");
        }
    }

    // ---- low rank: full classifications ----

    if n == 2 && k == 2 {
        if d >= 3 {
            let lo = Rat::new(t, 2);
            ev(o, interval(lo.clone(), ExtRat::Inf), "low-rank-classification");
            ev(o, EmptyOn(EmptyRay::Below(lo)), "low-rank-classification");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "low-rank-classification");
        }
    }
    if n == 2 && k == 3 {
        if d < 2 {
            ev(o, EmptyOn(EmptyRay::All), "low-rank-classification");
        } else {
            let lo = if d == 3 { Rat::int(1) } else { Rat::new(t, 3) };
            ev(o, interval(lo.clone(), ExtRat::Inf), "low-rank-classification");
            ev(o, EmptyOn(EmptyRay::Below(lo)), "low-rank-classification");
        }
    }
    if n == 3 && k == 3 {
        if d < 4 {
            ev(o, EmptyOn(EmptyRay::All), "low-rank-classification");
        } else {
            let lo = if d == 5 { Rat::new(2, 3) } else { Rat::new(t, 3) };
            ev(o, interval(lo.clone(), ExtRat::Inf), "low-rank-classification");
            ev(o, EmptyOn(EmptyRay::Below(lo)), "low-rank-classification");
        }
    }

    // ---- the three section counts around the rank ----

    if k == n - 1 {
        if d >= n {
            ev(o, ExistsSome, "k-eq-n-minus-1");
            ev(o, NonemptyBelow(Rat::int(d)), "k-eq-n-minus-1");
            ev(o, EmptyOn(EmptyRay::FromIncl(Rat::int(d))), "k-eq-n-minus-1");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k-eq-n-minus-1");
        }
    }
    if k == n {
        if d > n {
            ev(o, ExistsSome, "k-eq-n");
            ev(o, NonemptyLargeAlpha, "k-eq-n");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k-eq-n");
        }
    }
    if k == n + 1 {
        if d >= n {
            ev(o, interval(Rat::int(t), ExtRat::Inf), "k-eq-n-plus-1");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "k-eq-n-plus-1");
        }
    }

    // ---- many sections on multiple degree: sharp ----

    if t == 0 && k > n {
        if beta(n, d, k) >= 0 {
            ev(o, interval(Rat::zero(), ExtRat::Inf), "multiple-degree-full-interval");
        } else {
            ev(o, EmptyOn(EmptyRay::All), "multiple-degree-full-interval");
        }
    }

    // ---- large-weight existence ----

    if t >= 1 && k >= n && k < a * n && (k <= a * n - t || a >= t) {
        ev(o, NonemptyLargeAlpha, "large-alpha-existence");
    }

    // ---- extension-count emptiness certificates ----

    if a >= 2 && t >= 1 && k >= a * t {
        let cert = certify::certify_empty_ext_high(st).expect("preconditions checked");
        if cert.success {
            ev(o, EmptyOn(EmptyRay::All), cert.citation);
        }
    }
    if a >= 2 && t >= 1 && k <= a * t {
        let cert = certify::certify_empty_ext_low(st).expect("preconditions checked");
        if cert.success {
            ev(o, EmptyOn(EmptyRay::All), cert.citation);
        }
    }
    {
        let cert = certify::certify_empty_special(st);
        if cert.success {
            ev(o, EmptyOn(EmptyRay::All), cert.citation);
        }
    }

    // ---- descent through the upper wall: span of top-degree sections ----

    if a >= 2 && t >= 1 && a * t <= k && k < a * n && ext_room_high(n, a, t, k) {
        let ac = Rat::new(n - t, a * n - k);
        if cl.certified_at(n - t, a * (n - t), k - a * t, &ac) {
            ev(o, NonemptyAbove(ac.clone()), "wall-descent-high");
            if k >= n && (k <= a * n - t || a >= t) {
                ev(o, interval(ac, ExtRat::Inf), "full-interval-above-critical");
            }
        }
    }

    // ---- descent through the lower wall: sections on the lower factors ----

    if a >= 2 && t >= 1 && k <= a * t && t <= (a + 1) * k - n {
        let ac = Rat::new(t, k);
        if cl.certified_at(t, (a - 1) * t, k, &ac) {
            ev(o, NonemptyAbove(ac.clone()), "wall-descent-low");
            if k >= n && k * (a * t - k) >= t * t - 1 {
                ev(o, interval(ac, ExtRat::Inf), "full-interval-above-critical-low");
            }
        }
    }

    // ---- sharp bands for many sections ----

    if a >= 2 && t >= 1 && k >= n && k < a * n {
        let band_lo = (a - 1) * t + n;
        let fires = (band_lo <= k && k <= a * n - t)
            || (band_lo <= k && a >= t && ext_room_high(n, a, t, k));
        if fires {
            let ac = alpha_c(st).expect("t >= 1, k < a*n");
            ev(o, interval(ac, ExtRat::Inf), "full-interval-above-critical");
        }
        if k == a * t + 1 && a >= (n - t - 1).max(t) && ext_room_high(n, a, t, k) {
            let ac = alpha_c(st).expect("t >= 1, k < a*n");
            ev(o, interval(ac, ExtRat::Inf), "k-eq-at-plus-1");
        }
        if k < a * t && k * (a * t - k) >= t * t - 1 {
            let ac = alpha_c(st).expect("t >= 1, k < a*n");
            ev(o, interval(ac, ExtRat::Inf), "full-interval-above-critical-low");
        }
    }

    // ---- t = 1 refinement ----

    if t == 1 && a >= 2 && k < a * n {
        let ac = alpha_c(st).expect("t = 1, k >= 1, k < a*n");
        #[allow(clippy::int_plus_one)] // bounds kept in their stated form
        let fires = (k <= a && (a + 1) * k >= n + 1)
            || (k >= n + a - 1)
            || (a < k && k < n + a - 1 && cl.certified_at(n - 1, a * (n - 1), k - a, &ac));
        if fires {
            ev(o, NonemptyAbove(ac.clone()), "t-eq-1-refinement");
            if k >= n {
                ev(o, interval(ac, ExtRat::Inf), "t-eq-1-refinement");
            }
        }
    }

    // ---- t = n-1 refinement ----

    if t == n - 1 && a >= n - 1 && a * (n - 1) < k && k < a * n {
        let ac = Rat::new(1, a * n - k);
        ev(o, interval(ac.clone(), ExtRat::Inf), "t-eq-n-minus-1-refinement");
    }

    // ---- divisor family: k = a*n - gcd(n, k) ----

    if t == 1 && a >= 2 {
        let h = gcd(n, k);
        if k == a * n - h {
            ev(o, interval(Rat::new(n - 1, h), ExtRat::Inf), "gcd-divisor-exact");
        }
    }

    // ---- small-weight existence for few sections ----

    if k >= 2
        && t >= 1
        && (a + 1) * k >= n + t
        && ((t == 1 && a >= k) || (t == k - 1 && a >= 2) || (t == k && a >= 3))
    {
        ev(o, NonemptyAbove(Rat::new(t, k)), "small-alpha-existence");
    }

    // ---- the one finite exceptional range ----

    if (n, d, k) == (6, 7, 4) {
        let lo = Rat::new(5, 4);
        let hi = Rat::int(2);
        ev(o, interval(lo.clone(), hi.clone()), "exceptional-6-7-4");
        ev(o, EmptyOn(EmptyRay::Below(lo)), "exceptional-6-7-4");
        ev(o, EmptyOn(EmptyRay::FromIncl(hi)), "exceptional-6-7-4");
    }

    // ---- advisory expected window for k < n ----

    if k < n {
        let (l, _) = lm.expect("0 < k < n");
        ev(
            o,
            Annotation(OpenInterval::new(Rat::new(t, k), Rat::new(l * n + t, k))),
            "expected-interval-annotation",
        );
    }

    out
}
