//! Destabilizer search: enumerate slope-feasible subbundle shapes, then for
//! each shape sample sheaf injections and measure how many ambient sections
//! land inside the image.

use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{self, mod_p, rank_exact};
use super::{draw_hom, image_sections, HomSample, SectionSystem, SplitBundle};
use crate::formulas::mu_alpha;
use crate::rat::Rat;

const MAX_REDRAWS: u32 = 32;

/// The α>0 range on which a reported subsystem beats the ambient slope.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "kebab-case")]
pub enum ViolationRange {
    All,
    UpTo(Rat),
    From(Rat),
}

impl std::fmt::Display for ViolationRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ViolationRange::All => write!(f, "(0, inf)"),
            ViolationRange::UpTo(c) => write!(f, "(0, {c}]"),
            ViolationRange::From(c) => write!(f, "[{c}, inf)"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub n1: i64,
    pub d1: i64,
    pub k1: i64,
    pub range: ViolationRange,
    pub sub_slope: Rat,
    pub sys_slope: Rat,
    pub witness: HomSample,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubtypeReport {
    pub degrees: Vec<i64>,
    pub d1: i64,
    pub sections: usize,
    pub threshold_k1: i64,
    pub samples: u64,
    pub degenerate: u64,
    pub exact_checks: u64,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub degrees: Vec<i64>,
    pub n: i64,
    pub d: i64,
    pub k: i64,
    pub alpha: Rat,
    pub budget: u64,
    pub seed: u64,
    pub exact_only: bool,
    /// Reported subsheaves are not saturated; saturating one only raises its
    /// degree and slope, so every reported violation persists.
    pub saturation_note: &'static str,
    pub subtypes: Vec<SubtypeReport>,
    pub total_violations: u64,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        self.total_violations > 0
    }

    pub fn all_violations(&self) -> impl Iterator<Item = &Violation> {
        self.subtypes.iter().flat_map(|s| s.violations.iter())
    }
}

fn h0_of(degrees: &[i64]) -> i64 {
    degrees.iter().map(|&b| (b + 1).max(0)).sum()
}

/// Nonincreasing candidate degree lists for proper subbundles that could
/// destabilize at the given α: entries within the ambient degree profile
/// (no more entries ≥ c than the ambient bundle has, for every c) and the
/// optimistic slope bound μ_α(n1, Σb, min(k, h0(b))) ≥ μ_α(sys) satisfied.
pub fn subtype_catalog(bundle: &SplitBundle, k: i64, alpha: &Rat) -> Vec<Vec<i64>> {
    assert!(alpha.is_positive(), "alpha must be positive");
    let n = bundle.rank();
    let amax = bundle.degrees()[0];
    if n <= 1 || amax < 0 {
        return Vec::new();
    }
    let d = bundle.degree();
    let sys_slope = mu_alpha(n as i64, d, k, alpha);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for n1 in 1..n {
        descend(amax, n1, &mut cur, &mut |list: &[i64]| {
            for c in 1..=amax {
                let have = bundle.degrees().iter().filter(|&&a| a >= c).count();
                if list.iter().filter(|&&b| b >= c).count() > have {
                    return;
                }
            }
            let d1: i64 = list.iter().sum();
            let kcap = k.min(h0_of(list));
            if mu_alpha(n1 as i64, d1, kcap, alpha) >= sys_slope {
                out.push(list.to_vec());
            }
        });
    }
    out
}

fn descend(hi: i64, len: usize, cur: &mut Vec<i64>, sink: &mut impl FnMut(&[i64])) {
    if cur.len() == len {
        sink(cur);
        return;
    }
    let top = cur.last().copied().unwrap_or(hi);
    for b in (0..=top).rev() {
        cur.push(b);
        descend(hi, len, cur, sink);
        cur.pop();
    }
}

/// Least k1 with μ_α(n1, d1, k1) ≥ μ_α(n, d, k).
fn threshold_k1(n: i64, d: i64, k: i64, n1: i64, d1: i64, alpha: &Rat) -> i64 {
    let q = (Rat::int(n1 * d - n * d1) / (alpha * &Rat::int(n))) + Rat::new(n1 * k, n);
    q.as_big().ceil().to_integer().to_i64().expect("threshold fits i64")
}

fn violation_range(n: i64, d: i64, k: i64, n1: i64, d1: i64, k1: i64) -> ViolationRange {
    // μ_α(sub) ≥ μ_α(sys) iff B + αA ≥ 0 with the slopes cleared of
    // denominators.
    let a = n * k1 - n1 * k;
    let b = n * d1 - n1 * d;
    if a == 0 {
        debug_assert!(b >= 0);
        ViolationRange::All
    } else if a > 0 {
        if b >= 0 {
            ViolationRange::All
        } else {
            ViolationRange::From(Rat::new(-b, a))
        }
    } else {
        ViolationRange::UpTo(Rat::new(-b, a))
    }
}

/// Row-echelon accumulator over the prime field, pivots normalized to 1.
struct EchelonP {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonP {
    fn new() -> Self {
        EchelonP { rows: Vec::new(), pivots: Vec::new() }
    }

    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p] != 0 {
                let factor = row[p];
                for (x, y) in row.iter_mut().zip(r) {
                    *x = linalg::sub_p(*x, linalg::mul_p(factor, *y));
                }
            }
        }
        let Some(p) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = linalg::inv_p(row[p]);
        for x in row.iter_mut() {
            *x = linalg::mul_p(*x, inv);
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn fnv1a(data: &[i64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &v in data {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn exact_intersection(sys: &SectionSystem, hom: &HomSample) -> i64 {
    let image = image_sections(&sys.bundle, hom);
    let u = image.len() as i64;
    let k = sys.k();
    let mut stacked = sys.basis.clone();
    stacked.extend(image);
    let dim = k + u - rank_exact(&stacked) as i64;
    assert!(dim >= k - (sys.bundle.h0() as i64 - u));
    dim
}

/// Samples up to `budget` sheaf maps per catalog subtype and reports every
/// slope violation, each verified in exact arithmetic.  A subtype stops at
/// its first verified violation.  Deterministic in (inputs, seed): each
/// subtype draws from its own seed, independent of scheduling.
pub fn violation_search(sys: &SectionSystem, alpha: &Rat, budget: u64, seed: u64) -> SearchReport {
    search_impl(sys, alpha, budget, seed, false)
}

/// Same search with the modular screen disabled: every sample is measured in
/// exact rational arithmetic.
pub fn violation_search_exact(
    sys: &SectionSystem,
    alpha: &Rat,
    budget: u64,
    seed: u64,
) -> SearchReport {
    search_impl(sys, alpha, budget, seed, true)
}

fn search_impl(
    sys: &SectionSystem,
    alpha: &Rat,
    budget: u64,
    seed: u64,
    exact_only: bool,
) -> SearchReport {
    let n = sys.n();
    let d = sys.d();
    let k = sys.k();
    let width = sys.bundle.h0();
    let mut base = EchelonP::new();
    for row in &sys.basis {
        base.insert(row.iter().map(|&x| mod_p(x)).collect());
    }

    let mut subtypes = Vec::new();
    let mut total = 0u64;
    for degrees in subtype_catalog(&sys.bundle, k, alpha) {
        let n1 = degrees.len() as i64;
        let d1: i64 = degrees.iter().sum();
        let u = h0_of(&degrees);
        let need = threshold_k1(n, d, k, n1, d1, alpha);
        debug_assert!(need <= k.min(u));
        let mut report = SubtypeReport {
            d1,
            sections: u as usize,
            threshold_k1: need,
            samples: 0,
            degenerate: 0,
            exact_checks: 0,
            violations: Vec::new(),
            degrees: degrees.clone(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&degrees));
        let mut near_miss: Option<HomSample> = None;
        'samples: for _ in 0..budget {
            let mut hom = draw_hom(&sys.bundle, &degrees, &mut rng);
            let mut redraws = 0;
            while !hom.injective {
                report.degenerate += 1;
                redraws += 1;
                if redraws >= MAX_REDRAWS {
                    break 'samples;
                }
                hom = draw_hom(&sys.bundle, &degrees, &mut rng);
            }
            report.samples += 1;

            let k1 = if exact_only {
                report.exact_checks += 1;
                exact_intersection(sys, &hom)
            } else {
                let image = image_sections(&sys.bundle, &hom);
                let mut ech = EchelonP { rows: base.rows.clone(), pivots: base.pivots.clone() };
                for row in &image {
                    debug_assert_eq!(row.len(), width);
                    ech.insert(row.iter().map(|&x| mod_p(x)).collect());
                }
                // The modular rank only ever drops below the true rank, so
                // this screen overestimates the intersection.
                let screened = k + image.len() as i64 - ech.rank() as i64;
                if screened < need {
                    if screened == need - 1 && near_miss.is_none() {
                        near_miss = Some(hom);
                    }
                    continue;
                }
                report.exact_checks += 1;
                exact_intersection(sys, &hom)
            };

            if k1 >= need {
                let range = violation_range(n, d, k, n1, d1, k1);
                let sub_slope = mu_alpha(n1, d1, k1, alpha);
                let sys_slope = mu_alpha(n, d, k, alpha);
                debug_assert!(sub_slope >= sys_slope);
                report.violations.push(Violation {
                    n1,
                    d1,
                    k1,
                    range,
                    sub_slope,
                    sys_slope,
                    witness: hom,
                });
                total += 1;
                break 'samples;
            }
        }
        // A clean subtype whose screen came within one of the threshold gets
        // one exact confirmation, so "no violation" never rests on the fast
        // path alone.
        if report.violations.is_empty() {
            if let Some(hom) = near_miss {
                report.exact_checks += 1;
                let k1 = exact_intersection(sys, &hom);
                assert!(k1 < need);
            }
        }
        subtypes.push(report);
    }

    SearchReport {
        degrees: sys.bundle.degrees().to_vec(),
        n,
        d,
        k,
        alpha: alpha.clone(),
        budget,
        seed,
        exact_only,
        saturation_note:
            "subsheaves are reported unsaturated; saturation only raises degree and slope",
        subtypes,
        total_violations: total,
    }
}
