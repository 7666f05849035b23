//! Stability lab: builds explicit section systems on split bundles and hunts
//! for destabilizing subsystems by random sheaf injections.  Fast ranks run
//! over a 61-bit prime field; anything reported is re-verified in exact
//! rational arithmetic.

pub mod linalg;
pub mod poly;
mod search;

pub use search::{
    subtype_catalog, violation_search, violation_search_exact, SearchReport, SubtypeReport,
    Violation, ViolationRange,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::Serialize;
use thiserror::Error;

use crate::types::decompose;
use linalg::{mod_p, rank_exact, rank_exact_q, rank_p};

pub const COEFF_BOUND: i64 = 10_000;
const MAX_REDRAWS: u32 = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("requested {need} sections but only {have} are available")]
    TooManySections { need: i64, have: usize },
    #[error("sample rejected: the sheaf map is not injective")]
    NotInjective,
    #[error("no full-rank draw after {tries} attempts")]
    DegenerateDraws { tries: u32 },
    #[error("no surjective presentation found after {tries} attempts")]
    SurjectionFailed { tries: u32 },
    #[error("unsupported request: {reason}")]
    Unsupported { reason: &'static str },
}

/// Direct sum of line bundles, degrees nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(degrees: Vec<i64>) -> Self {
        assert!(!degrees.is_empty(), "bundle must have positive rank");
        assert!(
            degrees.windows(2).all(|w| w[0] >= w[1]),
            "degrees must be nonincreasing"
        );
        SplitBundle { degrees }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn h0(&self) -> usize {
        self.degrees.iter().map(|&a| (a + 1).max(0) as usize).sum()
    }

    /// Degrees differ by at most one.
    pub fn is_balanced(&self) -> bool {
        self.degrees[0] <= self.degrees[self.degrees.len() - 1] + 1
    }

    /// Coordinate block of each factor inside the global section space:
    /// factor of degree a contributes the a+1 coefficients of a degree-a
    /// polynomial, negative-degree factors contribute nothing.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0usize;
        self.degrees
            .iter()
            .map(|&a| {
                let len = (a + 1).max(0) as usize;
                let r = start..start + len;
                start += len;
                r
            })
            .collect()
    }
}

/// The balanced bundle of rank n and degree d.
pub fn generic_bundle(n: i64, d: i64) -> SplitBundle {
    assert!(n >= 1);
    let (a, t) = decompose(n, d);
    let mut degrees = vec![a; (n - t) as usize];
    degrees.extend(std::iter::repeat_n(a - 1, t as usize));
    SplitBundle::new(degrees)
}

/// A bundle together with an explicit independent set of global sections,
/// stored as coefficient rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSystem {
    pub bundle: SplitBundle,
    pub basis: Vec<Vec<i64>>,
}

impl SectionSystem {
    pub fn n(&self) -> i64 {
        self.bundle.rank() as i64
    }

    pub fn d(&self) -> i64 {
        self.bundle.degree()
    }

    pub fn k(&self) -> i64 {
        self.basis.len() as i64
    }
}

/// One sampled sheaf map from a split bundle with the given subdegrees:
/// entry (i, j) is a polynomial of degree at most a_i - b_j, stored as
/// coefficients (empty when the degree bound is negative, forcing zero).
#[derive(Clone, Debug, Serialize)]
pub struct HomSample {
    pub sub_degrees: Vec<i64>,
    pub polys: Vec<Vec<Vec<i64>>>,
    pub injective: bool,
}

fn eval_poly(coeffs: &[i64], x: i64) -> i128 {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc * x as i128 + c as i128;
    }
    acc
}

fn hom_injective(bundle: &SplitBundle, sub_degrees: &[i64], polys: &[Vec<Vec<i64>>]) -> bool {
    let n = bundle.rank();
    let n1 = sub_degrees.len();
    // Fast screen: full column rank at a few points implies injectivity.
    for x in 1..=3i64 {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n1)
                    .map(|j| ((eval_poly(&polys[i][j], x)).rem_euclid(linalg::P as i128)) as u64)
                    .collect()
            })
            .collect();
        if rank_p(rows) == n1 {
            return true;
        }
    }
    // Exact decision: every n1-minor has degree bounded by the sum of the
    // column degree caps, so full rank somewhere among deg+1 points settles it.
    let bound: i64 = sub_degrees
        .iter()
        .map(|&b| (bundle.degrees[0] - b).max(0))
        .sum();
    for x in 0..=bound {
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n1)
                    .map(|j| BigRational::from(BigInt::from(eval_poly(&polys[i][j], x))))
                    .collect()
            })
            .collect();
        if rank_exact_q(rows) == n1 {
            return true;
        }
    }
    false
}

/// Draws coefficients for one sheaf map and decides its injectivity.
pub fn draw_hom(bundle: &SplitBundle, sub_degrees: &[i64], rng: &mut ChaCha8Rng) -> HomSample {
    let polys: Vec<Vec<Vec<i64>>> = bundle
        .degrees
        .iter()
        .map(|&a| {
            sub_degrees
                .iter()
                .map(|&b| {
                    if a < b {
                        Vec::new()
                    } else {
                        (0..=(a - b))
                            .map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
                            .collect()
                    }
                })
                .collect()
        })
        .collect();
    let injective = hom_injective(bundle, sub_degrees, &polys);
    HomSample {
        sub_degrees: sub_degrees.to_vec(),
        polys,
        injective,
    }
}

/// Global sections of the image: x^s times column j, for 0 <= s <= b_j,
/// written in the coordinate blocks of the ambient bundle.
pub fn image_sections(bundle: &SplitBundle, hom: &HomSample) -> Vec<Vec<i64>> {
    let blocks = bundle.blocks();
    let width = bundle.h0();
    let mut rows = Vec::new();
    for (j, &b) in hom.sub_degrees.iter().enumerate() {
        if b < 0 {
            continue;
        }
        for s in 0..=(b as usize) {
            let mut row = vec![0i64; width];
            for (i, block) in blocks.iter().enumerate() {
                for (c, &coeff) in hom.polys[i][j].iter().enumerate() {
                    row[block.start + c + s] = coeff;
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// dim of the intersection of span(sys.basis) with the image sections,
/// in exact arithmetic: dim V + dim U - rank of the stacked matrix.
pub fn intersection_dim(sys: &SectionSystem, hom: &HomSample) -> Result<usize, LabError> {
    if !hom.injective {
        return Err(LabError::NotInjective);
    }
    let image = image_sections(&sys.bundle, hom);
    let u = image.len();
    let k = sys.basis.len();
    let mut stacked = sys.basis.clone();
    stacked.extend(image);
    let rank = rank_exact(&stacked);
    let dim = k + u - rank;
    // Every rank is at most the ambient section count, which pins the
    // intersection from below by k - (h0(E) - h0(E1)).
    assert!(dim as i64 >= k as i64 - (sys.bundle.h0() as i64 - u as i64));
    Ok(dim)
}

fn draw_basis(rng: &mut ChaCha8Rng, k: usize, width: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|_| {
            (0..width)
                .map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
                .collect()
        })
        .collect()
}

fn has_full_row_rank(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    let screened: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| mod_p(x)).collect())
        .collect();
    // The modular rank never exceeds the exact one, so equality with k is
    // already conclusive; only a drop needs the exact tie-break.
    rank_p(screened) == k || rank_exact(rows) == k
}

/// Pseudo-random k-dimensional section space on the balanced bundle of
/// rank n and degree d.  Deterministic in the seed.
pub fn sample_system(n: i64, d: i64, k: i64, seed: u64) -> Result<SectionSystem, LabError> {
    assert!(n >= 1 && k >= 0);
    let bundle = generic_bundle(n, d);
    let width = bundle.h0();
    if k as usize > width {
        return Err(LabError::TooManySections { need: k, have: width });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let basis = draw_basis(&mut rng, k as usize, width);
        if has_full_row_rank(&basis) {
            return Ok(SectionSystem { bundle, basis });
        }
    }
    Err(LabError::DegenerateDraws { tries: MAX_REDRAWS })
}

fn surjective_everywhere(bundle: &SplitBundle, cols: &[Vec<Vec<i64>>]) -> bool {
    use poly::{interpolate, PolyQ, Q};
    let n = bundle.rank();
    let k = cols.len();
    // At infinity: the top-coefficient matrix must have full row rank.
    let leading: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..k).map(|j| *cols[j][i].last().unwrap()).collect())
        .collect();
    if rank_exact(&leading) < n {
        return false;
    }
    // On the affine line: the maximal minors may share no root, i.e. their
    // gcd must be a nonzero constant.  Each minor is recovered from point
    // evaluations since its degree is at most the total degree.
    let deg_bound = bundle.degree().max(0);
    let evals: Vec<Vec<Vec<Q>>> = (0..=deg_bound)
        .map(|x| {
            (0..n)
                .map(|i| {
                    (0..k)
                        .map(|j| BigRational::from(BigInt::from(eval_poly(&cols[j][i], x))))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut g = PolyQ::zero();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let points: Vec<(Q, Q)> = (0..=deg_bound)
            .map(|x| {
                let m: Vec<Vec<Q>> = (0..n)
                    .map(|i| subset.iter().map(|&j| evals[x as usize][i][j].clone()).collect())
                    .collect();
                (poly::q_int(x), linalg::det_q(m))
            })
            .collect();
        let minor = interpolate(&points);
        g = PolyQ::gcd(&g, &minor);
        if !g.is_zero() && g.degree() == Some(0) {
            return true;
        }
        // Next n-subset of the k columns, lexicographic.
        let mut i = n;
        loop {
            if i == 0 {
                return !g.is_zero() && g.degree() == Some(0);
            }
            i -= 1;
            if subset[i] < k - (n - i) {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Presents the balanced bundle of rank n, degree d as a quotient of the
/// k-fold trivial bundle and takes the sections coming from the constants.
/// Requires k > n and d > 0; fails when no draw gives a surjection with
/// k independent image sections.
pub fn quotient_construct(n: i64, d: i64, k: i64, seed: u64) -> Result<SectionSystem, LabError> {
    if d <= 0 {
        return Err(LabError::Unsupported { reason: "degree must be positive" });
    }
    if k <= n {
        return Err(LabError::Unsupported { reason: "needs more sections than the rank" });
    }
    let bundle = generic_bundle(n, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        // Column j collects the polynomial coordinates of one generator.
        let cols: Vec<Vec<Vec<i64>>> = (0..k)
            .map(|_| {
                bundle
                    .degrees
                    .iter()
                    .map(|&a| {
                        (0..=a)
                            .map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if !surjective_everywhere(&bundle, &cols) {
            continue;
        }
        let blocks = bundle.blocks();
        let width = bundle.h0();
        let basis: Vec<Vec<i64>> = cols
            .iter()
            .map(|col| {
                let mut row = vec![0i64; width];
                for (i, block) in blocks.iter().enumerate() {
                    for (c, &coeff) in col[i].iter().enumerate() {
                        row[block.start + c] = coeff;
                    }
                }
                row
            })
            .collect();
        if has_full_row_rank(&basis) {
            return Ok(SectionSystem { bundle, basis });
        }
    }
    Err(LabError::SurjectionFailed { tries: MAX_REDRAWS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_bundles() {
        assert_eq!(generic_bundle(6, 7).degrees(), &[2, 1, 1, 1, 1, 1]);
        assert_eq!(generic_bundle(2, 3).degrees(), &[2, 1]);
        assert_eq!(generic_bundle(3, 6).degrees(), &[2, 2, 2]);
        assert_eq!(generic_bundle(2, 3).h0(), 5);
        assert!(generic_bundle(6, 7).is_balanced());
        assert!(!SplitBundle::new(vec![3, 1]).is_balanced());
    }

    #[test]
    fn sampling_shapes() {
        let sys = sample_system(2, 3, 3, 7).unwrap();
        assert_eq!(sys.basis.len(), 3);
        assert!(sys.basis.iter().all(|r| r.len() == 5));
        assert_eq!(rank_exact(&sys.basis), 3);

        let full = sample_system(2, 3, 5, 7).unwrap();
        assert_eq!(rank_exact(&full.basis), 5);

        assert_eq!(
            sample_system(2, 3, 6, 7),
            Err(LabError::TooManySections { need: 6, have: 5 })
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_system(3, 7, 4, 99).unwrap();
        let b = sample_system(3, 7, 4, 99).unwrap();
        assert_eq!(a.basis, b.basis);
        let c = sample_system(3, 7, 4, 100).unwrap();
        assert_ne!(a.basis, c.basis);
    }

    #[test]
    fn intersection_against_unique_subline() {
        // The degree-2 subline bundle of O(2)+O(1) is unique up to scale:
        // constant into the first factor, zero into the second.  Its image
        // meets a generic 3-dimensional section space in dimension exactly
        // 3 + 3 - 5 = 1.
        let sys = sample_system(2, 3, 3, 1).unwrap();
        let hom = HomSample {
            sub_degrees: vec![2],
            polys: vec![vec![vec![1]], vec![vec![]]],
            injective: true,
        };
        assert_eq!(intersection_dim(&sys, &hom), Ok(1));

        let everything = sample_system(2, 3, 5, 1).unwrap();
        assert_eq!(intersection_dim(&everything, &hom), Ok(3));

        let zero = HomSample {
            sub_degrees: vec![2],
            polys: vec![vec![vec![]], vec![vec![]]],
            injective: false,
        };
        assert_eq!(intersection_dim(&sys, &zero), Err(LabError::NotInjective));
    }

    #[test]
    fn drawn_maps_know_their_injectivity() {
        let bundle = generic_bundle(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let hom = draw_hom(&bundle, &[1], &mut rng);
        assert!(hom.injective);
        assert_eq!(hom.polys[0][0].len(), 2);
        assert_eq!(hom.polys[1][0].len(), 1);
    }

    #[test]
    fn quotient_presentations() {
        let sys = quotient_construct(2, 3, 3, 11).unwrap();
        assert_eq!(sys.bundle.degrees(), &[2, 1]);
        assert_eq!(sys.k(), 3);
        assert_eq!(rank_exact(&sys.basis), 3);

        let line = quotient_construct(1, 2, 3, 11).unwrap();
        assert_eq!(line.bundle.degrees(), &[2]);
        assert_eq!(line.k(), 3);

        assert_eq!(
            quotient_construct(2, 3, 6, 11),
            Err(LabError::SurjectionFailed { tries: 32 })
        );
        assert!(matches!(
            quotient_construct(2, 3, 2, 11),
            Err(LabError::Unsupported { .. })
        ));
        assert!(matches!(
            quotient_construct(2, -1, 3, 11),
            Err(LabError::Unsupported { .. })
        ));
    }
}
