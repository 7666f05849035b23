//! Numerical types of section systems on the projective line and the integer
//! normal forms their invariants come from.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("rank must be >= 1, got {0}")]
    BadRank(i64),
    #[error("section count must be >= 0, got {0}")]
    BadSections(i64),
    #[error("lm normal form needs 0 < k < n, got n={n} k={k}")]
    LmOutOfRange { n: i64, k: i64 },
    #[error("critical value undefined for n={n} d={d} k={k}: {reason}")]
    NoCriticalValue { n: i64, d: i64, k: i64, reason: &'static str },
    #[error("threshold undefined for n={n} d={d} k={k}: {reason}")]
    NoThreshold { n: i64, d: i64, k: i64, reason: &'static str },
}

/// Write `d = a*n - t` with `0 <= t <= n-1`.
///
/// This is the normal form behind the generic splitting type
/// `O(a)^(n-t) + O(a-1)^t`: `a` is the top degree, `t` the number of
/// lower factors.
pub fn decompose(n: i64, d: i64) -> (i64, i64) {
    assert!(n >= 1, "rank must be >= 1");
    let r = d.rem_euclid(n);
    if r == 0 {
        (d / n, 0)
    } else {
        (d.div_euclid(n) + 1, n - r)
    }
}

/// Write `k*a - t = l*(n-k) + m` with `0 <= m < n-k`, for `0 < k < n`.
///
/// `(l, m)` governs the small-`k` existence windows: the generic upper wall is
/// `(d - m*n) / (n - k)` scaled by `1/k`, i.e. `d/(n-k) - m*n/(k*(n-k))`.
pub fn lm_decompose(n: i64, d: i64, k: i64) -> Result<(i64, i64), TypeError> {
    if !(0 < k && k < n) {
        return Err(TypeError::LmOutOfRange { n, k });
    }
    let (a, t) = decompose(n, d);
    let v = k * a - t;
    let q = n - k;
    Ok((v.div_euclid(q), v.rem_euclid(q)))
}

/// The numerical type `(n, d, k)` of a section system: a rank-`n` bundle of
/// degree `d` together with a `k`-dimensional space of sections, carried with
/// its derived invariants `a`, `t` and (when `0 < k < n`) `l`, `m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SystemType {
    pub n: i64,
    pub d: i64,
    pub k: i64,
    pub a: i64,
    pub t: i64,
    /// `(l, m)` normal form; present exactly when `0 < k < n`.
    pub lm: Option<(i64, i64)>,
}

impl SystemType {
    pub fn new(n: i64, d: i64, k: i64) -> Result<Self, TypeError> {
        if n < 1 {
            return Err(TypeError::BadRank(n));
        }
        if k < 0 {
            return Err(TypeError::BadSections(k));
        }
        let (a, t) = decompose(n, d);
        let lm = if 0 < k && k < n {
            Some(lm_decompose(n, d, k)?)
        } else {
            None
        };
        Ok(SystemType { n, d, k, a, t, lm })
    }

    /// Degree list of the generic bundle of this type, nonincreasing.
    pub fn generic_degrees(&self) -> Vec<i64> {
        let mut v = vec![self.a; (self.n - self.t) as usize];
        v.extend(std::iter::repeat_n(self.a - 1, self.t as usize));
        v
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.d, self.k)
    }
}

/// Bare numerical triple, used where two independent types meet (pairing
/// counts, subsystem bookkeeping). No subsystem constraints are implied.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TypeTriple {
    pub n: i64,
    pub d: i64,
    pub k: i64,
}

impl TypeTriple {
    pub fn new(n: i64, d: i64, k: i64) -> Self {
        TypeTriple { n, d, k }
    }
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.d, self.k)
    }
}
