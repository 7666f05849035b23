//! Finite certificates: a subsystem count that proves large-weight existence,
//! and extension counts that prove emptiness for every weight.

use crate::formulas::c21;
use crate::types::{SystemType, TypeTriple};
use serde::Serialize;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("certificate unsupported for ({n}, {d}, {k}): {reason}")]
    Unsupported {
        n: i64,
        d: i64,
        k: i64,
        reason: &'static str,
    },
}

fn unsupported(st: &SystemType, reason: &'static str) -> CertifyError {
    CertifyError::Unsupported {
        n: st.n,
        d: st.d,
        k: st.k,
        reason,
    }
}

/// A numerical subsystem candidate `(n1, d1, k1)` together with the value of
/// its parameter-count inequality (`lhs < 0` rules the candidate out as a
/// generic destabilizer).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SubsystemTriple {
    pub n1: i64,
    pub d1: i64,
    pub k1: i64,
    pub lhs: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CertificateKind {
    /// Every numerical subsystem candidate is ruled out: nonempty for all
    /// sufficiently large weights.
    LargeAlphaExistence,
    /// An extension count is too small to avoid destabilization: empty for
    /// every weight.
    EmptyAllAlpha,
}

/// Extension-count record backing an emptiness certificate: the certificate
/// succeeds exactly when `dim < threshold`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ExtCount {
    pub dim: i64,
    pub threshold: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub success: bool,
    /// On a failed `LargeAlphaExistence` run: the candidates that survived.
    pub witnesses: Vec<SubsystemTriple>,
    /// Present for extension-count certificates.
    pub ext: Option<ExtCount>,
    pub citation: &'static str,
}

/// All numerical subsystem candidates of `st`, i.e. the triples `(n1, d1, k1)`
/// with `1 <= n1 <= n-1`, `n1 <= d1 <= min(a*n1, (a-1)*n1 + n - t)`,
/// `ceil(k*n1/n) <= k1 <= min(d1 + n1, k)`, each carrying its count value.
///
/// Requires `k >= n`: below that the slope bound `k1/n1 >= k/n` no longer
/// captures the relevant destabilizers.
pub fn enumerate_subtypes(st: &SystemType) -> Result<Vec<SubsystemTriple>, CertifyError> {
    if st.k < st.n {
        return Err(unsupported(st, "candidate enumeration requires k >= n"));
    }
    let (n, a, t, k) = (st.n, st.a, st.t, st.k);
    let mut out = Vec::new();
    for n1 in 1..n {
        let d1_hi = (a * n1).min((a - 1) * n1 + n - t);
        for d1 in n1..=d1_hi {
            // k1/n1 >= k/n as integers.
            let k1_lo = (k * n1 + n - 1).div_euclid(n);
            let k1_hi = (d1 + n1).min(k);
            for k1 in k1_lo..=k1_hi {
                out.push(SubsystemTriple {
                    n1,
                    d1,
                    k1,
                    lhs: count_value(st, n1, d1, k1),
                });
            }
        }
    }
    Ok(out)
}

/// Parameter count for the candidate `(n1, d1, k1)` inside `st`:
/// `n*((a+1)*n1 - d1) - t*n1 - n1^2 + k1*(d1 + n1 - (a+1)*n + t + k - k1)`.
///
/// Negative means the candidate subsystems miss the generic system.
pub fn count_value(st: &SystemType, n1: i64, d1: i64, k1: i64) -> i64 {
    let (n, a, t, k) = (st.n, st.a, st.t, st.k);
    n * ((a + 1) * n1 - d1) - t * n1 - n1 * n1 + k1 * (d1 + n1 - (a + 1) * n + t + k - k1)
}

/// Try to certify that the type is nonempty for all sufficiently large
/// weights by ruling out every candidate subsystem.
///
/// Requires `k > n`, and `k < a*n` when `t > 0`. For `t = 0` with `k > a*n`
/// candidates can be deferred to the rank-`(n1 - 1)` stratum when
/// `d1 < a*n1` and `n*(k1 - a) > k*(n1 - 1)`; such candidates are skipped.
/// Failure is not a proof of emptiness: the surviving candidates are returned
/// as witnesses and the question stays undecided.
pub fn certify_large_alpha(st: &SystemType) -> Result<Certificate, CertifyError> {
    if st.k <= st.n {
        return Err(unsupported(st, "requires k > n"));
    }
    if st.t > 0 && st.k >= st.a * st.n {
        return Err(unsupported(st, "requires k < a*n when t > 0"));
    }
    let reduce = st.t == 0 && st.k > st.a * st.n;
    let witnesses: Vec<SubsystemTriple> = enumerate_subtypes(st)?
        .into_iter()
        .filter(|tr| {
            if tr.lhs < 0 {
                return false;
            }
            !(reduce && tr.d1 < st.a * tr.n1 && st.n * (tr.k1 - st.a) > st.k * (tr.n1 - 1))
        })
        .collect();
    Ok(Certificate {
        kind: CertificateKind::LargeAlphaExistence,
        success: witnesses.is_empty(),
        witnesses,
        ext: None,
        citation: "large-alpha-certificate",
    })
}

/// Emptiness certificate for `k >= a*t`: the systems must contain the span of
/// the top-degree sections, and the extension space gluing the lower factors
/// onto that span is too small when `dim = (a-2)*(n-t) + a*(a*n-k) < t`.
pub fn certify_empty_ext_high(st: &SystemType) -> Result<Certificate, CertifyError> {
    let (n, a, t, k) = (st.n, st.a, st.t, st.k);
    if a < 2 {
        return Err(unsupported(st, "requires a >= 2"));
    }
    if t < 1 || t > n - 1 {
        return Err(unsupported(st, "requires 1 <= t <= n-1"));
    }
    if k < a * t {
        return Err(unsupported(st, "requires k >= a*t"));
    }
    let dim = c21(
        &TypeTriple::new(1, a - 1, a),
        &TypeTriple::new(n - t, a * (n - t), k - a * t),
    );
    debug_assert_eq!(dim, (a - 2) * (n - t) + a * (a * n - k));
    Ok(Certificate {
        kind: CertificateKind::EmptyAllAlpha,
        success: dim < t,
        witnesses: Vec::new(),
        ext: Some(ExtCount { dim, threshold: t }),
        citation: "ext-count-empty-high",
    })
}

/// Emptiness certificate for `k <= a*t`: the sections force a destabilizing
/// subsystem on the lower factors when the pairing dimension
/// `dim = -2*t + k*(a+1)` falls below `n - t`.
pub fn certify_empty_ext_low(st: &SystemType) -> Result<Certificate, CertifyError> {
    let (n, a, t, k) = (st.n, st.a, st.t, st.k);
    if a < 2 {
        return Err(unsupported(st, "requires a >= 2"));
    }
    if t < 1 || t > n - 1 {
        return Err(unsupported(st, "requires 1 <= t <= n-1"));
    }
    if k > a * t {
        return Err(unsupported(st, "requires k <= a*t"));
    }
    let dim = c21(
        &TypeTriple::new(t, (a - 1) * t, k),
        &TypeTriple::new(1, a, 0),
    );
    debug_assert_eq!(dim, -2 * t + k * (a + 1));
    Ok(Certificate {
        kind: CertificateKind::EmptyAllAlpha,
        success: dim < n - t,
        witnesses: Vec::new(),
        ext: Some(ExtCount {
            dim,
            threshold: n - t,
        }),
        citation: "ext-count-empty-low",
    })
}

/// Emptiness certificate for the paired family `a = 2`, `k = t >= 2`,
/// `n >= 2*t`: each section pairs with a lower factor and the count of
/// remaining factors forces a destabilizer at every weight. Never errors;
/// outside the family the certificate simply fails (not applicable).
pub fn certify_empty_special(st: &SystemType) -> Certificate {
    let applicable = st.a == 2 && st.k == st.t && st.t >= 2 && st.n >= 2 * st.t;
    Certificate {
        kind: CertificateKind::EmptyAllAlpha,
        success: applicable,
        witnesses: Vec::new(),
        ext: None,
        citation: "paired-extension-empty",
    }
}
