//! Closed-form invariants: expected dimension, critical values, section
//! counts, and the bilinear pairing count between two types.

use crate::rat::Rat;
use crate::types::{SystemType, TypeError, TypeTriple};

/// Expected dimension of the moduli space of type `(n, d, k)`:
/// `beta = k*(d + n - k) - n^2 + 1`.
///
/// Nonemptiness forces `beta >= 0`; when nonempty the space is smooth and
/// irreducible of this dimension.
pub fn beta(n: i64, d: i64, k: i64) -> i64 {
    k * (d + n - k) - n * n + 1
}

/// Slope `mu_alpha = (d + alpha*k) / n` at the weight `alpha`.
pub fn mu_alpha(n: i64, d: i64, k: i64, alpha: &Rat) -> Rat {
    (&(&Rat::int(d) + &(alpha * &Rat::int(k))) / &Rat::int(n)).clone()
}

/// Critical weight below which no system of this type is stable (for `t >= 1`):
/// `alpha_c = max{ t/k, (n-t)/(a*n-k) }`.
///
/// Requires `t >= 1`, `k >= 1` and `k < a*n`; outside that range there is no
/// finite positive wall of this shape.
pub fn alpha_c(st: &SystemType) -> Result<Rat, TypeError> {
    let err = |reason| TypeError::NoCriticalValue {
        n: st.n,
        d: st.d,
        k: st.k,
        reason,
    };
    if st.t < 1 {
        return Err(err("t = 0"));
    }
    if st.k < 1 {
        return Err(err("k = 0"));
    }
    if st.k >= st.a * st.n {
        return Err(err("k >= a*n"));
    }
    Ok(Rat::max(
        Rat::new(st.t, st.k),
        Rat::new(st.n - st.t, st.a * st.n - st.k),
    ))
}

/// Sections of a split bundle with the given degree list:
/// `h0 = sum of (a_i + 1)` over factors with `a_i >= 0`.
pub fn h0_split(degrees: &[i64]) -> i64 {
    degrees.iter().map(|&a| (a + 1).max(0)).sum()
}

/// Weight threshold above which large-weight existence propagates down:
/// if the type is nonempty for arbitrarily large weights, it is nonempty for
/// every `alpha > t*(n-t) / gcd(n, k)`. Requires `t >= 1`.
pub fn gcd_alpha_bound(st: &SystemType) -> Result<Rat, TypeError> {
    if st.t < 1 {
        return Err(TypeError::NoThreshold {
            n: st.n,
            d: st.d,
            k: st.k,
            reason: "t = 0",
        });
    }
    let h = num_integer::gcd(st.n, st.k.max(0));
    Ok(Rat::new(st.t * (st.n - st.t), h))
}

/// Euler pairing count between types `t2 = (n2, d2, k2)` and
/// `t1 = (n1, d1, k1)`:
/// `c21 = -n1*n2 + d2*n1 - d1*n2 + k2*(d1 + n1 - k1)`.
///
/// This is `dim Hom - dim Ext^1` with the sign convention that makes
/// `ext1_dim = c21 + dim Hom`.
pub fn c21(t2: &TypeTriple, t1: &TypeTriple) -> i64 {
    -t1.n * t2.n + t2.d * t1.n - t1.d * t2.n + t2.k * (t1.d + t1.n - t1.k)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("negative extension dimension {value} for pairing {t2} -> {t1} with hom {hom}")]
pub struct NegativeExtDim {
    pub t2: TypeTriple,
    pub t1: TypeTriple,
    pub hom: i64,
    pub value: i64,
}

/// Dimension of the extension space between the two types, given the hom
/// dimension: `ext1 = c21(t2, t1) + hom`. A negative result is a caller
/// error (the hom dimension was wrong for these types).
pub fn ext1_dim(t2: &TypeTriple, t1: &TypeTriple, hom: i64) -> Result<i64, NegativeExtDim> {
    let value = c21(t2, t1) + hom;
    if value < 0 {
        return Err(NegativeExtDim {
            t2: *t2,
            t1: *t1,
            hom,
            value,
        });
    }
    Ok(value)
}
