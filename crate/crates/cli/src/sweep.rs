//! Lattice enumeration for batch runs. Plain integer ranges for n and the
//! degree data; section counts may be given relative to the point's shape,
//! e.g. `--k n+1..=an-1`, so one sweep covers every rank uniformly.

use anyhow::{bail, Context, Result};
use cohsys::types::{decompose, SystemType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

/// `"2..=6"` or a single `"4"`.
pub fn parse_range(s: &str) -> Result<Range> {
    let int = |p: &str| -> Result<i64> { p.parse().with_context(|| format!("bad integer {p:?}")) };
    let r = match s.split_once("..=") {
        Some((lo, hi)) => Range { lo: int(lo)?, hi: int(hi)? },
        None => {
            let v = int(s)?;
            Range { lo: v, hi: v }
        }
    };
    if r.lo > r.hi {
        bail!("empty range {s:?}");
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum KTerm {
    Const,
    N,
    An,
    AnMinusT,
    AnPlusN,
}

/// A section count relative to the lattice point: one of `n`, `an`, `an-t`,
/// `an+n` or a constant, plus an integer offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KExpr {
    term: KTerm,
    offset: i64,
}

pub fn parse_kexpr(s: &str) -> Result<KExpr> {
    let s = s.trim();
    for (name, term) in [
        ("an-t", KTerm::AnMinusT),
        ("an+n", KTerm::AnPlusN),
        ("an", KTerm::An),
        ("n", KTerm::N),
    ] {
        if let Some(rest) = s.strip_prefix(name) {
            let offset = if rest.is_empty() {
                0
            } else if rest.starts_with('+') || rest.starts_with('-') {
                rest.parse().with_context(|| format!("bad offset in {s:?}"))?
            } else {
                bail!("bad section-count expression {s:?}");
            };
            return Ok(KExpr { term, offset });
        }
    }
    let offset = s.parse().with_context(|| format!("bad section-count expression {s:?}"))?;
    Ok(KExpr { term: KTerm::Const, offset })
}

impl KExpr {
    pub fn eval(&self, n: i64, a: i64, t: i64) -> i64 {
        let base = match self.term {
            KTerm::Const => 0,
            KTerm::N => n,
            KTerm::An => a * n,
            KTerm::AnMinusT => a * n - t,
            KTerm::AnPlusN => a * n + n,
        };
        base + self.offset
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KRange {
    pub lo: KExpr,
    pub hi: KExpr,
}

pub fn parse_krange(s: &str) -> Result<KRange> {
    match s.split_once("..=") {
        Some((lo, hi)) => Ok(KRange { lo: parse_kexpr(lo)?, hi: parse_kexpr(hi)? }),
        None => {
            let e = parse_kexpr(s)?;
            Ok(KRange { lo: e, hi: e })
        }
    }
}

#[derive(Clone, Debug)]
pub enum DegreeSpec {
    Direct(Range),
    Shape { a: Range, t: Option<Range> },
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub n: Range,
    pub deg: DegreeSpec,
    pub k: KRange,
}

/// All valid lattice points, sorted and deduplicated by `(n, d, k)`.
pub fn enumerate(spec: &SweepSpec) -> Vec<SystemType> {
    let mut points = Vec::new();
    let mut push = |n: i64, d: i64| {
        let (a, t) = decompose(n, d);
        for k in spec.k.lo.eval(n, a, t)..=spec.k.hi.eval(n, a, t) {
            if let Ok(sys) = SystemType::new(n, d, k) {
                points.push(sys);
            }
        }
    };
    for n in spec.n.lo.max(1)..=spec.n.hi {
        match &spec.deg {
            DegreeSpec::Direct(r) => {
                for d in r.lo..=r.hi {
                    push(n, d);
                }
            }
            DegreeSpec::Shape { a, t } => {
                for av in a.lo..=a.hi {
                    let (tlo, thi) = match t {
                        Some(r) => (r.lo.max(0), r.hi.min(n - 1)),
                        None => (0, n - 1),
                    };
                    for tv in tlo..=thi {
                        push(n, av * n - tv);
                    }
                }
            }
        }
    }
    points.sort_unstable_by_key(|s| (s.n, s.d, s.k));
    points.dedup();
    points
}
