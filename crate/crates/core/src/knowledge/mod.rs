//! What is known about the stability range of a numerical type: evidence
//! gathered from the rule table, merged into a certified picture of the set
//! `I(n, d, k) = { alpha > 0 : moduli nonempty }`, which is always an open
//! interval.

pub mod conjecture;
mod rules;
mod statements;

pub use statements::{statement, statement_keys, table_version, Statement};

use crate::formulas::beta;
use crate::rat::{ExtRat, OpenInterval, Rat};
use crate::types::SystemType;
use num_integer::gcd;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// One-sided certified-empty region.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EmptyRay {
    /// Empty for every weight.
    All,
    /// Empty on `(0, c]`.
    Below(Rat),
    /// Empty on `[c, inf)`.
    FromIncl(Rat),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvidenceKind {
    /// Certified nonempty on the whole open interval.
    NonemptyOn(OpenInterval),
    /// Certified nonempty on `(c, c + eps)` for some unspecified `eps > 0`.
    NonemptyAbove(Rat),
    /// Certified nonempty on `(c - eps, c)`: the interval's supremum is `c`.
    NonemptyBelow(Rat),
    /// Certified nonempty for all sufficiently large weights.
    NonemptyLargeAlpha,
    /// Certified nonempty for at least one weight, location unknown.
    ExistsSome,
    EmptyOn(EmptyRay),
    /// Advisory expected window; never affects the certified picture.
    Annotation(OpenInterval),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub citation: &'static str,
}

impl Evidence {
    fn new(kind: EvidenceKind, citation: &'static str) -> Self {
        Evidence { kind, citation }
    }
}

/// Certified classification of a stability range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Status {
    /// Empty for every weight.
    EmptyAll,
    /// The range is exactly this interval.
    Exact(OpenInterval),
    /// Nonempty somewhere, but the certified picture has gaps.
    Partial,
    /// No existence information at all.
    Unknown,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::EmptyAll => "EMPTY_ALL",
            Status::Exact(_) => "EXACT",
            Status::Partial => "PARTIAL",
            Status::Unknown => "UNKNOWN",
        }
    }
}

/// Everything the rule table certifies about one numerical type.
#[derive(Clone, Debug)]
pub struct AlphaKnowledge {
    pub system: SystemType,
    pub status: Status,
    /// Convex hull of all certified-nonempty sets; certified in full because
    /// the true range is an interval.
    pub nonempty_hull: Option<OpenInterval>,
    /// `(0, x]` certified empty (largest such `x`).
    pub empty_below: Option<Rat>,
    /// `[x, inf)` certified empty (smallest such `x`).
    pub empty_above: Option<Rat>,
    pub empty_all: bool,
    pub exists_some: bool,
    /// Smallest `c` with certified existence just above `c`.
    pub approach_lo: Option<Rat>,
    /// Largest `c` with certified existence just below `c`.
    pub approach_hi: Option<Rat>,
    pub large_alpha: bool,
    /// Moduli dimension where nonempty.
    pub dimension: Option<i64>,
    /// Advisory expected windows with their citations.
    pub annotations: Vec<(OpenInterval, &'static str)>,
    pub evidence: Vec<Evidence>,
}

impl AlphaKnowledge {
    /// Deciding citation keys in evidence order, deduplicated.
    pub fn citations(&self) -> Vec<&'static str> {
        let mut seen = Vec::new();
        for ev in &self.evidence {
            if !seen.contains(&ev.citation) {
                seen.push(ev.citation);
            }
        }
        seen
    }

    /// The outer constraint window `(empty_below, empty_above)`; for EXACT
    /// status it coincides with the range itself.
    pub fn constraint_window(&self) -> OpenInterval {
        OpenInterval::new(
            self.empty_below.clone().unwrap_or_else(Rat::zero),
            self.empty_above
                .clone()
                .map(ExtRat::Fin)
                .unwrap_or(ExtRat::Inf),
        )
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KnowledgeError {
    #[error("inconsistent evidence for {system}: {detail}")]
    InconsistentEvidence { system: String, detail: String },
    #[error("conjecture scan unsupported for ({n}, {d}, {k}): {reason}")]
    ScanUnsupported {
        n: i64,
        d: i64,
        k: i64,
        reason: &'static str,
    },
}

fn inconsistent(st: &SystemType, detail: impl fmt::Display) -> KnowledgeError {
    KnowledgeError::InconsistentEvidence {
        system: st.to_string(),
        detail: detail.to_string(),
    }
}

/// Merge raw evidence into a certified picture.
///
/// Large-weight existence is first converted to a concrete interval:
/// `(t*(n-t)/gcd(n,k), inf)` when `t > 0`, else `(d*(n-1), inf)` (every rule
/// that emits it guarantees the conversion hypotheses). The hull's lower end
/// may come from interval bounds or from just-above anchors, the upper end
/// from interval bounds or just-below anchors; interval convexity of the true
/// range certifies the result. Contradictory evidence is an engine bug and
/// comes back as `InconsistentEvidence`.
pub fn merge(system: SystemType, mut evidence: Vec<Evidence>) -> Result<AlphaKnowledge, KnowledgeError> {
    let large_alpha = evidence
        .iter()
        .any(|e| e.kind == EvidenceKind::NonemptyLargeAlpha);
    if large_alpha {
        let (bound, cite) = if system.t > 0 {
            (
                Rat::new(system.t * (system.n - system.t), gcd(system.n, system.k)),
                "gcd-stability-threshold",
            )
        } else {
            (
                Rat::int(system.d * (system.n - 1)),
                "alpha-independence-threshold",
            )
        };
        let bound = Rat::max(bound, Rat::zero());
        evidence.push(Evidence::new(
            EvidenceKind::NonemptyOn(OpenInterval::new(bound, ExtRat::Inf)),
            cite,
        ));
    }

    let mut hull_lo: Option<ExtRat> = None;
    let mut hull_hi: Option<ExtRat> = None;
    let mut empty_below: Option<Rat> = None;
    let mut empty_above: Option<Rat> = None;
    let mut empty_all = false;
    let mut exists_some = false;
    let mut approach_lo: Option<Rat> = None;
    let mut approach_hi: Option<Rat> = None;
    let mut annotations = Vec::new();

    let min_in = |slot: &mut Option<ExtRat>, v: ExtRat| match slot {
        Some(cur) if *cur <= v => {}
        _ => *slot = Some(v),
    };
    let max_in = |slot: &mut Option<ExtRat>, v: ExtRat| match slot {
        Some(cur) if *cur >= v => {}
        _ => *slot = Some(v),
    };

    for ev in &evidence {
        match &ev.kind {
            EvidenceKind::NonemptyOn(iv) => {
                if !iv.is_empty() {
                    min_in(&mut hull_lo, iv.lo.clone());
                    max_in(&mut hull_hi, iv.hi.clone());
                    exists_some = true;
                }
            }
            EvidenceKind::NonemptyAbove(c) => {
                min_in(&mut hull_lo, ExtRat::Fin(c.clone()));
                approach_lo = Some(match approach_lo.take() {
                    Some(cur) => Rat::min(cur, c.clone()),
                    None => c.clone(),
                });
                exists_some = true;
            }
            EvidenceKind::NonemptyBelow(c) => {
                max_in(&mut hull_hi, ExtRat::Fin(c.clone()));
                approach_hi = Some(match approach_hi.take() {
                    Some(cur) => Rat::max(cur, c.clone()),
                    None => c.clone(),
                });
                exists_some = true;
            }
            EvidenceKind::NonemptyLargeAlpha => exists_some = true,
            EvidenceKind::ExistsSome => exists_some = true,
            EvidenceKind::EmptyOn(EmptyRay::All) => empty_all = true,
            EvidenceKind::EmptyOn(EmptyRay::Below(c)) => {
                empty_below = Some(match empty_below.take() {
                    Some(cur) => Rat::max(cur, c.clone()),
                    None => c.clone(),
                });
            }
            EvidenceKind::EmptyOn(EmptyRay::FromIncl(c)) => {
                empty_above = Some(match empty_above.take() {
                    Some(cur) => Rat::min(cur, c.clone()),
                    None => c.clone(),
                });
            }
            EvidenceKind::Annotation(iv) => annotations.push((iv.clone(), ev.citation)),
        }
    }

    // Rays covering the whole positive line amount to emptiness everywhere.
    if let Some(hi) = &empty_above {
        let below = empty_below.clone().unwrap_or_else(Rat::zero);
        if *hi <= below {
            empty_all = true;
        }
    }

    let hull = match (&hull_lo, &hull_hi) {
        (Some(lo), Some(hi)) if lo < hi => Some(OpenInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        }),
        _ => None,
    };

    if empty_all && exists_some {
        return Err(inconsistent(
            &system,
            "existence evidence against emptiness for all weights",
        ));
    }
    let below = ExtRat::Fin(empty_below.clone().unwrap_or_else(Rat::zero));
    let above = empty_above
        .clone()
        .map(ExtRat::Fin)
        .unwrap_or(ExtRat::Inf);
    if let Some(h) = &hull {
        if h.lo < below {
            return Err(inconsistent(
                &system,
                format!("hull {} dips into certified-empty (0, {}]", h, below),
            ));
        }
        if h.hi > above {
            return Err(inconsistent(
                &system,
                format!("hull {} crosses certified-empty [{}, inf)", h, above),
            ));
        }
    }
    if let Some(c) = &approach_lo {
        let c = ExtRat::Fin(c.clone());
        if c < below || c >= above {
            return Err(inconsistent(
                &system,
                format!("just-above anchor {} inside a certified-empty ray", c),
            ));
        }
    }
    if let Some(c) = &approach_hi {
        let c = ExtRat::Fin(c.clone());
        if c > above || c <= below {
            return Err(inconsistent(
                &system,
                format!("just-below anchor {} inside a certified-empty ray", c),
            ));
        }
    }

    let status = if empty_all {
        Status::EmptyAll
    } else if let Some(h) = &hull {
        if h.lo == below && h.hi == above {
            Status::Exact(h.clone())
        } else {
            Status::Partial
        }
    } else if exists_some {
        Status::Partial
    } else {
        Status::Unknown
    };

    let dimension = match status {
        Status::Exact(_) | Status::Partial => Some(beta(system.n, system.d, system.k)),
        _ => None,
    };

    Ok(AlphaKnowledge {
        system,
        status,
        nonempty_hull: hull,
        empty_below,
        empty_above,
        empty_all,
        exists_some,
        approach_lo,
        approach_hi,
        large_alpha,
        dimension,
        annotations,
        evidence,
    })
}

/// Rule-table classifier with a memo shared across recursive descent.
///
/// Descent rules look up lower-rank types; the memo makes repeated sweeps
/// cheap and guarantees termination work is done once per type.
pub struct Classifier {
    memo: Mutex<HashMap<(i64, i64, i64), Arc<AlphaKnowledge>>>,
}

impl Classifier {
    pub fn new() -> Self {
        Classifier {
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Certified picture for one type. Panics on inconsistent evidence: the
    /// rule table encodes true statements, so a contradiction is a bug here,
    /// not bad input.
    pub fn classify(&self, st: &SystemType) -> Arc<AlphaKnowledge> {
        let key = (st.n, st.d, st.k);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        // Not held across the recursive rule evaluation.
        let evidence = rules::gather(self, st);
        let know = match merge(st.clone(), evidence) {
            Ok(k) => Arc::new(k),
            Err(e) => panic!("rule table produced contradictory evidence: {}", e),
        };
        self.memo
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&know));
        know
    }

    /// True iff the type's certified-nonempty hull strictly contains `value`.
    /// Used by descent rules to check their lower-rank hypotheses.
    fn certified_at(&self, n: i64, d: i64, k: i64, value: &Rat) -> bool {
        match SystemType::new(n, d, k) {
            Ok(child) => match &self.classify(&child).nonempty_hull {
                Some(h) => h.contains(value),
                None => false,
            },
            Err(_) => false,
        }
    }
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::new()
    }
}

/// One-off classification without a shared memo.
pub fn classify(st: &SystemType) -> AlphaKnowledge {
    (*Classifier::new().classify(st)).clone()
}
