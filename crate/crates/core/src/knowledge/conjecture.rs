//! Comparing the open existence conjecture against the certified rule table.

use super::{Classifier, KnowledgeError, Status};
use crate::formulas::beta;
use crate::types::SystemType;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    /// Prediction and certified knowledge agree.
    Confirmed,
    /// Certified knowledge refutes the prediction.
    Contradicted,
    /// The rule table cannot decide existence for this type.
    Open,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub system: SystemType,
    /// Whether the conjecture's dimension precondition `beta >= 0` holds.
    pub beta_ok: bool,
    /// Conjectured: nonempty for some weight.
    pub predicted: bool,
    /// Certified: nonempty for some weight (None when undecided).
    pub actual: Option<bool>,
    pub verdict: Verdict,
    pub status: &'static str,
    pub flags: Vec<&'static str>,
}

/// Evaluate the existence conjecture at one type: predicted nonempty iff
/// `beta >= 0` and either `a*t < k < a*n` with enough extension room, or
/// `k <= a*t`. Requires `k >= n`, `t >= 1`, `a >= 2` (the conjecture's home
/// range; `t = 0` is settled unconditionally and is rejected here).
pub fn conjecture_scan(
    cl: &Classifier,
    st: &SystemType,
) -> Result<ConjectureReport, KnowledgeError> {
    let unsupported = |reason| KnowledgeError::ScanUnsupported {
        n: st.n,
        d: st.d,
        k: st.k,
        reason,
    };
    if st.k < st.n {
        return Err(unsupported("requires k >= n"));
    }
    if st.t < 1 {
        return Err(unsupported("t = 0 is settled, not conjectural"));
    }
    if st.a < 2 {
        return Err(unsupported("requires a >= 2"));
    }
    let (n, a, t, k) = (st.n, st.a, st.t, st.k);
    let beta_ok = beta(n, st.d, k) >= 0;
    let ext_room = (a - 1) * t <= a * (a * n - k) + (a - 2) * n;
    let predicted = beta_ok && ((a * t < k && k < a * n && ext_room) || k <= a * t);

    let know = cl.classify(st);
    let actual = match know.status {
        Status::EmptyAll => Some(false),
        Status::Exact(_) | Status::Partial => Some(true),
        Status::Unknown => None,
    };
    let verdict = match actual {
        Some(actual) if actual == predicted => Verdict::Confirmed,
        Some(_) => Verdict::Contradicted,
        None => Verdict::Open,
    };

    let mut flags = Vec::new();
    // Wall-existence holds but every known route to large-weight existence is
    // out of range: the prime testing ground for the upward-closure question.
    #[allow(clippy::int_plus_one)] // band bounds kept in their stated form
    if t == n - 1 && k == a * (n - 1) && a + 1 < n && n <= a * a + a - 1 {
        flags.push("upward-closure-test-case");
    }

    Ok(ConjectureReport {
        system: st.clone(),
        beta_ok,
        predicted,
        actual,
        verdict,
        status: know.status.name(),
        flags,
    })
}

/// Convenience scan with a throwaway classifier.
pub fn scan(st: &SystemType) -> Result<ConjectureReport, KnowledgeError> {
    conjecture_scan(&Classifier::new(), st)
}
