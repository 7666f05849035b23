//! Exact-arithmetic engine for coherent systems on the projective line:
//! computes slopes, critical values and expected dimensions, decides where
//! the stability parameter admits stable systems of a given type, certifies
//! existence and emptiness, and samples explicit systems to cross-check.

pub mod certify;
pub mod formulas;
pub mod knowledge;
pub mod lab;
pub mod rat;
pub mod types;

pub use knowledge::{classify, AlphaKnowledge, Classifier, Status};
pub use rat::{ExtRat, OpenInterval, Rat};
pub use types::{SystemType, TypeTriple};

/// Version string for caches: results are valid only while both the crate
/// and the statement table stay unchanged.
pub fn engine_version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), knowledge::table_version())
}
