//! The constructive pipeline: a cycle with two arcs of `Z1 Δ Z2`, special
//! sets, gadget sequences, residue-universal sets and, on top of them,
//! extraction of congruence-constrained subdivisions.
//!
//! Every stage runs in best-effort mode: it attempts the construction on any
//! input, records why the proven guarantee may not apply (see
//! [`Caveat`](crate::decomposition::Caveat)), and never returns an object that
//! fails its condition verifier in [`verify`].

use std::fmt;

use crate::digraph::Vertex;
use crate::pattern::SubdivisionPattern;

mod cycle;
mod extract;
mod sequences;
mod special;
mod universal;
pub mod verify;

pub use cycle::{two_arc_cycle, TwoArcCycle};
pub use extract::{extract_subdivision, extraction_order, Extraction};
pub use sequences::{gadget_sequences, GadgetSequences};
pub use special::{special_set, SpecialSetResult};
pub use universal::{residue_universal_set, ResidueUniversalSet, Side};

/// Where a construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    ConnectorPath,
    NestedSequence,
    Pivots,
    DisjointCycles,
    Splice,
    TwoArcCycle,
    LevelSplit,
    ResidueClasses,
    Shrink,
    ResidualSet,
    Route,
    SpecialSet,
    /// 1-based step of the gadget sequence.
    GadgetStep(usize),
    EntrySplit,
    Gadgets,
    FinalSplit,
    Assembly,
    /// Recursion depth of the extraction (0 is the outermost arc).
    ExtractDepth(usize),
    Base,
    Verification,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::ConnectorPath => f.write_str("connector path"),
            Stage::NestedSequence => f.write_str("nested sequence"),
            Stage::Pivots => f.write_str("pivots"),
            Stage::DisjointCycles => f.write_str("disjoint cycles"),
            Stage::Splice => f.write_str("splice"),
            Stage::TwoArcCycle => f.write_str("two-arc cycle"),
            Stage::LevelSplit => f.write_str("level split"),
            Stage::ResidueClasses => f.write_str("residue classes"),
            Stage::Shrink => f.write_str("shrink"),
            Stage::ResidualSet => f.write_str("residual set"),
            Stage::Route => f.write_str("route"),
            Stage::SpecialSet => f.write_str("special set"),
            Stage::GadgetStep(i) => write!(f, "gadget step {i}"),
            Stage::EntrySplit => f.write_str("entry split"),
            Stage::Gadgets => f.write_str("gadgets"),
            Stage::FinalSplit => f.write_str("final split"),
            Stage::Assembly => f.write_str("assembly"),
            Stage::ExtractDepth(i) => write!(f, "extraction depth {i}"),
            Stage::Base => f.write_str("base case"),
            Stage::Verification => f.write_str("verification"),
        }
    }
}

/// Knobs of the best-effort pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructiveConfig {
    /// Oracle mu the special-set shrink aims for. The guaranteed regime
    /// uses [`TWO_ARC_THRESHOLD`]; desk-scale inputs need something small.
    pub floor: usize,
    /// Starting vertex of the first in-leveling (default: smallest vertex).
    pub start: Option<Vertex>,
}

impl Default for ConstructiveConfig {
    fn default() -> Self {
        ConstructiveConfig { floor: 16, start: None }
    }
}

pub const TWO_ARC_THRESHOLD: u128 = 1536;

/// `3072 q^2`.
pub fn threshold_specialset(q: u64) -> Option<u128> {
    3072u128.checked_mul((q as u128).checked_mul(q as u128)?)
}

fn pow2(e: u64) -> Option<u128> {
    if e >= 127 {
        None
    } else {
        Some(1u128 << e)
    }
}

/// `1536 * 2^(2q-3) * (q^2 + 1) - 3072`.
pub fn threshold_sequences(q: u64) -> Option<u128> {
    if q < 2 {
        return None;
    }
    let q2 = (q as u128).checked_mul(q as u128)?;
    pow2(2 * q - 3)?
        .checked_mul(1536)?
        .checked_mul(q2 + 1)?
        .checked_sub(3072)
}

/// `2^(2q-3) * max(1536 (q^2 + 1), n + 3072) - 3072`: enough for the last
/// set of a gadget sequence to keep mu at least `n`.
pub fn threshold_sequences_target(q: u64, n: u128) -> Option<u128> {
    if q < 2 {
        return None;
    }
    let q2 = (q as u128).checked_mul(q as u128)?;
    let inner = (1536 * (q2 + 1)).max(n.checked_add(3072)?);
    pow2(2 * q - 3)?.checked_mul(inner)?.checked_sub(3072)
}

/// `g(q, n) = 2^(2q-2) * max(1536 (q^2 + 1), 2n + 3072) - 6144`.
pub fn g(q: u64, n: u128) -> Option<u128> {
    if q < 2 {
        return None;
    }
    let q2 = (q as u128).checked_mul(q as u128)?;
    let inner = q2
        .checked_add(1)?
        .checked_mul(1536)?
        .max(n.checked_mul(2)?.checked_add(3072)?);
    pow2(2 * q - 2)?.checked_mul(inner)?.checked_sub(6144)
}

/// The mu that guarantees extraction of `pattern`: `|V(F)|` for no arcs,
/// then one application of [`g`] per arc, innermost arc first, in the
/// order [`extract_subdivision`] removes them.
pub fn subdivision_threshold(pattern: &SubdivisionPattern) -> Option<u128> {
    let order = extraction_order(pattern);
    let mut n = pattern.vertex_count() as u128;
    for &e in order.iter().rev() {
        n = g(pattern.arcs()[e].constraint.q, n)?;
    }
    Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_spot_values() {
        assert_eq!(threshold_specialset(2), Some(12288));
        assert_eq!(g(2, 2), Some(24576));
        // q = 2: 1536 * 2 * 5 - 3072
        assert_eq!(threshold_sequences(2), Some(12288));
        assert_eq!(threshold_sequences_target(2, 2), Some(12288));
        // g(q, n) / 2 is the target form with 2n
        for q in 2..6 {
            for n in [2u128, 100, 100_000] {
                assert_eq!(g(q, n).unwrap() / 2, threshold_sequences_target(q, 2 * n).unwrap());
            }
        }
        assert_eq!(g(1, 2), None);
        assert_eq!(g(70, 2), None);
    }

    #[test]
    fn subdivision_threshold_nests() {
        let p = SubdivisionPattern::from_tuples(2, &[]).unwrap();
        assert_eq!(subdivision_threshold(&p), Some(2));
        let p = SubdivisionPattern::from_tuples(2, &[(0, 1, 1, 1, 0, 2)]).unwrap();
        assert_eq!(subdivision_threshold(&p), Some(24576));
        let p = SubdivisionPattern::from_tuples(2, &[(0, 1, 1, 1, 0, 2), (1, 0, 1, 1, 0, 3)]).unwrap();
        // the q = 2 arc is innermost
        assert_eq!(subdivision_threshold(&p), g(3, 24576));
    }

    #[test]
    fn stage_display() {
        assert_eq!(Stage::GadgetStep(2).to_string(), "gadget step 2");
        assert_eq!(Stage::ExtractDepth(0).to_string(), "extraction depth 0");
    }
}
