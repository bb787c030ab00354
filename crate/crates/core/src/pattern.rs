//! Subdivision patterns with per-arc congruence constraints, and witnesses.

use std::fmt;

use crate::digraph::{DirectedPath, Vertex};
use crate::error::{Error, Result};
use crate::modular::{combine, coprime, reduce};

/// `a * |P ∩ Z1| + b * |P ∩ Z2| ≡ r (mod q)`.
///
/// `r` is stored reduced to `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub a: i64,
    pub b: i64,
    pub r: u64,
    pub q: u64,
}

impl Congruence {
    /// Validates `q >= 2` and `gcd(a, q) = gcd(b, q) = 1`; reduces `r`.
    pub fn new(a: i64, b: i64, r: i64, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("modulus {q} must be at least 2")));
        }
        if !coprime(a, q) || !coprime(b, q) {
            return Err(Error::invalid(format!(
                "coefficients ({a}, {b}) must be coprime to {q}"
            )));
        }
        Ok(Congruence {
            a,
            b,
            r: reduce(r, q),
            q,
        })
    }

    /// Plain length constraint `|P| ≡ r (mod q)` when every arc is in `Z1` only.
    pub fn length(r: i64, q: u64) -> Result<Self> {
        Self::new(1, 1, r, q)
    }

    pub fn value(&self, z1: usize, z2: usize) -> u64 {
        combine(self.a, self.b, z1 as u64, z2 as u64, self.q)
    }

    pub fn holds(&self, z1: usize, z2: usize) -> bool {
        self.value(z1, z2) == self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternArc {
    pub tail: usize,
    pub head: usize,
    pub constraint: Congruence,
}

/// The pattern digraph `F` on vertices `0..vertex_count`, arcs sorted by
/// `(tail, head)`. Arc indices refer to that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionPattern {
    vertex_count: usize,
    arcs: Vec<PatternArc>,
}

impl SubdivisionPattern {
    pub fn new(vertex_count: usize, mut arcs: Vec<PatternArc>) -> Result<Self> {
        arcs.sort_by_key(|a| (a.tail, a.head));
        for a in &arcs {
            if a.tail >= vertex_count || a.head >= vertex_count {
                return Err(Error::Validation(format!(
                    "pattern arc ({}, {}) leaves vertex range 0..{vertex_count}",
                    a.tail, a.head
                )));
            }
            if a.tail == a.head {
                return Err(Error::Validation(format!("pattern loop at {}", a.tail)));
            }
            // re-check in case the constraint was built by hand
            Congruence::new(a.constraint.a, a.constraint.b, a.constraint.r as i64, a.constraint.q)?;
        }
        for w in arcs.windows(2) {
            if (w[0].tail, w[0].head) == (w[1].tail, w[1].head) {
                return Err(Error::Validation(format!(
                    "duplicate pattern arc ({}, {})",
                    w[0].tail, w[0].head
                )));
            }
        }
        Ok(SubdivisionPattern { vertex_count, arcs })
    }

    /// Convenience constructor from `(tail, head, a, b, r, q)` tuples.
    pub fn from_tuples(vertex_count: usize, arcs: &[(usize, usize, i64, i64, i64, u64)]) -> Result<Self> {
        let arcs = arcs
            .iter()
            .map(|&(tail, head, a, b, r, q)| {
                Ok(PatternArc {
                    tail,
                    head,
                    constraint: Congruence::new(a, b, r, q)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[PatternArc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    pub fn max_modulus(&self) -> Option<u64> {
        self.arcs.iter().map(|a| a.constraint.q).max()
    }
}

/// Branch vertices (indexed by pattern vertex) and branching paths (indexed
/// by pattern arc).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubdivisionWitness {
    pub branch: Vec<Vertex>,
    pub paths: Vec<DirectedPath>,
}

impl fmt::Display for SubdivisionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.branch.iter().enumerate() {
            writeln!(f, "branch {i} -> {v}")?;
        }
        for (i, p) in self.paths.iter().enumerate() {
            writeln!(f, "path {i}: {p}")?;
        }
        Ok(())
    }
}
