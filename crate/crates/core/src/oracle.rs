//! Pluggable evaluators of `mu(D[S])`.
//!
//! The structural routines only ever ask "how large is mu on this subset",
//! so they take a [`MuOracle`]. Swapping the exact solver for an analytic
//! evaluator lets the constructions run on instances far beyond exact solving.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::digraph::{LabeledDigraph, VertexSet};
use crate::error::{Error, Result};
use crate::mu::mu_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Exact,
    Analytic,
    Hints,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Exact => "exact",
            OracleKind::Analytic => "analytic",
            OracleKind::Hints => "hints",
        })
    }
}

pub trait MuOracle: Send + Sync {
    /// `mu(d[subset])`, or [`Error::OracleUnavailable`].
    fn mu(&self, d: &LabeledDigraph, subset: &VertexSet) -> Result<usize>;

    fn kind(&self) -> OracleKind;
}

/// Runs the exact solver, memoising answers per subset.
#[derive(Debug, Default)]
pub struct ExactOracle {
    limit: Option<usize>,
    cache: Mutex<HashMap<VertexSet, usize>>,
}

impl ExactOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Refuses (as unavailable) any subset whose mu exceeds `limit`.
    pub fn with_limit(limit: usize) -> Self {
        ExactOracle {
            limit: Some(limit),
            ..Self::default()
        }
    }
}

impl MuOracle for ExactOracle {
    fn mu(&self, d: &LabeledDigraph, subset: &VertexSet) -> Result<usize> {
        if let Some(&v) = self.cache.lock().unwrap().get(subset) {
            return Ok(v);
        }
        let h = d.induced(subset)?;
        let value = match mu_exact(&h, self.limit) {
            Ok(r) => r.value,
            Err(Error::LimitExceeded { lower, .. }) => {
                return Err(Error::OracleUnavailable(format!(
                    "exact solver stopped at limit (mu >= {lower})"
                )))
            }
            Err(e) => return Err(e),
        };
        self.cache.lock().unwrap().insert(subset.clone(), value);
        Ok(value)
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Exact
    }
}

/// Closed form for digraphs built around a *core* in which every pair of
/// vertices spans an unbalanced digon (bioriented cliques with all arcs in
/// `Z1 \ Z2`, say), with the rest attached so that `D[(V \ core) ∪ {c}]` is
/// acyclic for every core vertex `c`.
///
/// Two core vertices never share a block, and every cycle outside the core
/// meets the core twice, so `mu(D[S]) = max(|S ∩ core|, 1)` for nonempty `S`.
#[derive(Debug, Clone)]
pub struct CliqueOracle {
    vertices: VertexSet,
    core: VertexSet,
}

impl CliqueOracle {
    /// Whole vertex set as the core.
    pub fn new(d: &LabeledDigraph) -> Result<Self> {
        Self::with_core(d, d.vertex_set())
    }

    /// Checks both family conditions on `d`; covers all induced subdigraphs.
    pub fn with_core(d: &LabeledDigraph, core: VertexSet) -> Result<Self> {
        if let Some(v) = core.iter().find(|&&v| !d.contains(v)) {
            return Err(Error::invalid(format!("core vertex {v} is not in the digraph")));
        }
        let core_vs: Vec<_> = core.iter().copied().collect();
        for (i, &u) in core_vs.iter().enumerate() {
            for &v in &core_vs[i + 1..] {
                let w = match (d.find_arc(u, v), d.find_arc(v, u)) {
                    (Some(a), Some(b)) => a.weight() + b.weight(),
                    _ => 0,
                };
                if w == 0 {
                    return Err(Error::invalid(format!(
                        "vertices {u} and {v} do not span an unbalanced digon"
                    )));
                }
            }
        }
        let rest: VertexSet = d.vertex_set().difference(&core).copied().collect();
        if !rest.is_empty() {
            let mut probe = rest.clone();
            for &c in &core {
                probe.insert(c);
                if !is_acyclic(&d.induced(&probe)?) {
                    return Err(Error::invalid(format!(
                        "attachment together with core vertex {c} contains a cycle"
                    )));
                }
                probe.remove(&c);
            }
            if core.is_empty() && !is_acyclic(&d.induced(&probe)?) {
                return Err(Error::invalid("digraph outside the core contains a cycle"));
            }
        }
        Ok(CliqueOracle {
            vertices: d.vertex_set(),
            core,
        })
    }

    pub fn core(&self) -> &VertexSet {
        &self.core
    }
}

fn is_acyclic(d: &LabeledDigraph) -> bool {
    d.strong_components().len() == d.vertex_count()
}

impl MuOracle for CliqueOracle {
    fn mu(&self, _d: &LabeledDigraph, subset: &VertexSet) -> Result<usize> {
        if !subset.is_subset(&self.vertices) {
            return Err(Error::OracleUnavailable("subset leaves the certified family".into()));
        }
        if subset.is_empty() {
            return Ok(0);
        }
        Ok(subset.intersection(&self.core).count().max(1))
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Analytic
    }
}

/// Caller-supplied table of known values.
#[derive(Debug, Clone, Default)]
pub struct HintOracle {
    table: HashMap<VertexSet, usize>,
}

impl HintOracle {
    pub fn new(table: HashMap<VertexSet, usize>) -> Self {
        HintOracle { table }
    }

    pub fn insert(&mut self, subset: VertexSet, mu: usize) {
        self.table.insert(subset, mu);
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl MuOracle for HintOracle {
    fn mu(&self, _d: &LabeledDigraph, subset: &VertexSet) -> Result<usize> {
        self.table
            .get(subset)
            .copied()
            .ok_or_else(|| Error::OracleUnavailable("no hint for this subset".into()))
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Hints
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Arc;

    fn clique_z1(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    #[test]
    fn clique_oracle_counts_vertices() {
        let d = clique_z1(7);
        let o = CliqueOracle::new(&d).unwrap();
        let s: VertexSet = [0, 2, 3, 5, 6].into_iter().collect();
        assert_eq!(o.mu(&d, &s).unwrap(), 5);
        assert_eq!(o.kind(), OracleKind::Analytic);
    }

    #[test]
    fn clique_oracle_rejects_other_families() {
        let d = LabeledDigraph::new(2, [Arc::z1(0, 1), Arc::z2(1, 0)]).unwrap();
        assert!(CliqueOracle::new(&d).is_err());
        let d = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 0)]).unwrap();
        assert!(CliqueOracle::new(&d).is_err());
    }

    #[test]
    fn core_with_attached_path() {
        // K3 core plus 0 -> 3 -> 4 -> 1
        let mut arcs: Vec<Arc> = (0..3)
            .flat_map(|u| (0..3).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)))
            .collect();
        arcs.extend([Arc::z1(0, 3), Arc::z2(3, 4), Arc::z1(4, 1)]);
        let d = LabeledDigraph::new(5, arcs.clone()).unwrap();
        let o = CliqueOracle::with_core(&d, [0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(o.mu(&d, &[3, 4].into_iter().collect()).unwrap(), 1);
        assert_eq!(o.mu(&d, &[0, 1, 3, 4].into_iter().collect()).unwrap(), 2);
        assert_eq!(o.mu(&d, &VertexSet::new()).unwrap(), 0);
        assert_eq!(crate::mu::mu_exact(&d, None).unwrap().value, 3);
        // a chord 4 -> 3 closes a cycle outside the core
        arcs.push(Arc::z1(4, 3));
        let d = LabeledDigraph::new(5, arcs).unwrap();
        assert!(CliqueOracle::with_core(&d, [0, 1, 2].into_iter().collect()).is_err());
    }

    #[test]
    fn exact_oracle_on_acyclic_subset() {
        let d = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 2), Arc::z1(2, 0)]).unwrap();
        let o = ExactOracle::new();
        assert_eq!(o.mu(&d, &[0, 1].into_iter().collect()).unwrap(), 1);
        assert_eq!(o.mu(&d, &d.vertex_set()).unwrap(), 2);
        // cached
        assert_eq!(o.mu(&d, &d.vertex_set()).unwrap(), 2);
    }

    #[test]
    fn exact_oracle_limit_is_unavailability() {
        let d = clique_z1(4);
        let o = ExactOracle::with_limit(2);
        assert!(matches!(o.mu(&d, &d.vertex_set()), Err(Error::OracleUnavailable(_))));
    }

    #[test]
    fn hint_oracle_missing_key() {
        let d = clique_z1(3);
        let mut o = HintOracle::default();
        o.insert([0, 1].into_iter().collect(), 2);
        assert_eq!(o.mu(&d, &[0, 1].into_iter().collect()).unwrap(), 2);
        assert!(matches!(
            o.mu(&d, &[0].into_iter().collect()),
            Err(Error::OracleUnavailable(_))
        ));
    }
}
