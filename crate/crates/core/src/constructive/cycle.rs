use crate::balance::{disjoint_unbalanced_cycles, has_unbalanced_cycle, DirectedCycle};
use crate::decomposition::{nested_connector_sequence, push_caveat, query, threshold_check, Caveat};
use crate::digraph::{LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::{MuOracle, OracleKind};

use super::verify::check_two_arc_cycle;
use super::{Stage, TWO_ARC_THRESHOLD};

/// A directed cycle through two arcs of `Z1 Δ Z2`, and the pieces it was
/// spliced from.
#[derive(Debug, Clone)]
pub struct TwoArcCycle {
    pub cycle: DirectedCycle,
    /// The two `Z1 Δ Z2` arcs, one from each packed cycle.
    pub marked: [(Vertex, Vertex); 2],
    pub pivots: (Vertex, Vertex),
    /// The innermost set of the nested sequence.
    pub core: VertexSet,
    pub mu_input: Option<usize>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

impl TwoArcCycle {
    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

/// Nested connector sequence of depth 4, two pivots `v1, v2` in `S4`, two
/// disjoint unbalanced cycles in `S4 \ {v1, v2}`, and the four layer paths
/// `v1 -> x1`, `y1 -> v2`, `v2 -> x2`, `y2 -> v1` closed up with the marked
/// arcs `(x1, y1)` and `(x2, y2)`.
pub fn two_arc_cycle(d: &LabeledDigraph, oracle: &dyn MuOracle) -> Result<TwoArcCycle> {
    if !d.is_strongly_connected() {
        return Err(Error::precondition(
            "two-arc cycle requires a strongly connected digraph",
        ));
    }
    if !has_unbalanced_cycle(d) {
        return Err(Error::construction(
            Stage::DisjointCycles,
            "the digraph has no unbalanced cycle",
        ));
    }
    let mut caveats = Vec::new();
    let mu_input = query(oracle, d, &d.vertex_set(), &mut caveats)?;
    threshold_check(mu_input, TWO_ARC_THRESHOLD, &mut caveats);

    let seq = nested_connector_sequence(d, 4, oracle).map_err(|e| e.within(Stage::NestedSequence))?;
    for c in &seq.caveats {
        if !matches!(c, Caveat::BelowThreshold { .. }) {
            push_caveat(&mut caveats, c.clone());
        }
    }
    let core = seq.innermost().clone();
    let mut it = core.iter().copied();
    let (Some(v1), Some(v2)) = (it.next(), it.next()) else {
        return Err(Error::construction(
            Stage::Pivots,
            format!("innermost set has {} vertices, two pivots needed", core.len()),
        ));
    };
    let rest: VertexSet = core.iter().copied().filter(|&v| v != v1 && v != v2).collect();
    let packing = disjoint_unbalanced_cycles(&d.induced(&rest)?, 2)?;
    if packing.shortfall > 0 {
        return Err(Error::construction(
            Stage::DisjointCycles,
            format!("found {} of 2 disjoint unbalanced cycles", packing.cycles.len()),
        ));
    }
    let mut marked = [(0, 0); 2];
    for (slot, c) in marked.iter_mut().zip(&packing.cycles) {
        *slot = c
            .arc_pairs()
            .find(|&(a, b)| d.find_arc(a, b).is_some_and(|arc| arc.in_symmetric_difference()))
            .expect("an unbalanced cycle has an arc in exactly one class");
    }
    let [(x1, y1), (x2, y2)] = marked;

    let layer_path = |i, from, to| seq.locality_path(d, i, from, to).map_err(|e| e.within(Stage::Splice));
    let p1 = layer_path(1, v1, x1)?;
    let p2 = layer_path(2, y1, v2)?;
    let p3 = layer_path(3, v2, x2)?;
    let p4 = layer_path(4, y2, v1)?;

    let mut walk = p1.vertices().to_vec();
    walk.extend_from_slice(p2.vertices());
    walk.extend_from_slice(&p3.vertices()[1..]);
    walk.extend_from_slice(p4.vertices());
    walk.pop();
    let cycle = DirectedCycle::new(d, walk).map_err(|e| Error::construction(Stage::Splice, e.to_string()))?;
    check_two_arc_cycle(d, &cycle).map_err(|v| Error::construction(Stage::Verification, v.to_string()))?;

    Ok(TwoArcCycle {
        cycle,
        marked,
        pivots: (v1, v2),
        core,
        mu_input,
        oracle: oracle.kind(),
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Arc;
    use crate::oracle::{CliqueOracle, ExactOracle};

    fn clique_z1(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    #[test]
    fn clique_gives_two_arc_cycle() {
        for n in [14, 16, 40] {
            let d = clique_z1(n);
            let o = CliqueOracle::new(&d).unwrap();
            let r = two_arc_cycle(&d, &o).unwrap();
            assert!(check_two_arc_cycle(&d, &r.cycle).is_ok());
            assert_eq!(r.caveats.len(), 1, "only the threshold caveat");
        }
    }

    #[test]
    fn balanced_input_fails_at_disjoint_cycles() {
        let d = LabeledDigraph::new(4, (0..4).map(|i| Arc::plain(i, (i + 1) % 4))).unwrap();
        let err = two_arc_cycle(&d, &ExactOracle::new()).unwrap_err();
        assert_eq!(err.failed_stage(), Some(&Stage::DisjointCycles));
    }

    #[test]
    fn single_digon_fails() {
        let d = LabeledDigraph::new(2, [Arc::z1(0, 1), Arc::plain(1, 0)]).unwrap();
        let err = two_arc_cycle(&d, &ExactOracle::new()).unwrap_err();
        assert!(matches!(err, Error::Construction { .. }));
    }
}
