//! Exact computation and certification of the unbalanced dichromatic number
//! `mu(D, Z1, Z2)`: the fewest blocks in a vertex partition whose blocks all
//! induce balanced subdigraphs.

use std::fmt;

use crate::balance::{set_is_balanced, subset_is_balanced};
use crate::digraph::{LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Blocks of a vertex partition, each sorted; block order is significant only
/// for display.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexPartition {
    pub blocks: Vec<VertexSet>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<VertexSet>) -> Self {
        VertexPartition { blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Nonempty, pairwise disjoint blocks whose union is `V(d)`.
    pub fn is_partition_of(&self, d: &LabeledDigraph) -> bool {
        let mut seen = vec![false; d.universe()];
        let mut total = 0;
        for block in &self.blocks {
            if block.is_empty() {
                return false;
            }
            for &v in block {
                if !d.contains(v) || seen[v] {
                    return false;
                }
                seen[v] = true;
                total += 1;
            }
        }
        total == d.vertex_count()
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let items: Vec<String> = block.iter().map(|v| v.to_string()).collect();
            f.write_str(&items.join(" "))?;
        }
        Ok(())
    }
}

/// True iff every block of `p` induces a balanced subdigraph.
pub fn verify_partition(d: &LabeledDigraph, p: &VertexPartition) -> Result<bool> {
    if !p.is_partition_of(d) {
        return Err(Error::invalid("not a partition of the vertex set"));
    }
    Ok(p.blocks.iter().all(|b| set_is_balanced(d, b)))
}

/// One iterative-deepening round of the exact search on one strong component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeepeningRound {
    pub colors: usize,
    pub feasible: bool,
    /// Search nodes (partial colourings) visited in this round.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTrace {
    pub leader: Vertex,
    pub size: usize,
    pub value: usize,
    pub rounds: Vec<DeepeningRound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub value: usize,
    /// Exactly `value` blocks, each balanced.
    pub certificate: VertexPartition,
    /// Infeasibility record: every round with `feasible == false` is an
    /// exhausted search proving the component needs more colours.
    pub lower_bound_trace: Vec<ComponentTrace>,
}

/// Exact `mu(d)`.
///
/// Strong components are solved separately and the answer is their maximum.
/// Per component the search deepens over `k = 1, 2, ...` with a backtracking
/// colouring in descending-degree order; a vertex may open colour `c` only
/// when colours `0..c` are open, and after each assignment the touched colour
/// class is re-tested for balance. With `limit = Some(l)` the search stops
/// with [`Error::LimitExceeded`] once the answer is known to exceed `l`.
pub fn mu_exact(d: &LabeledDigraph, limit: Option<usize>) -> Result<MuResult> {
    let comps = d.strong_components();
    let mut value = 0;
    let mut traces = Vec::with_capacity(comps.len());
    let mut colorings: Vec<Vec<VertexSet>> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let (blocks, trace) = solve_component(d, comp, limit)?;
        value = value.max(blocks.len());
        colorings.push(blocks);
        traces.push(trace);
    }
    // block i of the answer is the union of block i of every component;
    // no cycle crosses two strong components
    let mut blocks = vec![VertexSet::new(); value];
    for coloring in colorings {
        for (i, b) in coloring.into_iter().enumerate() {
            blocks[i].extend(b);
        }
    }
    Ok(MuResult {
        value,
        certificate: VertexPartition::new(blocks),
        lower_bound_trace: traces,
    })
}

/// `max` over strong components `H` of `mu_exact(D[H])`, each component
/// solved as a digraph of its own.
pub fn mu_component_max(d: &LabeledDigraph) -> usize {
    d.strong_components()
        .iter()
        .map(|c| {
            let h = d.induced(c).expect("component of d");
            mu_exact(&h, None).expect("no limit").value
        })
        .max()
        .unwrap_or(0)
}

/// First-fit colouring: each vertex joins the first block that stays balanced.
pub fn mu_greedy_upper(d: &LabeledDigraph) -> VertexPartition {
    greedy_blocks(d, d.vertices())
}

fn greedy_blocks(d: &LabeledDigraph, order: &[Vertex]) -> VertexPartition {
    let mut masks: Vec<Vec<bool>> = Vec::new();
    let mut blocks: Vec<VertexSet> = Vec::new();
    for &v in order {
        let mut placed = false;
        for (mask, block) in masks.iter_mut().zip(blocks.iter_mut()) {
            mask[v] = true;
            if !closes_cycle_in(d, mask, v) || subset_is_balanced(d, mask) {
                block.insert(v);
                placed = true;
                break;
            }
            mask[v] = false;
        }
        if !placed {
            let mut mask = vec![false; d.universe()];
            mask[v] = true;
            masks.push(mask);
            blocks.push(VertexSet::from([v]));
        }
    }
    VertexPartition::new(blocks)
}

/// `v` can only lie on a cycle of the class if it has both an in- and an
/// out-neighbour there.
fn closes_cycle_in(d: &LabeledDigraph, mask: &[bool], v: Vertex) -> bool {
    d.out_neighbors(v).any(|w| mask[w]) && d.in_neighbors(v).any(|w| mask[w])
}

fn solve_component(
    d: &LabeledDigraph,
    comp: &VertexSet,
    limit: Option<usize>,
) -> Result<(Vec<VertexSet>, ComponentTrace)> {
    let leader = *comp.first().expect("nonempty component");
    let mut trace = ComponentTrace {
        leader,
        size: comp.len(),
        value: 1,
        rounds: Vec::new(),
    };
    let mut order: Vec<Vertex> = comp.iter().copied().collect();
    let mask = d.mask(comp);
    let inner_degree =
        |v: Vertex| d.out_neighbors(v).filter(|&w| mask[w]).count() + d.in_neighbors(v).filter(|&w| mask[w]).count();
    order.sort_by_key(|&v| (std::cmp::Reverse(inner_degree(v)), v));

    let greedy = greedy_blocks(d, &order).blocks;
    let mut k = 1;
    while k < greedy.len() {
        if let Some(l) = limit {
            if k > l {
                return Err(Error::LimitExceeded {
                    limit: l,
                    lower: k,
                    upper: greedy.len(),
                });
            }
        }
        let mut search = ColoringSearch::new(d, &order, k);
        let found = search.run();
        trace.rounds.push(DeepeningRound {
            colors: k,
            feasible: found,
            nodes: search.nodes,
        });
        if found {
            trace.value = k;
            return Ok((search.blocks(), trace));
        }
        k += 1;
    }
    if let Some(l) = limit {
        if greedy.len() > l {
            return Err(Error::LimitExceeded {
                limit: l,
                lower: greedy.len(),
                upper: greedy.len(),
            });
        }
    }
    trace.value = greedy.len();
    Ok((greedy, trace))
}

struct ColoringSearch<'a> {
    d: &'a LabeledDigraph,
    order: &'a [Vertex],
    k: usize,
    color: Vec<usize>,
    masks: Vec<Vec<bool>>,
    nodes: u64,
}

impl<'a> ColoringSearch<'a> {
    fn new(d: &'a LabeledDigraph, order: &'a [Vertex], k: usize) -> Self {
        ColoringSearch {
            d,
            order,
            k,
            color: vec![usize::MAX; order.len()],
            masks: vec![vec![false; d.universe()]; k],
            nodes: 0,
        }
    }

    fn run(&mut self) -> bool {
        self.assign(0, 0)
    }

    fn assign(&mut self, i: usize, open: usize) -> bool {
        self.nodes += 1;
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        let limit = (open + 1).min(self.k);
        for c in 0..limit {
            self.masks[c][v] = true;
            let ok = !closes_cycle_in(self.d, &self.masks[c], v) || subset_is_balanced(self.d, &self.masks[c]);
            if ok {
                self.color[i] = c;
                if self.assign(i + 1, open.max(c + 1)) {
                    return true;
                }
            }
            self.masks[c][v] = false;
        }
        false
    }

    fn blocks(&self) -> Vec<VertexSet> {
        let mut blocks = vec![VertexSet::new(); self.k];
        for (i, &v) in self.order.iter().enumerate() {
            blocks[self.color[i]].insert(v);
        }
        blocks.retain(|b| !b.is_empty());
        blocks
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

    fn singletons(d: &LabeledDigraph) -> VertexPartition {
        VertexPartition::new(d.vertices().iter().map(|&v| VertexSet::from([v])).collect())
    }

    #[test]
    fn verify_partition_examples() {
        let k2 = clique_z1(2);
        assert!(verify_partition(&k2, &singletons(&k2)).unwrap());
        assert!(!verify_partition(&k2, &VertexPartition::new(vec![k2.vertex_set()])).unwrap());
        let c6 = LabeledDigraph::new(6, (0..6).map(|i| Arc::new(i, (i + 1) % 6, i % 2 == 0, i % 2 == 1))).unwrap();
        assert!(verify_partition(&c6, &VertexPartition::new(vec![c6.vertex_set()])).unwrap());
        let overlapping = VertexPartition::new(vec![VertexSet::from([0, 1]), VertexSet::from([1])]);
        assert!(verify_partition(&k2, &overlapping).is_err());
        let missing = VertexPartition::new(vec![VertexSet::from([0])]);
        assert!(verify_partition(&k2, &missing).is_err());
    }

    #[test]
    fn mu_exact_examples() {
        let dag = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 2)]).unwrap();
        assert_eq!(mu_exact(&dag, None).unwrap().value, 1);
        for n in 1..=6 {
            let r = mu_exact(&clique_z1(n), None).unwrap();
            assert_eq!(r.value, n);
            assert_eq!(r.certificate.block_count(), n);
            assert!(verify_partition(&clique_z1(n), &r.certificate).unwrap());
        }
        let c5 = LabeledDigraph::new(5, (0..5).map(|i| Arc::new(i, (i + 1) % 5, i == 0, false))).unwrap();
        assert_eq!(mu_exact(&c5, None).unwrap().value, 2);
    }

    #[test]
    fn empty_digraph_has_mu_zero() {
        let d = LabeledDigraph::new(0, []).unwrap();
        let r = mu_exact(&d, None).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.certificate.blocks.is_empty());
    }

    #[test]
    fn trace_records_exhausted_rounds() {
        let r = mu_exact(&clique_z1(4), None).unwrap();
        let t = &r.lower_bound_trace[0];
        let infeasible: Vec<usize> = t.rounds.iter().filter(|r| !r.feasible).map(|r| r.colors).collect();
        // greedy already hits 4, so every smaller count must be refuted
        assert_eq!(infeasible, vec![1, 2, 3]);
    }

    #[test]
    fn limit_signals_bounds() {
        match mu_exact(&clique_z1(5), Some(3)) {
            Err(Error::LimitExceeded { limit, lower, upper }) => {
                assert_eq!(limit, 3);
                assert!(lower > 3 && upper >= lower);
            }
            other => panic!("expected limit signal, got {other:?}"),
        }
        assert_eq!(mu_exact(&clique_z1(3), Some(3)).unwrap().value, 3);
    }

    #[test]
    fn component_max_examples() {
        let two_digons = LabeledDigraph::new(4, [Arc::z1(0, 1), Arc::z1(1, 0), Arc::z1(2, 3), Arc::z1(3, 2)]).unwrap();
        assert_eq!(mu_component_max(&two_digons), 2);
        assert_eq!(mu_exact(&two_digons, None).unwrap().value, 2);
        let dag = LabeledDigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(mu_component_max(&dag), 1);
        let digon_plus = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 0)]).unwrap();
        assert_eq!(mu_component_max(&digon_plus), 2);
    }

    #[test]
    fn greedy_examples() {
        let dag = LabeledDigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(mu_greedy_upper(&dag).block_count(), 1);
        let k4 = clique_z1(4);
        let g = mu_greedy_upper(&k4);
        assert_eq!(g.block_count(), 4);
        assert!(verify_partition(&k4, &g).unwrap());
    }
}
