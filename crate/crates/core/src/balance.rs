//! Unbalanced-cycle detection.
//!
//! Each arc carries the weight `[arc in Z1] - [arc in Z2]`, and a directed
//! cycle is unbalanced exactly when its weight sum is nonzero. Balance of a
//! vertex set is decided with potentials: inside a strong component all cycle
//! weights vanish iff there is a potential `p` with `p(v) - p(u) = w(u, v)`
//! on every arc of the component.

use std::collections::VecDeque;

use crate::digraph::{scc_labels, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A directed cycle, stored as its cyclic vertex sequence, with its label counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedCycle {
    vertices: Vec<Vertex>,
    z1_count: usize,
    z2_count: usize,
}

impl DirectedCycle {
    /// Validates `seq` as a cycle of `d`: at least two distinct vertices and
    /// an arc from each vertex to the next (and from the last back to the first).
    pub fn new(d: &LabeledDigraph, seq: Vec<Vertex>) -> Result<Self> {
        if seq.len() < 2 {
            return Err(Error::invalid("a cycle needs at least two vertices"));
        }
        let distinct: VertexSet = seq.iter().copied().collect();
        if distinct.len() != seq.len() {
            return Err(Error::invalid("cycle repeats a vertex"));
        }
        let (mut z1_count, mut z2_count) = (0, 0);
        for i in 0..seq.len() {
            let (u, v) = (seq[i], seq[(i + 1) % seq.len()]);
            let arc = d
                .find_arc(u, v)
                .ok_or_else(|| Error::invalid(format!("({u}, {v}) is not an arc")))?;
            z1_count += arc.z1 as usize;
            z2_count += arc.z2 as usize;
        }
        Ok(DirectedCycle {
            vertices: seq,
            z1_count,
            z2_count,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    pub fn z1_count(&self) -> usize {
        self.z1_count
    }

    pub fn z2_count(&self) -> usize {
        self.z2_count
    }

    pub fn weight(&self) -> i64 {
        self.z1_count as i64 - self.z2_count as i64
    }

    pub fn is_unbalanced(&self) -> bool {
        self.z1_count != self.z2_count
    }

    /// Arcs in cyclic order, starting with the arc leaving `vertices()[0]`.
    pub fn arc_pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Checks that `seq` is a cycle of `d` and reports whether it is unbalanced.
pub fn is_unbalanced(d: &LabeledDigraph, seq: &[Vertex]) -> Result<bool> {
    Ok(DirectedCycle::new(d, seq.to_vec())?.is_unbalanced())
}

/// True iff `d` has a directed cycle of nonzero weight. Linear time.
pub fn has_unbalanced_cycle(d: &LabeledDigraph) -> bool {
    !subset_is_balanced(d, &vec![true; d.universe()])
}

/// Balance of `D[S]` where `S` is given as a membership table over the universe.
pub fn subset_is_balanced(d: &LabeledDigraph, mask: &[bool]) -> bool {
    let (comp, _) = scc_labels(d, Some(mask));
    let mut potential: Vec<Option<i64>> = vec![None; d.universe()];
    let mut queue = VecDeque::new();
    for &root in d.vertices() {
        if comp[root] == usize::MAX || potential[root].is_some() {
            continue;
        }
        // spanning out-tree of the component containing `root`
        potential[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let pu = potential[u].unwrap();
            for &(v, id) in d.out_arcs(u) {
                if comp[v] != comp[u] {
                    continue;
                }
                let expected = pu + d.arc(id).weight() as i64;
                match potential[v] {
                    None => {
                        potential[v] = Some(expected);
                        queue.push_back(v);
                    }
                    Some(pv) if pv != expected => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn set_is_balanced(d: &LabeledDigraph, set: &VertexSet) -> bool {
    subset_is_balanced(d, &d.mask(set))
}

/// A minimum-length unbalanced cycle, or `None` when `d` is balanced.
///
/// For each root `r`, a breadth-first search over `(vertex, accumulated
/// weight)` states finds the shortest closed walk through `r` with nonzero
/// weight. The overall shortest such walk is a simple cycle: a repeated vertex
/// would split it into shorter closed walks, one of them of nonzero weight.
/// Ties go to the smallest root.
pub fn shortest_unbalanced_cycle(d: &LabeledDigraph) -> Option<DirectedCycle> {
    if !has_unbalanced_cycle(d) {
        return None;
    }
    let n = d.vertex_count();
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    for &root in d.vertices() {
        let cap = best.as_ref().map_or(n, |(len, _)| len - 1);
        if cap < 2 {
            break;
        }
        if let Some(walk) = shortest_unbalanced_walk_through(d, root, cap) {
            best = Some((walk.len(), walk));
        }
    }
    let (_, seq) = best.expect("an unbalanced digraph has an unbalanced cycle");
    Some(DirectedCycle::new(d, seq).expect("a shortest unbalanced closed walk is a simple cycle"))
}

/// Shortest closed walk from `root` of nonzero weight and length at most
/// `max_len`, as its vertex sequence starting at `root` (closing arc implicit).
fn shortest_unbalanced_walk_through(d: &LabeledDigraph, root: Vertex, max_len: usize) -> Option<Vec<Vertex>> {
    // weights reachable at depth k lie in [-k, k]
    let offset = max_len as i64;
    let width = 2 * max_len + 1;
    let state = |v: Vertex, w: i64| v * width + (w + offset) as usize;
    let mut pred: Vec<Option<usize>> = vec![None; d.universe() * width];
    let mut seen = vec![false; d.universe() * width];
    let start = state(root, 0);
    seen[start] = true;
    let mut frontier = vec![(root, 0i64)];
    for depth in 1..=max_len {
        let mut next = Vec::new();
        for &(u, wu) in &frontier {
            for &(v, id) in d.out_arcs(u) {
                let wv = wu + d.arc(id).weight() as i64;
                if v == root && wv != 0 {
                    let mut seq = vec![u];
                    let mut cur = state(u, wu);
                    while let Some(p) = pred[cur] {
                        seq.push(p / width);
                        cur = p;
                    }
                    seq.reverse();
                    debug_assert_eq!(seq.len(), depth);
                    return Some(seq);
                }
                if depth == max_len || wv.abs() > offset {
                    continue;
                }
                let s = state(v, wv);
                if !seen[s] {
                    seen[s] = true;
                    pred[s] = Some(state(u, wu));
                    next.push((v, wv));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}

/// Result of greedy cycle extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePacking {
    pub cycles: Vec<DirectedCycle>,
    /// How many of the requested cycles could not be found.
    pub shortfall: usize,
}

/// Repeatedly removes a shortest unbalanced cycle, up to `t` times. The
/// returned cycles are pairwise vertex-disjoint; whenever `mu(d) >= 2t` all `t`
/// are found.
pub fn disjoint_unbalanced_cycles(d: &LabeledDigraph, t: usize) -> Result<CyclePacking> {
    if t == 0 {
        return Err(Error::invalid("cycle count must be positive"));
    }
    let mut rest = d.clone();
    let mut cycles = Vec::with_capacity(t);
    while cycles.len() < t {
        let Some(c) = shortest_unbalanced_cycle(&rest) else {
            break;
        };
        rest = rest.without(&c.vertex_set());
        cycles.push(c);
    }
    Ok(CyclePacking {
        shortfall: t - cycles.len(),
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Arc;

    fn clique_z1(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    fn alternating_c6() -> LabeledDigraph {
        LabeledDigraph::new(6, (0..6).map(|i| Arc::new(i, (i + 1) % 6, i % 2 == 0, i % 2 == 1))).unwrap()
    }

    #[test]
    fn is_unbalanced_examples() {
        let d = LabeledDigraph::new(2, [Arc::z1(0, 1), Arc::plain(1, 0)]).unwrap();
        assert!(is_unbalanced(&d, &[0, 1]).unwrap());
        let d = LabeledDigraph::new(2, [Arc::z1(0, 1), Arc::z2(1, 0)]).unwrap();
        assert!(!is_unbalanced(&d, &[0, 1]).unwrap());
        let d = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 2), Arc::z2(2, 0)]).unwrap();
        assert!(is_unbalanced(&d, &[0, 1, 2]).unwrap());
        assert!(is_unbalanced(&d, &[0, 2, 1]).is_err());
        assert!(is_unbalanced(&d, &[0]).is_err());
    }

    #[test]
    fn arc_in_both_sets_weighs_zero() {
        let d = LabeledDigraph::new(2, [Arc::new(0, 1, true, true), Arc::plain(1, 0)]).unwrap();
        assert!(!has_unbalanced_cycle(&d));
    }

    #[test]
    fn has_unbalanced_cycle_examples() {
        let dag = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::z1(1, 2), Arc::z1(0, 2)]).unwrap();
        assert!(!has_unbalanced_cycle(&dag));
        assert!(has_unbalanced_cycle(&clique_z1(2)));
        assert!(!has_unbalanced_cycle(&alternating_c6()));
    }

    #[test]
    fn cross_component_arcs_are_ignored() {
        // two balanced digons joined by a labelled arc
        let d = LabeledDigraph::new(
            4,
            [
                Arc::z1(0, 1),
                Arc::z2(1, 0),
                Arc::plain(2, 3),
                Arc::plain(3, 2),
                Arc::z1(1, 2),
            ],
        )
        .unwrap();
        assert!(!has_unbalanced_cycle(&d));
    }

    #[test]
    fn shortest_cycle_examples() {
        assert!(shortest_unbalanced_cycle(&alternating_c6()).is_none());
        let c = shortest_unbalanced_cycle(&clique_z1(3)).unwrap();
        assert_eq!(c.length(), 2);
        assert_eq!(c.vertices(), &[0, 1]);
        let c5 = LabeledDigraph::new(5, (0..5).map(|i| Arc::new(i, (i + 1) % 5, i == 2, false))).unwrap();
        let c = shortest_unbalanced_cycle(&c5).unwrap();
        assert_eq!(c.length(), 5);
        assert_eq!(c.weight(), 1);
    }

    #[test]
    fn shortest_cycle_skips_shorter_balanced_ones() {
        // balanced digon 0<->1 and an unbalanced triangle 1 -> 2 -> 3 -> 1
        let d = LabeledDigraph::new(
            4,
            [
                Arc::z1(0, 1),
                Arc::z2(1, 0),
                Arc::z1(1, 2),
                Arc::plain(2, 3),
                Arc::plain(3, 1),
            ],
        )
        .unwrap();
        let c = shortest_unbalanced_cycle(&d).unwrap();
        assert_eq!(c.vertex_set(), [1, 2, 3].into_iter().collect());
    }

    #[test]
    fn packing_examples() {
        let p = disjoint_unbalanced_cycles(&clique_z1(4), 2).unwrap();
        assert_eq!(p.cycles.len(), 2);
        assert_eq!(p.shortfall, 0);
        assert!(p.cycles.iter().all(|c| c.length() == 2 && c.is_unbalanced()));
        assert!(p.cycles[0].vertex_set().is_disjoint(&p.cycles[1].vertex_set()));

        let tri = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::plain(1, 2), Arc::plain(2, 0)]).unwrap();
        let p = disjoint_unbalanced_cycles(&tri, 2).unwrap();
        assert_eq!((p.cycles.len(), p.shortfall), (1, 1));

        let p = disjoint_unbalanced_cycles(&alternating_c6(), 1).unwrap();
        assert_eq!((p.cycles.len(), p.shortfall), (0, 1));

        assert!(disjoint_unbalanced_cycles(&tri, 0).is_err());
    }
}
