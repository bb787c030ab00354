//! Arc-labelled digraphs and the breadth-first machinery (levelings, BFS
//! trees, strong components) the structural routines are built on.
//!
//! Vertices are dense integers drawn from a fixed universe `0..n`. Induced
//! subdigraphs keep the universe and the original identifiers, so a path found
//! deep inside a nested subdigraph is already a path of the root digraph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// A labelled arc. `z1` / `z2` record membership in the two prescribed arc sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
    pub z1: bool,
    pub z2: bool,
}

impl Arc {
    pub const fn new(tail: Vertex, head: Vertex, z1: bool, z2: bool) -> Self {
        Arc { tail, head, z1, z2 }
    }

    pub const fn plain(tail: Vertex, head: Vertex) -> Self {
        Arc::new(tail, head, false, false)
    }

    pub const fn z1(tail: Vertex, head: Vertex) -> Self {
        Arc::new(tail, head, true, false)
    }

    pub const fn z2(tail: Vertex, head: Vertex) -> Self {
        Arc::new(tail, head, false, true)
    }

    /// `[arc in Z1] - [arc in Z2]`; a cycle is unbalanced iff its weights do not sum to zero.
    pub const fn weight(&self) -> i32 {
        self.z1 as i32 - self.z2 as i32
    }

    /// Membership in the symmetric difference of the two arc sets.
    pub const fn in_symmetric_difference(&self) -> bool {
        self.z1 != self.z2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Out => f.write_str("out"),
            Direction::In => f.write_str("in"),
        }
    }
}

/// A digraph together with the arc classification `(Z1, Z2)`.
///
/// Immutable after construction. No loops and no parallel arcs in the same
/// direction; digons are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    universe: usize,
    present: Vec<bool>,
    vertices: Vec<Vertex>,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<(Vertex, usize)>>,
    in_adj: Vec<Vec<(Vertex, usize)>>,
}

impl LabeledDigraph {
    /// Builds a digraph on vertices `0..n`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        Self::build(n, (0..n).collect(), arcs.into_iter().collect())
    }

    /// Unlabelled digraph from `(tail, head)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| Arc::plain(u, v)))
    }

    fn build(universe: usize, vertices: Vec<Vertex>, mut arcs: Vec<Arc>) -> Result<Self> {
        let mut present = vec![false; universe];
        for &v in &vertices {
            if v >= universe {
                return Err(Error::Validation(format!("vertex {v} outside universe 0..{universe}")));
            }
            present[v] = true;
        }
        arcs.sort_unstable_by_key(|a| (a.tail, a.head));
        for w in arcs.windows(2) {
            if (w[0].tail, w[0].head) == (w[1].tail, w[1].head) {
                return Err(Error::Validation(format!(
                    "duplicate arc ({}, {})",
                    w[0].tail, w[0].head
                )));
            }
        }
        let mut out_adj = vec![Vec::new(); universe];
        let mut in_adj = vec![Vec::new(); universe];
        for (id, a) in arcs.iter().enumerate() {
            if a.tail == a.head {
                return Err(Error::Validation(format!("loop at vertex {}", a.tail)));
            }
            for v in [a.tail, a.head] {
                if v >= universe || !present[v] {
                    return Err(Error::Validation(format!(
                        "arc ({}, {}) uses unknown vertex {v}",
                        a.tail, a.head
                    )));
                }
            }
            out_adj[a.tail].push((a.head, id));
            in_adj[a.head].push((a.tail, id));
        }
        // arcs are sorted by (tail, head) so out lists are already sorted
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Ok(LabeledDigraph {
            universe,
            present,
            vertices,
            arcs,
            out_adj,
            in_adj,
        })
    }

    /// Size of the identifier space; vertices are drawn from `0..universe`.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Present vertices in ascending order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.present[v]
    }

    /// Arcs sorted by `(tail, head)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    pub fn find_arc(&self, tail: Vertex, head: Vertex) -> Option<&Arc> {
        if !self.contains(tail) {
            return None;
        }
        let list = &self.out_adj[tail];
        list.binary_search_by_key(&head, |&(h, _)| h)
            .ok()
            .map(|i| &self.arcs[list[i].1])
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        self.find_arc(tail, head).is_some()
    }

    /// `(head, arc id)` pairs, ascending by head.
    pub fn out_arcs(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.out_adj[v]
    }

    /// `(tail, arc id)` pairs, ascending by tail.
    pub fn in_arcs(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.in_adj[v]
    }

    /// Neighbours reached by following arcs forwards (`Out`) or backwards (`In`).
    pub fn neighbor_arcs(&self, v: Vertex, dir: Direction) -> &[(Vertex, usize)] {
        match dir {
            Direction::Out => &self.out_adj[v],
            Direction::In => &self.in_adj[v],
        }
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj[v].iter().map(|&(w, _)| w)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.in_adj[v].iter().map(|&(w, _)| w)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    /// Boolean membership table over the universe.
    pub fn mask(&self, set: &VertexSet) -> Vec<bool> {
        let mut m = vec![false; self.universe];
        for &v in set {
            if v < self.universe {
                m[v] = true;
            }
        }
        m
    }

    /// `D[S]`, keeping vertex identifiers and the labels of surviving arcs.
    pub fn induced(&self, set: &VertexSet) -> Result<LabeledDigraph> {
        if let Some(&v) = set.iter().find(|&&v| !self.contains(v)) {
            return Err(Error::invalid(format!("vertex {v} is not in the digraph")));
        }
        let mask = self.mask(set);
        let arcs = self
            .arcs
            .iter()
            .filter(|a| mask[a.tail] && mask[a.head])
            .copied()
            .collect();
        Self::build(self.universe, set.iter().copied().collect(), arcs)
    }

    /// `D - S`.
    pub fn without(&self, removed: &VertexSet) -> LabeledDigraph {
        let keep: VertexSet = self.vertices.iter().copied().filter(|v| !removed.contains(v)).collect();
        self.induced(&keep).expect("subset of own vertices")
    }

    /// Strong components, each sorted, ordered by their smallest vertex.
    pub fn strong_components(&self) -> Vec<VertexSet> {
        let (comp, count) = scc_labels(self, None);
        let mut comps = vec![VertexSet::new(); count];
        for &v in &self.vertices {
            comps[comp[v]].insert(v);
        }
        comps.sort_by_key(|c| *c.first().expect("components are nonempty"));
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        scc_labels(self, None).1 == 1
    }

    /// BFS distances from `start` (`Out`) or to `start` (`In`), indexed by vertex.
    pub fn distances(&self, start: Vertex, dir: Direction) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.universe];
        if !self.contains(start) {
            return dist;
        }
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &(w, _) in self.neighbor_arcs(v, dir) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn require_strong(&self, what: &str) -> Result<()> {
        if !self.is_strongly_connected() {
            return Err(Error::precondition(format!(
                "{what} requires a strongly connected digraph"
            )));
        }
        Ok(())
    }

    fn require_vertex(&self, v: Vertex) -> Result<()> {
        if !self.contains(v) {
            return Err(Error::invalid(format!("vertex {v} is not in the digraph")));
        }
        Ok(())
    }

    /// Out-leveling (distances from `start`) or in-leveling (distances to `start`).
    pub fn leveling(&self, start: Vertex, dir: Direction) -> Result<Leveling> {
        self.require_vertex(start)?;
        self.require_strong("a leveling")?;
        let dist = self.distances(start, dir);
        let depth = self.vertices.iter().filter_map(|&v| dist[v]).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for &v in &self.vertices {
            levels[dist[v].expect("strongly connected")].push(v);
        }
        Ok(Leveling {
            start,
            direction: dir,
            levels,
        })
    }

    /// Distance-preserving spanning tree; each vertex takes the smallest
    /// candidate parent on the previous level.
    pub fn bfs_tree(&self, root: Vertex, dir: Direction) -> Result<BfsTree> {
        self.require_vertex(root)?;
        self.require_strong("a BFS tree")?;
        let dist = self.distances(root, dir);
        let mut parent = vec![None; self.universe];
        // for an out-tree the parent is an in-neighbour one level closer, and
        // vice versa for an in-tree
        let back = match dir {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        };
        for &v in &self.vertices {
            if v == root {
                continue;
            }
            let d = dist[v].expect("strongly connected");
            parent[v] = self
                .neighbor_arcs(v, back)
                .iter()
                .find(|&&(u, _)| dist[u] == Some(d - 1))
                .copied();
        }
        Ok(BfsTree {
            root,
            direction: dir,
            parent,
            depth: dist,
        })
    }

    /// Shortest directed `(A, B)`-path whose vertices all satisfy `allowed`.
    /// Internal vertices avoid `A ∪ B`. Ties go to the smallest identifiers.
    pub fn shortest_set_path(&self, from: &VertexSet, to: &VertexSet, allowed: &[bool]) -> Option<DirectedPath> {
        if let Some(&v) = from.iter().find(|v| to.contains(v) && allowed[**v]) {
            return Some(DirectedPath::single(v));
        }
        let mut pred: Vec<Option<Vertex>> = vec![None; self.universe];
        let mut seen = vec![false; self.universe];
        let mut queue = VecDeque::new();
        for &s in from {
            if self.contains(s) && allowed[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.out_adj[v] {
                if seen[w] || !allowed[w] || from.contains(&w) {
                    continue;
                }
                seen[w] = true;
                pred[w] = Some(v);
                if to.contains(&w) {
                    let mut seq = vec![w];
                    let mut cur = w;
                    while let Some(p) = pred[cur] {
                        seq.push(p);
                        cur = p;
                    }
                    seq.reverse();
                    return Some(DirectedPath::new(seq));
                }
                queue.push_back(w);
            }
        }
        None
    }
}

/// Iterative Tarjan restricted to `mask` (all present vertices when `None`).
/// Returns a component label per vertex (`usize::MAX` outside) and the count.
pub(crate) fn scc_labels(d: &LabeledDigraph, mask: Option<&[bool]>) -> (Vec<usize>, usize) {
    let n = d.universe;
    let inside = |v: Vertex| d.present[v] && mask.is_none_or(|m| m[v]);
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut call: Vec<(Vertex, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for &root in &d.vertices {
        if !inside(root) || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let adj = &d.out_adj[v];
            if *pos < adj.len() {
                let w = adj[*pos].0;
                *pos += 1;
                if !inside(w) {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// BFS strata `(L0, ..., Lp)` from (or towards) a starting vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leveling {
    pub start: Vertex,
    pub direction: Direction,
    pub levels: Vec<Vec<Vertex>>,
}

impl Leveling {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_set(&self, i: usize) -> VertexSet {
        self.levels[i].iter().copied().collect()
    }

    /// Checks the leveling axioms against `d`: `|L0| = 1`, the levels partition
    /// `V(d)`, and every vertex of `Li` (i >= 1) has a neighbour of the required
    /// direction in `L(i-1)` and none in earlier levels.
    pub fn is_valid_for(&self, d: &LabeledDigraph) -> bool {
        if self.levels.first().map(Vec::len) != Some(1) || self.levels[0][0] != self.start {
            return false;
        }
        let mut level_of = vec![usize::MAX; d.universe()];
        let mut total = 0;
        for (i, level) in self.levels.iter().enumerate() {
            for &v in level {
                if !d.contains(v) || level_of[v] != usize::MAX {
                    return false;
                }
                level_of[v] = i;
                total += 1;
            }
        }
        if total != d.vertex_count() {
            return false;
        }
        let toward = match self.direction {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        };
        self.levels.iter().enumerate().skip(1).all(|(i, level)| {
            level.iter().all(|&v| {
                let ls: Vec<usize> = d.neighbor_arcs(v, toward).iter().map(|&(u, _)| level_of[u]).collect();
                ls.contains(&(i - 1)) && ls.iter().all(|&l| l + 1 >= i)
            })
        })
    }
}

/// Out- or in-BFS tree. `parent[v]` is the tree neighbour one step closer to
/// the root, with the id of the connecting arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    pub root: Vertex,
    pub direction: Direction,
    parent: Vec<Option<(Vertex, usize)>>,
    depth: Vec<Option<usize>>,
}

impl BfsTree {
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(v).copied().flatten().map(|(p, _)| p)
    }

    pub fn depth(&self, v: Vertex) -> Option<usize> {
        self.depth.get(v).copied().flatten()
    }

    /// The unique root-to-`v` path (out-tree) or `v`-to-root path (in-tree).
    pub fn tree_path(&self, v: Vertex) -> Result<DirectedPath> {
        if self.depth(v).is_none() {
            return Err(Error::invalid(format!("vertex {v} is not spanned by the tree")));
        }
        let mut seq = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            seq.push(p);
            cur = p;
        }
        if self.direction == Direction::Out {
            seq.reverse();
        }
        Ok(DirectedPath::new(seq))
    }
}

/// A vertex sequence `v0, ..., vk`; validity against a host digraph is
/// checked explicitly with [`DirectedPath::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedPath {
    vertices: Vec<Vertex>,
}

impl DirectedPath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        DirectedPath { vertices }
    }

    pub fn single(v: Vertex) -> Self {
        DirectedPath { vertices: vec![v] }
    }

    /// Number of arcs.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn interior(&self) -> &[Vertex] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn arc_pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_simple(&self) -> bool {
        let set: VertexSet = self.vertex_set();
        set.len() == self.vertices.len()
    }

    /// Distinct vertices and every consecutive pair an arc of `d`.
    pub fn validate(&self, d: &LabeledDigraph) -> Result<()> {
        if let Some(&v) = self.vertices.iter().find(|&&v| !d.contains(v)) {
            return Err(Error::invalid(format!("path vertex {v} is not in the digraph")));
        }
        if !self.is_simple() {
            return Err(Error::invalid("path repeats a vertex"));
        }
        if let Some((u, v)) = self.arc_pairs().find(|&(u, v)| !d.has_arc(u, v)) {
            return Err(Error::invalid(format!("({u}, {v}) is not an arc")));
        }
        Ok(())
    }

    /// `(|A(P) ∩ Z1|, |A(P) ∩ Z2|)`; arcs missing from `d` are an error.
    pub fn label_counts(&self, d: &LabeledDigraph) -> Result<(usize, usize)> {
        let mut counts = (0, 0);
        for (u, v) in self.arc_pairs() {
            let a = d
                .find_arc(u, v)
                .ok_or_else(|| Error::invalid(format!("({u}, {v}) is not an arc")))?;
            counts.0 += a.z1 as usize;
            counts.1 += a.z2 as usize;
        }
        Ok(counts)
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn join(&self, other: &DirectedPath) -> DirectedPath {
        assert_eq!(self.last(), other.first(), "paths do not meet");
        let mut seq = self.vertices.clone();
        seq.extend_from_slice(&other.vertices[1..]);
        DirectedPath { vertices: seq }
    }

    /// The subpath starting at the first occurrence of `v`.
    pub fn suffix_from(&self, v: Vertex) -> Option<DirectedPath> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        Some(DirectedPath {
            vertices: self.vertices[i..].to_vec(),
        })
    }

    /// The subpath ending at the first occurrence of `v`.
    pub fn prefix_to(&self, v: Vertex) -> Option<DirectedPath> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        Some(DirectedPath {
            vertices: self.vertices[..=i].to_vec(),
        })
    }
}

impl fmt::Display for DirectedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Shortest path from `from` to `to` using only the arcs of `paths`.
pub fn shortest_path_in_union(paths: &[&DirectedPath], from: Vertex, to: Vertex) -> Option<DirectedPath> {
    let mut arcs: Vec<(Vertex, Vertex)> = paths.iter().flat_map(|p| p.arc_pairs()).collect();
    arcs.sort_unstable();
    arcs.dedup();
    let mut pred = std::collections::BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = VertexSet::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut seq = vec![v];
            let mut cur = v;
            while let Some(&p) = pred.get(&cur) {
                seq.push(p);
                cur = p;
            }
            seq.reverse();
            return Some(DirectedPath::new(seq));
        }
        for &(a, b) in arcs.iter().filter(|(a, _)| *a == v) {
            debug_assert_eq!(a, v);
            if seen.insert(b) {
                pred.insert(b, v);
                queue.push_back(b);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn bioriented_clique(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    fn directed_cycle(n: usize) -> LabeledDigraph {
        LabeledDigraph::from_pairs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            LabeledDigraph::from_pairs(2, &[(0, 0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            LabeledDigraph::from_pairs(2, &[(0, 1), (0, 1)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            LabeledDigraph::from_pairs(2, &[(0, 2)]),
            Err(Error::Validation(_))
        ));
        // a digon is fine
        assert!(LabeledDigraph::from_pairs(2, &[(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn induced_examples() {
        let digon = LabeledDigraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let one = digon.induced(&set(&[0])).unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.arc_count(), 0);

        let k3 = bioriented_clique(3);
        let sub = k3.induced(&set(&[0, 1])).unwrap();
        assert_eq!(sub.arcs().len(), 2);
        assert!(sub.has_arc(0, 1) && sub.has_arc(1, 0));

        let tri = LabeledDigraph::new(3, [Arc::z1(0, 1), Arc::plain(1, 2), Arc::plain(2, 0)]).unwrap();
        assert_eq!(tri.induced(&set(&[0, 1, 2])).unwrap(), tri);

        assert!(matches!(digon.induced(&set(&[5])), Err(Error::InvalidArgument(_))));
        assert!(matches!(one.induced(&set(&[1])), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn induced_keeps_identifiers_and_labels() {
        let d = LabeledDigraph::new(4, [Arc::z1(1, 3), Arc::z2(3, 1), Arc::plain(0, 1)]).unwrap();
        let sub = d.induced(&set(&[1, 3])).unwrap();
        assert_eq!(sub.vertices(), &[1, 3]);
        assert_eq!(sub.universe(), 4);
        assert!(sub.find_arc(1, 3).unwrap().z1);
        assert!(sub.find_arc(3, 1).unwrap().z2);
        assert!(!sub.contains(0));
    }

    #[test]
    fn strong_component_examples() {
        assert_eq!(directed_cycle(3).strong_components(), vec![set(&[0, 1, 2])]);
        let path = LabeledDigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.strong_components(), vec![set(&[0]), set(&[1]), set(&[2])]);
        let two = LabeledDigraph::from_pairs(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        assert_eq!(two.strong_components(), vec![set(&[0, 1]), set(&[2, 3])]);
    }

    #[test]
    fn leveling_examples() {
        let k4 = bioriented_clique(4);
        let l = k4.leveling(0, Direction::Out).unwrap();
        assert_eq!(l.levels, vec![vec![0], vec![1, 2, 3]]);

        let c4 = directed_cycle(4);
        assert_eq!(
            c4.leveling(0, Direction::Out).unwrap().levels,
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        let inl = c4.leveling(0, Direction::In).unwrap();
        assert_eq!(inl.levels, vec![vec![0], vec![3], vec![2], vec![1]]);
        assert!(inl.is_valid_for(&c4));

        let path = LabeledDigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            path.leveling(0, Direction::Out),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(c4.leveling(9, Direction::Out), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn bfs_tree_examples() {
        let c3 = directed_cycle(3);
        let t = c3.bfs_tree(0, Direction::Out).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(0), None);

        let k3 = bioriented_clique(3);
        let t = k3.bfs_tree(0, Direction::Out).unwrap();
        assert_eq!((t.parent(1), t.parent(2)), (Some(0), Some(0)));

        let d = LabeledDigraph::from_pairs(3, &[(0, 1), (0, 2), (1, 2), (2, 0)]).unwrap();
        let t = d.bfs_tree(0, Direction::Out).unwrap();
        assert_eq!(t.parent(2), Some(0));
    }

    #[test]
    fn tree_path_examples() {
        let c4 = directed_cycle(4);
        let t = c4.bfs_tree(0, Direction::Out).unwrap();
        assert_eq!(t.tree_path(0).unwrap().length(), 0);
        assert_eq!(t.tree_path(2).unwrap().vertices(), &[0, 1, 2]);
        let tin = c4.bfs_tree(0, Direction::In).unwrap();
        assert_eq!(tin.tree_path(2).unwrap().vertices(), &[2, 3, 0]);
        assert!(matches!(t.tree_path(7), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn set_path_avoids_endpoint_sets() {
        let d = LabeledDigraph::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]).unwrap();
        let all = vec![true; 5];
        let p = d.shortest_set_path(&set(&[0]), &set(&[2, 4]), &all).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
        let mut no1 = all.clone();
        no1[1] = false;
        let p = d.shortest_set_path(&set(&[0]), &set(&[2]), &no1).unwrap();
        assert_eq!(p.vertices(), &[0, 3, 4, 2]);
    }

    #[test]
    fn union_shortcut() {
        let a = DirectedPath::new(vec![5, 1, 0]);
        let b = DirectedPath::new(vec![0, 2, 1, 3]);
        assert_eq!(shortest_path_in_union(&[&a, &b], 5, 3).unwrap().vertices(), &[5, 1, 3]);
    }
}
