//! Undirected graphs with two edge classes, and subdivision search through
//! the biorientation.

use std::collections::BTreeMap;

use crate::digraph::{Arc, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::pattern::{Congruence, PatternArc, SubdivisionPattern};

use super::residue::{Budget, SearchOutcome};
use super::search::find_subdivision;
use super::verify::{Verdict, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    /// `u < v`.
    pub u: Vertex,
    pub v: Vertex,
    pub b1: bool,
    pub b2: bool,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex, b1: bool, b2: bool) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            b1,
            b2,
        }
    }
}

/// A simple graph on `0..n` with edge classes `B1`, `B2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedLabeledGraph {
    n: usize,
    edges: Vec<Edge>,
    index: BTreeMap<(Vertex, Vertex), usize>,
}

impl UndirectedLabeledGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.b1, e.b2)).collect();
        edges.sort();
        let mut index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(Error::Validation(format!("loop at {}", e.u)));
            }
            if e.v >= n {
                return Err(Error::Validation(format!(
                    "edge {}-{} leaves vertex range 0..{n}",
                    e.u, e.v
                )));
            }
            if index.insert((e.u, e.v), i).is_some() {
                return Err(Error::Validation(format!("duplicate edge {}-{}", e.u, e.v)));
            }
        }
        Ok(UndirectedLabeledGraph { n, edges, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, a: Vertex, b: Vertex) -> Option<&Edge> {
        self.index.get(&(a.min(b), a.max(b))).map(|&i| &self.edges[i])
    }

    /// `(|E(P) ∩ B1|, |E(P) ∩ B2|)` along a vertex sequence; `None` if a step is not an edge.
    pub fn label_counts(&self, walk: &[Vertex]) -> Option<(usize, usize)> {
        walk.windows(2).try_fold((0, 0), |(c1, c2), w| {
            let e = self.edge(w[0], w[1])?;
            Some((c1 + e.b1 as usize, c2 + e.b2 as usize))
        })
    }
}

/// Each edge `uv` becomes the digon `(u,v), (v,u)`, both arcs inheriting the
/// edge's classes.
pub fn biorient(g: &UndirectedLabeledGraph) -> LabeledDigraph {
    let arcs = g
        .edges()
        .iter()
        .flat_map(|e| [Arc::new(e.u, e.v, e.b1, e.b2), Arc::new(e.v, e.u, e.b1, e.b2)]);
    LabeledDigraph::new(g.n, arcs).expect("a simple graph bioriented is a valid digraph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternEdge {
    pub u: usize,
    pub v: usize,
    pub constraint: Congruence,
}

/// Undirected pattern `U`; edges sorted with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedPattern {
    vertex_count: usize,
    edges: Vec<PatternEdge>,
}

impl UndirectedPattern {
    pub fn new(vertex_count: usize, edges: Vec<PatternEdge>) -> Result<Self> {
        let mut edges: Vec<PatternEdge> = edges
            .into_iter()
            .map(|e| PatternEdge {
                u: e.u.min(e.v),
                v: e.u.max(e.v),
                ..e
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        // same checks as the directed pattern
        Self::oriented_arcs(vertex_count, &edges)?;
        Ok(UndirectedPattern { vertex_count, edges })
    }

    pub fn from_tuples(vertex_count: usize, edges: &[(usize, usize, i64, i64, i64, u64)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|&(u, v, a, b, r, q)| {
                Ok(PatternEdge {
                    u,
                    v,
                    constraint: Congruence::new(a, b, r, q)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[PatternEdge] {
        &self.edges
    }

    fn oriented_arcs(n: usize, edges: &[PatternEdge]) -> Result<SubdivisionPattern> {
        let arcs = edges
            .iter()
            .map(|e| PatternArc {
                tail: e.u,
                head: e.v,
                constraint: e.constraint,
            })
            .collect();
        SubdivisionPattern::new(n, arcs)
    }

    /// Each edge as one arc from its smaller to its larger end. Arc `i` is edge `i`.
    pub fn oriented(&self) -> SubdivisionPattern {
        Self::oriented_arcs(self.vertex_count, &self.edges).expect("validated on construction")
    }

    /// Each edge as a digon, both arcs carrying the edge's congruence.
    pub fn bioriented(&self) -> SubdivisionPattern {
        let arcs = self
            .edges
            .iter()
            .flat_map(|e| {
                [(e.u, e.v), (e.v, e.u)].map(|(tail, head)| PatternArc {
                    tail,
                    head,
                    constraint: e.constraint,
                })
            })
            .collect();
        SubdivisionPattern::new(self.vertex_count, arcs).expect("validated on construction")
    }
}

/// Branch vertices by pattern vertex; `paths[i]` runs from the image of edge
/// `i`'s smaller end to the image of its larger end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedWitness {
    pub branch: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

/// Which pattern is searched for in the bioriented host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndirectedMode {
    /// One arc per pattern edge. Equivalent to the undirected question: an
    /// undirected path is a directed path of the biorientation either way.
    #[default]
    Oriented,
    /// A digon per pattern edge, both arcs constrained. Stronger: needs two
    /// disjoint paths per edge. Only the path for the `(u, v)` arc is kept.
    Bioriented,
}

pub fn find_subdivision_undirected(
    g: &UndirectedLabeledGraph,
    pattern: &UndirectedPattern,
    mode: UndirectedMode,
    budget: &Budget,
) -> Result<SearchOutcome<UndirectedWitness>> {
    let d = biorient(g);
    let directed = match mode {
        UndirectedMode::Oriented => pattern.oriented(),
        UndirectedMode::Bioriented => pattern.bioriented(),
    };
    let outcome = find_subdivision(&d, &directed, budget)?;
    Ok(match outcome {
        SearchOutcome::Found(w) => {
            let paths = pattern
                .edges()
                .iter()
                .map(|e| {
                    let i = directed
                        .arcs()
                        .iter()
                        .position(|a| (a.tail, a.head) == (e.u, e.v))
                        .expect("every edge has its forward arc");
                    w.paths[i].vertices().to_vec()
                })
                .collect();
            SearchOutcome::Found(UndirectedWitness {
                branch: w.branch,
                paths,
            })
        }
        SearchOutcome::Absent => SearchOutcome::Absent,
        SearchOutcome::Indeterminate => SearchOutcome::Indeterminate,
    })
}

/// Injective branch map, each path a simple path of `g` between the images
/// of its edge's ends, internal disjointness, and the edge congruences.
pub fn verify_undirected_witness(
    g: &UndirectedLabeledGraph,
    pattern: &UndirectedPattern,
    w: &UndirectedWitness,
) -> Verdict {
    let check = || -> std::result::Result<(), Violation> {
        if w.branch.len() != pattern.vertex_count() || w.paths.len() != pattern.edges().len() {
            return Err(Violation::Shape(
                "branch or path count does not match the pattern".into(),
            ));
        }
        let mut images = VertexSet::new();
        for &v in &w.branch {
            if v >= g.vertex_count() || !images.insert(v) {
                return Err(Violation::Injectivity(format!("vertex {v} is not a fresh vertex of G")));
            }
        }
        for (i, (e, p)) in pattern.edges().iter().zip(&w.paths).enumerate() {
            let distinct: VertexSet = p.iter().copied().collect();
            if p.len() < 2 || distinct.len() != p.len() || g.label_counts(p).is_none() {
                return Err(Violation::Path(i, "not a simple path of G".into()));
            }
            let ends = (p[0], *p.last().unwrap());
            let want = (w.branch[e.u], w.branch[e.v]);
            if ends != want && ends != (want.1, want.0) {
                return Err(Violation::Endpoints(i, format!("joins {ends:?}, expected {want:?}")));
            }
        }
        let mut owner = BTreeMap::new();
        for (i, p) in w.paths.iter().enumerate() {
            for &v in &p[1..p.len() - 1] {
                if images.contains(&v) {
                    return Err(Violation::Disjointness(format!(
                        "path {i} passes through branch vertex {v}"
                    )));
                }
                if let Some(j) = owner.insert(v, i) {
                    return Err(Violation::Disjointness(format!(
                        "paths {j} and {i} share internal vertex {v}"
                    )));
                }
            }
        }
        for (i, (e, p)) in pattern.edges().iter().zip(&w.paths).enumerate() {
            let (c1, c2) = g.label_counts(p).unwrap();
            if !e.constraint.holds(c1, c2) {
                return Err(Violation::Congruence(
                    i,
                    format!("counts ({c1}, {c2}) miss residue {}", e.constraint.r),
                ));
            }
        }
        Ok(())
    };
    match check() {
        Ok(()) => Verdict {
            ok: true,
            violation: None,
            diagnostic: None,
        },
        Err(v) => Verdict {
            ok: false,
            diagnostic: Some(v.to_string()),
            violation: Some(v),
        },
    }
}

/// Largest graph `mu_star` accepts.
pub const MU_STAR_MAX_VERTICES: usize = 10;

/// Fewest parts in a vertex partition of `g` where no part contains a cycle
/// with `|E(C) ∩ B1| ≠ |E(C) ∩ B2|`. Exhaustive; for small graphs only.
pub fn mu_star(g: &UndirectedLabeledGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > MU_STAR_MAX_VERTICES {
        return Err(Error::invalid(format!(
            "mu_star is exhaustive; {n} vertices exceeds {MU_STAR_MAX_VERTICES}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let mut memo: BTreeMap<u32, bool> = BTreeMap::new();
    let mut good = |mask: u32| *memo.entry(mask).or_insert_with(|| part_is_balanced(g, mask));
    for k in 1..=n {
        let mut labels = vec![0usize; n];
        if partitions(&mut labels, 1, 1, k, &mut good) {
            return Ok(k);
        }
    }
    unreachable!("singletons are always balanced")
}

/// Restricted growth strings with at most `k` blocks.
fn partitions(labels: &mut [usize], i: usize, used: usize, k: usize, good: &mut impl FnMut(u32) -> bool) -> bool {
    if i == labels.len() {
        return (0..used).all(|b| {
            let mask = labels
                .iter()
                .enumerate()
                .filter(|&(_, &l)| l == b)
                .fold(0u32, |m, (v, _)| m | 1 << v);
            good(mask)
        });
    }
    for b in 0..(used + 1).min(k) {
        labels[i] = b;
        if partitions(labels, i + 1, used.max(b + 1), k, good) {
            return true;
        }
    }
    false
}

fn part_is_balanced(g: &UndirectedLabeledGraph, mask: u32) -> bool {
    let n = g.vertex_count();
    let inside = |v: Vertex| mask >> v & 1 == 1;
    let mut adj: Vec<Vec<(Vertex, i32)>> = vec![Vec::new(); n];
    for e in g.edges() {
        if inside(e.u) && inside(e.v) {
            let w = e.b1 as i32 - e.b2 as i32;
            adj[e.u].push((e.v, w));
            adj[e.v].push((e.u, w));
        }
    }
    // every cycle through its smallest vertex s, other vertices above s
    fn dfs(adj: &[Vec<(Vertex, i32)>], s: Vertex, v: Vertex, len: usize, weight: i32, on: &mut [bool]) -> bool {
        for &(w, x) in &adj[v] {
            if w == s && len >= 3 && weight + x != 0 {
                return false;
            }
            if w > s && !on[w] {
                on[w] = true;
                let ok = dfs(adj, s, w, len + 1, weight + x, on);
                on[w] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut on = vec![false; n];
    (0..n).filter(|&s| inside(s)).all(|s| {
        on[s] = true;
        let ok = dfs(&adj, s, s, 1, 0, &mut on);
        on[s] = false;
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu::mu_exact;

    fn complete(n: usize, b1: bool) -> UndirectedLabeledGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v, b1, false)));
        UndirectedLabeledGraph::new(n, edges).unwrap()
    }

    #[test]
    fn biorient_counts() {
        let g = UndirectedLabeledGraph::new(2, [Edge::new(0, 1, false, false)]).unwrap();
        assert_eq!(biorient(&g).arc_count(), 2);
        let d = biorient(&complete(3, true));
        assert_eq!(d.arcs().iter().filter(|a| a.z1).count(), 6);
        let c4 = UndirectedLabeledGraph::new(
            4,
            [
                Edge::new(0, 1, true, false),
                Edge::new(1, 2, false, false),
                Edge::new(2, 3, false, true),
                Edge::new(3, 0, false, false),
            ],
        )
        .unwrap();
        let d = biorient(&c4);
        assert_eq!(d.arc_count(), 8);
        assert_eq!(d.arcs().iter().filter(|a| a.z1).count(), 2);
        assert_eq!(d.arcs().iter().filter(|a| a.z2).count(), 2);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(UndirectedLabeledGraph::new(2, [Edge::new(1, 1, false, false)]).is_err());
        assert!(UndirectedLabeledGraph::new(2, [Edge::new(0, 1, false, false), Edge::new(1, 0, true, false)]).is_err());
    }

    #[test]
    fn odd_triangle_in_k5() {
        let g = complete(5, true);
        let u =
            UndirectedPattern::from_tuples(3, &[(0, 1, 1, 1, 1, 2), (1, 2, 1, 1, 1, 2), (0, 2, 1, 1, 1, 2)]).unwrap();
        for mode in [UndirectedMode::Oriented, UndirectedMode::Bioriented] {
            let w = find_subdivision_undirected(&g, &u, mode, &Budget::unlimited())
                .unwrap()
                .found()
                .unwrap();
            let v = verify_undirected_witness(&g, &u, &w);
            assert!(v.ok, "{:?}", v.diagnostic);
            assert!(w.paths.iter().all(|p| (p.len() - 1) % 2 == 1));
        }
    }

    #[test]
    fn single_edge_without_room() {
        let g = complete(2, true);
        let u = UndirectedPattern::from_tuples(2, &[(0, 1, 1, 1, 0, 2)]).unwrap();
        assert!(
            find_subdivision_undirected(&g, &u, UndirectedMode::Oriented, &Budget::unlimited())
                .unwrap()
                .is_absent()
        );
    }

    #[test]
    fn mu_star_small_cases() {
        // triangle with one B1 edge is unbalanced
        let g = UndirectedLabeledGraph::new(
            3,
            [
                Edge::new(0, 1, true, false),
                Edge::new(1, 2, false, false),
                Edge::new(0, 2, false, false),
            ],
        )
        .unwrap();
        assert_eq!(mu_star(&g).unwrap(), 2);
        // B1 and B2 edge cancel
        let g = UndirectedLabeledGraph::new(
            3,
            [
                Edge::new(0, 1, true, false),
                Edge::new(1, 2, false, true),
                Edge::new(0, 2, false, false),
            ],
        )
        .unwrap();
        assert_eq!(mu_star(&g).unwrap(), 1);
        assert_eq!(mu_star(&complete(4, true)).unwrap(), 2);
        let g = complete(5, true);
        assert!(mu_exact(&biorient(&g), None).unwrap().value >= mu_star(&g).unwrap());
    }
}
