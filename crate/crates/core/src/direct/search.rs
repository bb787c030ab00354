use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;

use crate::digraph::{DirectedPath, LabeledDigraph, Vertex, VertexSet};
use crate::error::Result;
use crate::modular::combine;
use crate::pattern::{SubdivisionPattern, SubdivisionWitness};

use super::residue::{for_each_residue_path, Budget, ResidueQuery, SearchOutcome, WalkTable};
use super::verify::verify_witness;

/// Complete search for a subdivision of `pattern` in `d` whose branching
/// paths meet their congruences.
///
/// Branch maps are enumerated with degree and pairwise walk-feasibility
/// pruning; each full map is routed arc by arc (most constrained first) with
/// backtracking over path choices. `Absent` means no subdivision exists.
pub fn find_subdivision(
    d: &LabeledDigraph,
    pattern: &SubdivisionPattern,
    budget: &Budget,
) -> Result<SearchOutcome<SubdivisionWitness>> {
    let k = pattern.vertex_count();
    if k > d.vertex_count() {
        return Ok(SearchOutcome::Absent);
    }
    if pattern.arc_count() == 0 {
        return Ok(SearchOutcome::Found(SubdivisionWitness {
            branch: d.vertices()[..k].to_vec(),
            paths: Vec::new(),
        }));
    }
    let n = d.universe();
    let mut tables: BTreeMap<u64, Vec<WalkTable>> = BTreeMap::new();
    for a in pattern.arcs() {
        let q = a.constraint.q;
        tables.entry(q).or_insert_with(|| {
            (0..n)
                .map(|t| WalkTable::build(d, q, t, |v| d.contains(v) && v != t))
                .collect()
        });
    }
    // pair_ok[e][s * n + t]: some walk s -> t (avoiding t inside) meets arc e's congruence
    let pair_ok: Vec<Vec<bool>> = pattern
        .arcs()
        .iter()
        .map(|a| {
            let c = a.constraint;
            let tabs = &tables[&c.q];
            let mut ok = vec![false; n * n];
            for &t in d.vertices() {
                for &s in d.vertices() {
                    if s != t {
                        ok[s * n + t] = tabs[t].offsets(s).any(|(d1, d2)| combine(c.a, c.b, d1, d2, c.q) == c.r);
                    }
                }
            }
            ok
        })
        .collect();

    let order = placement_order(pattern);
    let mut search = MapSearch {
        d,
        pattern,
        budget,
        tables,
        pair_ok,
        order,
        branch: vec![None; k],
        used: vec![false; n],
        out_of_budget: false,
        result: None,
    };
    search.place(0);
    Ok(match search.result {
        Some(w) => SearchOutcome::Found(w),
        None if search.out_of_budget => SearchOutcome::Indeterminate,
        None => SearchOutcome::Absent,
    })
}

/// Highest-degree vertex first, then repeatedly the vertex with most arcs
/// to those already placed.
fn placement_order(p: &SubdivisionPattern) -> Vec<usize> {
    let k = p.vertex_count();
    let degree = |v: usize| p.out_degree(v) + p.in_degree(v);
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = p
                    .arcs()
                    .iter()
                    .filter(|a| (a.tail == v && placed[a.head]) || (a.head == v && placed[a.tail]))
                    .count();
                (links, degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct MapSearch<'a> {
    d: &'a LabeledDigraph,
    pattern: &'a SubdivisionPattern,
    budget: &'a Budget,
    tables: BTreeMap<u64, Vec<WalkTable>>,
    pair_ok: Vec<Vec<bool>>,
    order: Vec<usize>,
    branch: Vec<Option<Vertex>>,
    used: Vec<bool>,
    out_of_budget: bool,
    result: Option<SubdivisionWitness>,
}

impl MapSearch<'_> {
    /// Returns true to stop (found or out of budget).
    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.route_all();
        }
        let p = self.order[i];
        let (need_out, need_in) = (self.pattern.out_degree(p), self.pattern.in_degree(p));
        let n = self.d.universe();
        for idx in 0..self.d.vertex_count() {
            let v = self.d.vertices()[idx];
            if self.used[v] || self.d.out_degree(v) < need_out || self.d.in_degree(v) < need_in {
                continue;
            }
            if !self.budget.tick() {
                self.out_of_budget = true;
                return true;
            }
            let consistent = self.pattern.arcs().iter().enumerate().all(|(e, a)| {
                if a.tail == p {
                    self.branch[a.head].is_none_or(|h| self.pair_ok[e][v * n + h])
                } else if a.head == p {
                    self.branch[a.tail].is_none_or(|t| self.pair_ok[e][t * n + v])
                } else {
                    true
                }
            });
            if !consistent {
                continue;
            }
            self.branch[p] = Some(v);
            self.used[v] = true;
            if self.place(i + 1) {
                return true;
            }
            self.branch[p] = None;
            self.used[v] = false;
        }
        false
    }

    fn route_all(&mut self) -> bool {
        let branch: Vec<Vertex> = self.branch.iter().map(|b| b.unwrap()).collect();
        // fewest qualifying offsets first
        let mut arcs: Vec<(usize, usize)> = self
            .pattern
            .arcs()
            .iter()
            .enumerate()
            .map(|(e, a)| {
                let c = a.constraint;
                let table = &self.tables[&c.q][branch[a.head]];
                let count = table
                    .offsets(branch[a.tail])
                    .filter(|&(d1, d2)| combine(c.a, c.b, d1, d2, c.q) == c.r)
                    .count();
                (count, e)
            })
            .collect();
        arcs.sort_unstable();
        let order: Vec<usize> = arcs.into_iter().map(|(_, e)| e).collect();
        let mut router = Router {
            d: self.d,
            pattern: self.pattern,
            budget: self.budget,
            branch: &branch,
            endpoints: branch.iter().copied().collect(),
            order: &order,
            paths: vec![None; self.pattern.arc_count()],
            used: VertexSet::new(),
            out_of_budget: false,
        };
        let done = router.route(0);
        let (routed, out_of_budget) = (router.paths, router.out_of_budget);
        if out_of_budget {
            self.out_of_budget = true;
            return true;
        }
        if done {
            let witness = SubdivisionWitness {
                branch,
                paths: routed.into_iter().map(|p| p.unwrap()).collect(),
            };
            debug_assert!(verify_witness(self.d, self.pattern, &witness).ok);
            self.result = Some(witness);
            return true;
        }
        false
    }
}

struct Router<'a> {
    d: &'a LabeledDigraph,
    pattern: &'a SubdivisionPattern,
    budget: &'a Budget,
    branch: &'a [Vertex],
    endpoints: VertexSet,
    order: &'a [usize],
    paths: Vec<Option<DirectedPath>>,
    /// Interior vertices of the paths routed so far.
    used: VertexSet,
    out_of_budget: bool,
}

impl Router<'_> {
    fn route(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let e = self.order[i];
        let a = self.pattern.arcs()[e];
        let c = a.constraint;
        let query = match ResidueQuery::new(self.branch[a.tail], self.branch[a.head], c.a, c.b, c.r as i64, c.q) {
            Ok(q) => q
                .with_endpoints(self.endpoints.iter().copied())
                .with_forbidden(self.used.iter().copied()),
            Err(_) => return false,
        };
        let mut tried: HashSet<Vec<Vertex>> = HashSet::new();
        let mut done = false;
        let d = self.d;
        let budget = self.budget;
        let outcome = for_each_residue_path(d, &query, budget, |p| {
            let interior = p.interior().to_vec();
            let mut key = interior.clone();
            key.sort_unstable();
            // the same interior blocks the same vertices for later arcs
            if !tried.insert(key) {
                return ControlFlow::Continue(());
            }
            self.used.extend(interior.iter().copied());
            self.paths[e] = Some(p.clone());
            if self.route(i + 1) {
                done = true;
                return ControlFlow::Break(());
            }
            for v in &interior {
                self.used.remove(v);
            }
            self.paths[e] = None;
            if self.out_of_budget {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        match outcome {
            Ok(SearchOutcome::Indeterminate) => {
                self.out_of_budget = true;
                false
            }
            Ok(_) => done,
            Err(_) => false,
        }
    }
}
