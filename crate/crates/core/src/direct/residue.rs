use std::cell::Cell;
use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::digraph::{DirectedPath, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::modular::{combine, coprime, reduce};

/// Path from `from` to `to` with `a |P ∩ Z1| + b |P ∩ Z2| ≡ target (mod q)`,
/// internal vertices outside `endpoints` and `forbidden`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueQuery {
    pub a: i64,
    pub b: i64,
    pub q: u64,
    /// Reduced to `0..q`.
    pub target: u64,
    pub from: Vertex,
    pub to: Vertex,
    /// The set `X`; always contains `from` and `to`.
    pub endpoints: VertexSet,
    pub forbidden: VertexSet,
}

impl ResidueQuery {
    pub fn new(from: Vertex, to: Vertex, a: i64, b: i64, target: i64, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("modulus {q} must be at least 2")));
        }
        if !coprime(a, q) || !coprime(b, q) {
            return Err(Error::invalid(format!(
                "coefficients ({a}, {b}) must be coprime to {q}"
            )));
        }
        if from == to {
            return Err(Error::invalid("a residue path joins two distinct vertices"));
        }
        Ok(ResidueQuery {
            a,
            b,
            q,
            target: reduce(target, q),
            from,
            to,
            endpoints: VertexSet::from([from, to]),
            forbidden: VertexSet::new(),
        })
    }

    /// Adds `x` to the endpoint set `X` that internal vertices must avoid.
    pub fn with_endpoints(mut self, x: impl IntoIterator<Item = Vertex>) -> Self {
        self.endpoints.extend(x);
        self
    }

    pub fn with_forbidden(mut self, f: impl IntoIterator<Item = Vertex>) -> Self {
        self.forbidden.extend(f);
        self
    }

    pub fn value(&self, z1: usize, z2: usize) -> u64 {
        combine(self.a, self.b, z1 as u64, z2 as u64, self.q)
    }

    fn check(&self, d: &LabeledDigraph) -> Result<()> {
        for v in [self.from, self.to] {
            if !d.contains(v) {
                return Err(Error::invalid(format!("vertex {v} is not in the digraph")));
            }
        }
        Ok(())
    }
}

/// Node-expansion allowance shared by a whole search.
#[derive(Debug)]
pub struct Budget {
    limit: Option<u64>,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit: Some(limit),
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            used: Cell::new(0),
        }
    }

    /// Counts one expansion; false once the limit is passed.
    pub fn tick(&self) -> bool {
        let u = self.used.get() + 1;
        self.used.set(u);
        self.limit.is_none_or(|l| u <= l)
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn exhausted(&self) -> bool {
        self.limit.is_some_and(|l| self.used.get() > l)
    }
}

/// Three-valued search result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted: nothing exists.
    Absent,
    /// The budget ran out first.
    Indeterminate,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }
}

/// Which `(|Z1| mod q, |Z2| mod q)` offsets each vertex can still add on a
/// walk to `to` whose internal vertices pass `interior`. `to` is never
/// internal.
#[derive(Debug, Clone)]
pub struct WalkTable {
    q: usize,
    to: Vertex,
    reach: Vec<bool>,
}

impl WalkTable {
    pub fn build(d: &LabeledDigraph, q: u64, to: Vertex, interior: impl Fn(Vertex) -> bool) -> Self {
        let q = q as usize;
        let qq = q * q;
        let mut reach = vec![false; d.universe() * qq];
        let mut queue = VecDeque::new();
        reach[to * qq] = true;
        queue.push_back((to, 0usize, 0usize));
        while let Some((w, c1, c2)) = queue.pop_front() {
            if w == to && (c1, c2) != (0, 0) {
                continue;
            }
            if w != to && !interior(w) {
                continue;
            }
            for &(v, id) in d.in_arcs(w) {
                let arc = d.arc(id);
                let n1 = (c1 + arc.z1 as usize) % q;
                let n2 = (c2 + arc.z2 as usize) % q;
                let slot = v * qq + n1 * q + n2;
                if !reach[slot] {
                    reach[slot] = true;
                    queue.push_back((v, n1, n2));
                }
            }
        }
        WalkTable { q, to, reach }
    }

    pub fn target(&self) -> Vertex {
        self.to
    }

    pub fn reaches(&self, v: Vertex, c1: u64, c2: u64) -> bool {
        let q = self.q;
        self.reach[v * q * q + (c1 as usize % q) * q + c2 as usize % q]
    }

    /// Offsets available from `v`.
    pub fn offsets(&self, v: Vertex) -> impl Iterator<Item = (u64, u64)> + '_ {
        let q = self.q;
        (0..q * q)
            .filter(move |&i| self.reach[v * q * q + i])
            .map(move |i| ((i / q) as u64, (i % q) as u64))
    }

    /// Per vertex, which values of `a d1 + b d2 mod q` the offsets give.
    fn completions(&self, a: i64, b: i64, n: usize) -> Vec<bool> {
        let q = self.q;
        let mut out = vec![false; n * q];
        for v in 0..n {
            for (d1, d2) in self.offsets(v) {
                out[v * q + combine(a, b, d1, d2, q as u64) as usize] = true;
            }
        }
        out
    }
}

/// First qualifying path in depth-first order (neighbours by identifier).
pub fn residue_path(d: &LabeledDigraph, query: &ResidueQuery, budget: &Budget) -> Result<SearchOutcome<DirectedPath>> {
    let mut found = None;
    let outcome = for_each_residue_path(d, query, budget, |p| {
        found = Some(p.clone());
        ControlFlow::Break(())
    })?;
    Ok(match outcome {
        SearchOutcome::Found(()) => SearchOutcome::Found(found.unwrap()),
        SearchOutcome::Absent => SearchOutcome::Absent,
        SearchOutcome::Indeterminate => SearchOutcome::Indeterminate,
    })
}

/// Calls `visit` on every qualifying path in depth-first order until it
/// breaks (`Found`), the space is exhausted (`Absent`), or the budget runs out.
pub fn for_each_residue_path(
    d: &LabeledDigraph,
    query: &ResidueQuery,
    budget: &Budget,
    mut visit: impl FnMut(&DirectedPath) -> ControlFlow<()>,
) -> Result<SearchOutcome<()>> {
    query.check(d)?;
    if query.forbidden.contains(&query.from) || query.forbidden.contains(&query.to) {
        return Ok(SearchOutcome::Absent);
    }
    let n = d.universe();
    let mut blocked = vec![true; n];
    for &v in d.vertices() {
        blocked[v] = query.endpoints.contains(&v) || query.forbidden.contains(&v);
    }
    let table = WalkTable::build(d, query.q, query.to, |v| !blocked[v]);
    let mut search = PathSearch {
        d,
        query,
        budget,
        completes: table.completions(query.a, query.b, n),
        blocked,
        stack: vec![query.from],
        out_of_budget: false,
    };
    if !search.feasible(query.from, 0, 0) {
        return Ok(SearchOutcome::Absent);
    }
    let flow = search.extend(0, 0, &mut visit);
    Ok(if search.out_of_budget {
        SearchOutcome::Indeterminate
    } else if flow.is_break() {
        SearchOutcome::Found(())
    } else {
        SearchOutcome::Absent
    })
}

struct PathSearch<'a> {
    d: &'a LabeledDigraph,
    query: &'a ResidueQuery,
    budget: &'a Budget,
    completes: Vec<bool>,
    /// Endpoint set, forbidden vertices, and the current path.
    blocked: Vec<bool>,
    stack: Vec<Vertex>,
    out_of_budget: bool,
}

impl PathSearch<'_> {
    fn feasible(&self, v: Vertex, c1: u64, c2: u64) -> bool {
        let q = self.query.q;
        let have = combine(self.query.a, self.query.b, c1, c2, q);
        let need = (self.query.target + q - have) % q;
        self.completes[v * q as usize + need as usize]
    }

    fn extend(
        &mut self,
        c1: u64,
        c2: u64,
        visit: &mut impl FnMut(&DirectedPath) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if !self.budget.tick() {
            self.out_of_budget = true;
            return ControlFlow::Break(());
        }
        let q = self.query.q;
        let v = *self.stack.last().unwrap();
        for &(w, id) in self.d.out_arcs(v) {
            let arc = self.d.arc(id);
            let (n1, n2) = ((c1 + arc.z1 as u64) % q, (c2 + arc.z2 as u64) % q);
            if w == self.query.to {
                if self.query.value(n1 as usize, n2 as usize) == self.query.target {
                    self.stack.push(w);
                    let flow = visit(&DirectedPath::new(self.stack.clone()));
                    self.stack.pop();
                    if flow.is_break() {
                        return flow;
                    }
                }
                continue;
            }
            if self.blocked[w] || !self.feasible(w, n1, n2) {
                continue;
            }
            self.blocked[w] = true;
            self.stack.push(w);
            let flow = self.extend(n1, n2, visit);
            self.stack.pop();
            self.blocked[w] = false;
            if flow.is_break() {
                return flow;
            }
        }
        ControlFlow::Continue(())
    }
}
