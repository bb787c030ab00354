//! Level splits and connector sets.
//!
//! A leveling of a strongly connected digraph always has a level containing a
//! strong component `H` with `mu(H) >= ceil(mu(D) / 2)` (odd and even levels
//! can be coloured with disjoint palettes). Two such splits, one along an
//! in-leveling and one along an out-leveling, give a *connector set* `X`:
//! `D[X]` is strongly connected, keeps a quarter of mu, and every ordered pair
//! of `X` is joined by an `X`-path. Iterating gives a nested sequence whose
//! connecting paths live in pairwise disjoint layers.

use std::fmt;

use crate::constructive::Stage;
use crate::digraph::{
    shortest_path_in_union, BfsTree, DirectedPath, Direction, LabeledDigraph, Leveling, Vertex, VertexSet,
};
use crate::error::{Error, Result};
use crate::oracle::{MuOracle, OracleKind};

/// Why a structural result is not fully certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Caveat {
    /// The oracle could not evaluate a subset the construction needed.
    OracleUnavailable { subset_size: usize },
    /// The split fell back to level 0, i.e. to the starting vertex alone.
    DegenerateLevel,
    /// mu of the input is below the value the guarantee is proven for (or unknown).
    BelowThreshold { mu: Option<usize>, threshold: u128 },
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caveat::OracleUnavailable { subset_size } => {
                write!(f, "oracle unavailable on a subset of size {subset_size}")
            }
            Caveat::DegenerateLevel => f.write_str("degenerate split at level 0"),
            Caveat::BelowThreshold {
                mu: Some(mu),
                threshold,
            } => {
                write!(f, "mu = {mu} is below the proven threshold {threshold}")
            }
            Caveat::BelowThreshold { mu: None, threshold } => {
                write!(f, "mu unknown; proven threshold is {threshold}")
            }
        }
    }
}

pub(crate) fn push_caveat(list: &mut Vec<Caveat>, c: Caveat) {
    if !list.contains(&c) {
        list.push(c);
    }
}

/// Oracle value of a subset; unavailability becomes a caveat and `None`.
pub(crate) fn query(
    oracle: &dyn MuOracle,
    d: &LabeledDigraph,
    set: &VertexSet,
    caveats: &mut Vec<Caveat>,
) -> Result<Option<usize>> {
    match oracle.mu(d, set) {
        Ok(v) => Ok(Some(v)),
        Err(Error::OracleUnavailable(_)) => {
            push_caveat(caveats, Caveat::OracleUnavailable { subset_size: set.len() });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn threshold_check(mu: Option<usize>, threshold: u128, caveats: &mut Vec<Caveat>) {
    if mu.is_none_or(|m| (m as u128) < threshold) {
        push_caveat(caveats, Caveat::BelowThreshold { mu, threshold });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSplitResult {
    pub level_index: usize,
    /// Vertex set of a strong component of `D[L_i]`.
    pub component: VertexSet,
    /// `None` if the oracle could not evaluate it.
    pub mu_of_component: Option<usize>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

/// Among all strong components of all levels, the one of largest oracle mu
/// (ties: lowest level, then smallest leading vertex).
///
/// With an exact oracle the result satisfies `mu(H) >= ceil(mu(D) / 2)`.
/// Components the oracle cannot evaluate are skipped and flagged; if none can
/// be evaluated the largest component is returned unverified.
pub fn level_split(d: &LabeledDigraph, leveling: &Leveling, oracle: &dyn MuOracle) -> Result<LevelSplitResult> {
    if !d.is_strongly_connected() {
        return Err(Error::precondition("level split requires a strongly connected digraph"));
    }
    if !leveling.is_valid_for(d) {
        return Err(Error::invalid("leveling does not belong to this digraph"));
    }
    let mut caveats = Vec::new();
    // (mu, level, component)
    let mut best: Option<(usize, usize, VertexSet)> = None;
    let mut fallback: Option<(usize, VertexSet)> = None;
    for (i, level) in leveling.levels.iter().enumerate() {
        let sub = d.induced(&level.iter().copied().collect())?;
        for comp in sub.strong_components() {
            if fallback.as_ref().is_none_or(|(_, c)| comp.len() > c.len()) {
                fallback = Some((i, comp.clone()));
            }
            let Some(mu) = query(oracle, d, &comp, &mut caveats)? else {
                continue;
            };
            if best.as_ref().is_none_or(|(m, _, _)| mu > *m) {
                best = Some((mu, i, comp));
            }
        }
    }
    let (level_index, component, mu_of_component) = match best {
        Some((mu, i, c)) => (i, c, Some(mu)),
        None => {
            let (i, c) = fallback.expect("a leveling has at least one level");
            (i, c, None)
        }
    };
    if level_index == 0 {
        push_caveat(&mut caveats, Caveat::DegenerateLevel);
    }
    Ok(LevelSplitResult {
        level_index,
        component,
        mu_of_component,
        oracle: oracle.kind(),
        caveats,
    })
}

/// Output of [`connector_set`], with the witnesses needed to build every
/// `X`-path on demand.
#[derive(Debug, Clone)]
pub struct ConnectorSet {
    /// The connector set `X`.
    pub set: VertexSet,
    /// Start of the in-leveling.
    pub x0: Vertex,
    /// The first split `X1 ⊇ X`.
    pub outer: VertexSet,
    /// Where the entry path from `x0` first meets `X1`; start of the out-leveling.
    pub x1: Vertex,
    /// Directed `(x0, X1)`-path ending at `x1`.
    pub entry: DirectedPath,
    pub outer_level: usize,
    pub inner_level: usize,
    pub mu_input: Option<usize>,
    pub mu_outer: Option<usize>,
    pub mu_set: Option<usize>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
    escape_tree: BfsTree,
    descent_tree: BfsTree,
}

pub const CONNECTOR_THRESHOLD: u128 = 8;

/// Connector set of a strongly connected digraph; `start` overrides the
/// in-leveling's starting vertex (default: smallest vertex).
pub fn connector_set(d: &LabeledDigraph, oracle: &dyn MuOracle, start: Option<Vertex>) -> Result<ConnectorSet> {
    if !d.is_strongly_connected() {
        return Err(Error::precondition(
            "connector set requires a strongly connected digraph",
        ));
    }
    let x0 = match start {
        Some(v) if d.contains(v) => v,
        Some(v) => return Err(Error::invalid(format!("start vertex {v} is not in the digraph"))),
        None => d.vertices()[0],
    };
    let mut caveats = Vec::new();
    let mu_input = query(oracle, d, &d.vertex_set(), &mut caveats)?;
    threshold_check(mu_input, CONNECTOR_THRESHOLD, &mut caveats);

    let in_leveling = d.leveling(x0, Direction::In)?;
    let outer_split = level_split(d, &in_leveling, oracle)?;
    caveats.extend(outer_split.caveats.iter().cloned());
    let outer = outer_split.component;
    let escape_tree = d.bfs_tree(x0, Direction::In)?;

    let all = vec![true; d.universe()];
    let entry = d
        .shortest_set_path(&VertexSet::from([x0]), &outer, &all)
        .ok_or_else(|| Error::construction(Stage::ConnectorPath, "no path from x0 into X1"))?;
    let x1 = entry.last();

    let d1 = d.induced(&outer)?;
    let out_leveling = d1.leveling(x1, Direction::Out)?;
    let inner_split = level_split(&d1, &out_leveling, oracle)?;
    for c in &inner_split.caveats {
        push_caveat(&mut caveats, c.clone());
    }
    let descent_tree = d1.bfs_tree(x1, Direction::Out)?;

    Ok(ConnectorSet {
        set: inner_split.component,
        x0,
        outer,
        x1,
        entry,
        outer_level: outer_split.level_index,
        inner_level: inner_split.level_index,
        mu_input,
        mu_outer: outer_split.mu_of_component,
        mu_set: inner_split.mu_of_component,
        oracle: oracle.kind(),
        caveats,
        escape_tree,
        descent_tree,
    })
}

impl ConnectorSet {
    /// Path from `u ∈ X1` to `x0` along the in-leveling; meets `X1` only at `u`.
    pub fn escape_path(&self, u: Vertex) -> Result<DirectedPath> {
        self.escape_tree.tree_path(u)
    }

    /// Path from `x1` to `u ∈ X` inside `D[X1]`; meets `X` only at `u`.
    pub fn descent_path(&self, u: Vertex) -> Result<DirectedPath> {
        self.descent_tree.tree_path(u)
    }

    /// The `X`-path from `x` to `y`: shortest `(x, x1)`-route through the
    /// escape path and the entry path, followed by the descent path to `y`.
    /// The result is checked before it is returned.
    pub fn x_path(&self, d: &LabeledDigraph, x: Vertex, y: Vertex) -> Result<DirectedPath> {
        if x == y || !self.set.contains(&x) || !self.set.contains(&y) {
            return Err(Error::invalid(format!(
                "({x}, {y}) is not a pair of distinct connector vertices"
            )));
        }
        let escape = self.escape_path(x)?;
        let route = shortest_path_in_union(&[&escape, &self.entry], x, self.x1)
            .ok_or_else(|| Error::construction(Stage::ConnectorPath, "escape and entry paths do not connect"))?;
        let path = route.join(&self.descent_path(y)?);
        check_set_path(d, &path, &self.set).map_err(|e| Error::construction(Stage::ConnectorPath, e.to_string()))?;
        Ok(path)
    }

    /// Every ordered pair's `X`-path.
    pub fn all_paths(&self, d: &LabeledDigraph) -> Result<Vec<((Vertex, Vertex), DirectedPath)>> {
        let mut out = Vec::new();
        for &x in &self.set {
            for &y in &self.set {
                if x != y {
                    out.push(((x, y), self.x_path(d, x, y)?));
                }
            }
        }
        Ok(out)
    }

    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

/// A simple path of `d` whose endpoints are distinct members of `set` and whose
/// internal vertices avoid `set`.
pub fn check_set_path(d: &LabeledDigraph, path: &DirectedPath, set: &VertexSet) -> Result<()> {
    path.validate(d)?;
    if path.length() == 0 {
        return Err(Error::invalid("an X-path joins two distinct vertices"));
    }
    if !set.contains(&path.first()) || !set.contains(&path.last()) {
        return Err(Error::invalid("X-path endpoints must lie in X"));
    }
    if let Some(v) = path.interior().iter().find(|v| set.contains(v)) {
        return Err(Error::invalid(format!("X-path passes through {v} in X")));
    }
    Ok(())
}

/// `S0 ⊇ S1 ⊇ ... ⊇ Sm` built by iterating [`connector_set`].
#[derive(Debug, Clone)]
pub struct NestedSequence {
    pub sets: Vec<VertexSet>,
    /// `connectors[i]` produced `sets[i + 1]` inside `D[sets[i]]`.
    pub connectors: Vec<ConnectorSet>,
    /// Oracle mu of each `S_i`.
    pub mu: Vec<Option<usize>>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

pub fn nested_threshold(m: usize) -> u128 {
    1u128 << (2 * m + 1).min(127)
}

pub fn nested_connector_sequence(d: &LabeledDigraph, m: usize, oracle: &dyn MuOracle) -> Result<NestedSequence> {
    if !d.is_strongly_connected() {
        return Err(Error::precondition(
            "nested sequence requires a strongly connected digraph",
        ));
    }
    let mut caveats = Vec::new();
    let mut sets = vec![d.vertex_set()];
    let mut mu = vec![query(oracle, d, &sets[0], &mut caveats)?];
    if m > 0 {
        threshold_check(mu[0], nested_threshold(m), &mut caveats);
    }
    let mut connectors = Vec::with_capacity(m);
    for _ in 0..m {
        let host = d.induced(sets.last().unwrap())?;
        let c = connector_set(&host, oracle, None)?;
        for cav in &c.caveats {
            // per-step thresholds are implied by the overall one
            if !matches!(cav, Caveat::BelowThreshold { .. }) {
                push_caveat(&mut caveats, cav.clone());
            }
        }
        sets.push(c.set.clone());
        mu.push(c.mu_set);
        connectors.push(c);
    }
    Ok(NestedSequence {
        sets,
        connectors,
        mu,
        oracle: oracle.kind(),
        caveats,
    })
}

impl NestedSequence {
    pub fn depth(&self) -> usize {
        self.connectors.len()
    }

    pub fn innermost(&self) -> &VertexSet {
        self.sets.last().unwrap()
    }

    /// `S_{i-1} \ S_i` for `i` in `1..=m`.
    pub fn layer(&self, i: usize) -> VertexSet {
        self.sets[i - 1].difference(&self.sets[i]).copied().collect()
    }

    /// An `S_m`-path from `x` to `y` inside `D[S_m ∪ (S_{i-1} \ S_i)]`.
    pub fn locality_path(&self, d: &LabeledDigraph, i: usize, x: Vertex, y: Vertex) -> Result<DirectedPath> {
        if i == 0 || i > self.depth() {
            return Err(Error::invalid(format!("layer index {i} outside 1..={}", self.depth())));
        }
        let inner = self.innermost();
        if !inner.contains(&x) || !inner.contains(&y) {
            return Err(Error::invalid("locality paths join vertices of the innermost set"));
        }
        let host = d.induced(&self.sets[i - 1])?;
        self.connectors[i - 1].x_path(&host, x, y)
    }

    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Arc;
    use crate::oracle::{CliqueOracle, ExactOracle, HintOracle};

    fn clique_z1(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    #[test]
    fn level_split_on_clique() {
        let d = clique_z1(5);
        let o = CliqueOracle::new(&d).unwrap();
        let l = d.leveling(0, Direction::Out).unwrap();
        let r = level_split(&d, &l, &o).unwrap();
        assert_eq!(r.level_index, 1);
        assert_eq!(r.component, [1, 2, 3, 4].into_iter().collect());
        assert_eq!(r.mu_of_component, Some(4));
        assert!(r.caveats.is_empty());
    }

    #[test]
    fn level_split_on_unbalanced_c4() {
        let d = LabeledDigraph::new(4, (0..4).map(|i| Arc::new(i, (i + 1) % 4, i == 0, false))).unwrap();
        let l = d.leveling(0, Direction::Out).unwrap();
        let r = level_split(&d, &l, &ExactOracle::new()).unwrap();
        assert_eq!(r.mu_of_component, Some(1));
        // every level is a singleton; the tie goes to level 0
        assert_eq!(r.level_index, 0);
        assert!(r.caveats.contains(&Caveat::DegenerateLevel));
    }

    #[test]
    fn level_split_precondition() {
        let d = LabeledDigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let c = clique_z1(3);
        let l = c.leveling(0, Direction::Out).unwrap();
        assert!(matches!(
            level_split(&d, &l, &ExactOracle::new()),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn level_split_without_oracle_values() {
        let d = clique_z1(4);
        let l = d.leveling(0, Direction::Out).unwrap();
        let r = level_split(&d, &l, &HintOracle::default()).unwrap();
        assert_eq!(r.mu_of_component, None);
        assert_eq!(r.component.len(), 3);
        assert!(matches!(r.caveats[0], Caveat::OracleUnavailable { .. }));
    }

    #[test]
    fn connector_on_cliques() {
        for n in [8, 12] {
            let d = clique_z1(n);
            let o = CliqueOracle::new(&d).unwrap();
            let c = connector_set(&d, &o, None).unwrap();
            assert!(c.set.len() * 4 >= n);
            assert!(d.induced(&c.set).unwrap().is_strongly_connected());
            for ((x, y), p) in c.all_paths(&d).unwrap() {
                assert_eq!((p.first(), p.last()), (x, y));
                check_set_path(&d, &p, &c.set).unwrap();
            }
            assert!(c.is_certified());
        }
    }

    #[test]
    fn connector_witness_shapes() {
        let d = clique_z1(10);
        let o = CliqueOracle::new(&d).unwrap();
        let c = connector_set(&d, &o, None).unwrap();
        for &u in &c.outer {
            let p = c.escape_path(u).unwrap();
            assert_eq!(p.vertices().iter().filter(|v| c.outer.contains(v)).count(), 1);
            assert_eq!(p.first(), u);
            assert_eq!(p.last(), c.x0);
        }
        for &u in &c.set {
            let p = c.descent_path(u).unwrap();
            let hits: Vec<_> = p.vertices().iter().filter(|v| c.set.contains(v)).collect();
            assert_eq!(hits, vec![&u]);
            assert_eq!(p.last(), u);
        }
    }

    #[test]
    fn connector_below_threshold_is_flagged() {
        let d = clique_z1(2);
        let o = CliqueOracle::new(&d).unwrap();
        let c = connector_set(&d, &o, None).unwrap();
        assert!(!c.is_certified());
        assert!(c.caveats.iter().any(|c| matches!(c, Caveat::BelowThreshold { .. })));
    }

    #[test]
    fn nested_sequence_on_k32() {
        let d = clique_z1(32);
        let o = CliqueOracle::new(&d).unwrap();
        let s = nested_connector_sequence(&d, 2, &o).unwrap();
        assert_eq!(s.sets.len(), 3);
        assert!(s.innermost().len() >= 2);
        for i in 1..=2 {
            assert!(s.sets[i].is_subset(&s.sets[i - 1]));
            let layer = s.layer(i);
            for &x in s.innermost() {
                for &y in s.innermost() {
                    if x == y {
                        continue;
                    }
                    let p = s.locality_path(&d, i, x, y).unwrap();
                    assert!(p.interior().iter().all(|v| layer.contains(v)));
                }
            }
        }
    }

    #[test]
    fn nested_sequence_m0() {
        let d = clique_z1(3);
        let o = CliqueOracle::new(&d).unwrap();
        let s = nested_connector_sequence(&d, 0, &o).unwrap();
        assert_eq!(s.sets, vec![d.vertex_set()]);
        assert!(s.is_certified());
    }
}
