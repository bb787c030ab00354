use std::collections::BTreeMap;

use crate::decomposition::{level_split, push_caveat, query, threshold_check, Caveat};
use crate::digraph::{DirectedPath, Direction, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::{MuOracle, OracleKind};

use super::cycle::{two_arc_cycle, TwoArcCycle};
use super::verify::check_special_set;
use super::{threshold_specialset, ConstructiveConfig, Stage};

/// Sets `U ⊆ Y ⊆ V(D) \ {x}`, a vertex `w`, and a path `P` in `D[Y]` that
/// starts with a `Z1 Δ Z2` arc and meets `U` only at its last vertex `w`.
/// Both of the first two vertices of `P` are reached from `x` through
/// `V(D) \ Y` with label counts `(r, s)` modulo `q`.
#[derive(Debug, Clone)]
pub struct SpecialSetResult {
    pub x: Vertex,
    pub q: u64,
    pub u: VertexSet,
    pub y: VertexSet,
    pub w: Vertex,
    pub path: DirectedPath,
    /// `|A(Q) ∩ Z1| mod q` for the entry paths.
    pub r: u64,
    /// `|A(Q) ∩ Z2| mod q` for the entry paths.
    pub s: u64,
    /// Paths from `x` to the first and to the second vertex of `path`.
    pub entry_paths: [DirectedPath; 2],
    /// The residue class `Y*` and its shrunk core `Y**`.
    pub class: VertexSet,
    pub core: VertexSet,
    pub cycle: TwoArcCycle,
    pub level_index: usize,
    pub mu_input: Option<usize>,
    pub mu_y: Option<usize>,
    pub mu_core: Option<usize>,
    pub mu_u: Option<usize>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

impl SpecialSetResult {
    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

pub fn special_set(
    d: &LabeledDigraph,
    x: Vertex,
    q: u64,
    oracle: &dyn MuOracle,
    config: &ConstructiveConfig,
) -> Result<SpecialSetResult> {
    if !d.contains(x) {
        return Err(Error::invalid(format!("vertex {x} is not in the digraph")));
    }
    if q < 2 {
        return Err(Error::invalid(format!("modulus {q} must be at least 2")));
    }
    if !d.is_strongly_connected() {
        return Err(Error::precondition("special set requires a strongly connected digraph"));
    }
    let mut caveats = Vec::new();
    let mu_input = query(oracle, d, &d.vertex_set(), &mut caveats)?;
    threshold_check(mu_input, threshold_specialset(q).unwrap_or(u128::MAX), &mut caveats);

    let tree = d.bfs_tree(x, Direction::Out)?;
    let leveling = d.leveling(x, Direction::Out)?;
    let split = level_split(d, &leveling, oracle)?;
    merge(&mut caveats, &split.caveats);
    if split.level_index == 0 {
        return Err(Error::construction(Stage::LevelSplit, "the split kept only the root"));
    }
    let y = split.component;

    // tree paths reach Y through earlier levels only
    let mut classes: BTreeMap<(u64, u64), VertexSet> = BTreeMap::new();
    for &v in &y {
        let (c1, c2) = tree.tree_path(v)?.label_counts(d)?;
        classes.entry((c1 as u64 % q, c2 as u64 % q)).or_default().insert(v);
    }
    let mut best: Option<((u64, u64), usize)> = None;
    for (key, members) in &classes {
        if let Some(mu) = query(oracle, d, members, &mut caveats)? {
            if best.is_none_or(|(_, m)| mu > m) {
                best = Some((*key, mu));
            }
        }
    }
    let (key, mu_class) = match best {
        Some((k, m)) => (k, Some(m)),
        None => {
            let (k, _) = classes
                .iter()
                .max_by_key(|(k, m)| (m.len(), std::cmp::Reverse(**k)))
                .ok_or_else(|| Error::construction(Stage::ResidueClasses, "empty split"))?;
            (*k, None)
        }
    };
    let (r, s) = key;
    let class = classes.remove(&key).unwrap();

    let target = mu_class.map(|m| m.min(config.floor));
    let core = minimal_subset(d, &class, target, oracle, &mut caveats)?;
    if core.len() < 2 {
        return Err(Error::construction(
            Stage::Shrink,
            "residue class core has fewer than two vertices",
        ));
    }
    let mu_core = query(oracle, d, &core, &mut caveats)?;
    let cycle = two_arc_cycle(&d.induced(&core)?, oracle).map_err(|e| e.within(Stage::TwoArcCycle))?;
    merge(&mut caveats, &cycle.caveats);

    let residual: VertexSet = y.difference(&core).copied().collect();
    if residual.is_empty() {
        return Err(Error::construction(
            Stage::ResidualSet,
            "nothing of Y is left outside the core",
        ));
    }
    let mu_residual = query(oracle, d, &residual, &mut caveats)?;
    let u = minimal_subset(d, &residual, mu_residual, oracle, &mut caveats)?;
    let mu_u = query(oracle, d, &u, &mut caveats)?;

    let on_cycle = cycle.cycle.vertex_set();
    let bridge = d
        .shortest_set_path(&on_cycle, &u, &d.mask(&y))
        .ok_or_else(|| Error::construction(Stage::Route, "no path from the cycle to U inside Y"))?;
    let path = cut_cycle(d, cycle.cycle.vertices(), &bridge)
        .ok_or_else(|| Error::construction(Stage::Route, "cycle has no usable Z1 Δ Z2 arc"))?;
    let w = path.last();
    let entry_paths = [tree.tree_path(path.vertices()[0])?, tree.tree_path(path.vertices()[1])?];

    let result = SpecialSetResult {
        x,
        q,
        u,
        y,
        w,
        path,
        r,
        s,
        entry_paths,
        class,
        core,
        cycle,
        level_index: split.level_index,
        mu_input,
        mu_y: split.mu_of_component,
        mu_core,
        mu_u,
        oracle: oracle.kind(),
        caveats,
    };
    check_special_set(d, &result).map_err(|v| Error::construction(Stage::Verification, v.to_string()))?;
    Ok(result)
}

fn merge(into: &mut Vec<Caveat>, from: &[Caveat]) {
    for c in from {
        if !matches!(c, Caveat::BelowThreshold { .. }) {
            push_caveat(into, c.clone());
        }
    }
}

/// Strong component of `D[set]` with the largest oracle mu (ties: smallest
/// leading vertex; largest component when nothing can be evaluated).
pub(super) fn best_component(
    d: &LabeledDigraph,
    set: &VertexSet,
    oracle: &dyn MuOracle,
    caveats: &mut Vec<Caveat>,
) -> Result<VertexSet> {
    let comps = d.induced(set)?.strong_components();
    let mut best: Option<(usize, VertexSet)> = None;
    for c in &comps {
        if let Some(mu) = query(oracle, d, c, caveats)? {
            if best.as_ref().is_none_or(|(m, _)| mu > *m) {
                best = Some((mu, c.clone()));
            }
        }
    }
    match best {
        Some((_, c)) => Ok(c),
        None => Ok(comps.into_iter().max_by_key(|c| c.len()).unwrap_or_default()),
    }
}

/// A subset of `set` with oracle mu at least `target`, minimal under single
/// vertex deletions tried in ascending order, restricted to a strong component.
/// Without a target (oracle unavailable) only the component step applies.
fn minimal_subset(
    d: &LabeledDigraph,
    set: &VertexSet,
    target: Option<usize>,
    oracle: &dyn MuOracle,
    caveats: &mut Vec<Caveat>,
) -> Result<VertexSet> {
    let mut cur = best_component(d, set, oracle, caveats)?;
    let Some(target) = target else {
        return Ok(cur);
    };
    let order: Vec<Vertex> = cur.iter().copied().collect();
    for v in order {
        cur.remove(&v);
        let keep = !cur.is_empty() && query(oracle, d, &cur, caveats)?.is_some_and(|m| m >= target);
        if !keep {
            cur.insert(v);
        }
    }
    best_component(d, &cur, oracle, caveats)
}

/// Walks the cycle from the tail of a `Z1 Δ Z2` arc to the start of `bridge`,
/// then follows `bridge`. The arc is the last suitable one before the bridge.
fn cut_cycle(d: &LabeledDigraph, cycle: &[Vertex], bridge: &DirectedPath) -> Option<DirectedPath> {
    let len = cycle.len();
    let c = cycle.iter().position(|&v| v == bridge.first())?;
    let back = (1..len).find(|&k| {
        let i = (c + len - k) % len;
        d.find_arc(cycle[i], cycle[(i + 1) % len])
            .is_some_and(|a| a.in_symmetric_difference())
    })?;
    let mut seq: Vec<Vertex> = (0..back).map(|k| cycle[(c + len - back + k) % len]).collect();
    seq.extend_from_slice(bridge.vertices());
    Some(DirectedPath::new(seq))
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
    fn cut_starts_on_marked_arc() {
        // cycle 0 -> 1 -> 2 -> 3 -> 0 with only (1, 2) labelled; bridge from 3
        let arcs = [
            Arc::plain(0, 1),
            Arc::z1(1, 2),
            Arc::plain(2, 3),
            Arc::plain(3, 0),
            Arc::plain(3, 4),
        ];
        let d = LabeledDigraph::new(5, arcs).unwrap();
        let p = cut_cycle(&d, &[0, 1, 2, 3], &DirectedPath::new(vec![3, 4])).unwrap();
        assert_eq!(p.vertices(), &[1, 2, 3, 4]);
        // bridge leaves from the tail of the only marked arc: go round
        let arcs = [Arc::plain(0, 1), Arc::z1(1, 2), Arc::plain(2, 0), Arc::plain(1, 4)];
        let d = LabeledDigraph::new(5, arcs).unwrap();
        assert!(cut_cycle(&d, &[0, 1, 2], &DirectedPath::new(vec![1, 4])).is_none());
    }

    #[test]
    fn clique_special_set_passes_conditions() {
        let d = clique_z1(24);
        let o = CliqueOracle::new(&d).unwrap();
        let r = special_set(&d, 0, 2, &o, &ConstructiveConfig::default()).unwrap();
        assert!(check_special_set(&d, &r).is_ok());
        assert!(!r.y.contains(&0));
        assert_eq!(r.core.len(), 16);
        assert_eq!((r.r, r.s), (1, 0));
    }

    #[test]
    fn rejects_unknown_vertex_and_balanced_input() {
        let d = clique_z1(4);
        let o = CliqueOracle::new(&d).unwrap();
        assert!(matches!(
            special_set(&d, 9, 2, &o, &ConstructiveConfig::default()),
            Err(Error::InvalidArgument(_))
        ));
        let d = LabeledDigraph::new(
            4,
            (0..4).flat_map(|i| [Arc::plain(i, (i + 1) % 4), Arc::plain((i + 1) % 4, i)]),
        )
        .unwrap();
        let err = special_set(
            &d,
            0,
            2,
            &ExactOracle::new(),
            &ConstructiveConfig { floor: 1, start: None },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Construction { .. }));
    }
}
