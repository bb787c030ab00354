use crate::decomposition::{check_set_path, level_split, push_caveat, query, threshold_check, Caveat};
use crate::digraph::{shortest_path_in_union, BfsTree, DirectedPath, Direction, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::modular::{coprime, inverse, reduce};
use crate::oracle::{MuOracle, OracleKind};

use super::sequences::{gadget_sequences, GadgetSequences};
use super::{g, ConstructiveConfig, Stage};

/// Which label class the selected gadget arcs belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Z1 \ Z2`: toggling a gadget shifts the `Z1` count by one.
    Z1,
    /// `Z2 \ Z1`.
    Z2,
}

/// A set `X` together with everything needed to build, for any ordered pair
/// of `X` and any coprime target, an `X`-path with that residue.
#[derive(Debug, Clone)]
pub struct ResidueUniversalSet {
    pub set: VertexSet,
    pub q: u64,
    pub target: u128,
    pub x0: Vertex,
    /// The first split `X*` (where the gadgets live).
    pub entry_set: VertexSet,
    /// Path from `x0` to `x1`, the first vertex of `X*` it meets.
    pub entry: DirectedPath,
    pub gadgets: GadgetSequences,
    pub side: Side,
    /// 0-based gadget indices `i_1 < ... < i_{q-1}` on `side`.
    pub selected: Vec<usize>,
    pub mu_input: Option<usize>,
    pub mu_set: Option<usize>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
    escape_tree: BfsTree,
    descent_tree: BfsTree,
}

pub fn residue_universal_set(
    d: &LabeledDigraph,
    q: u64,
    target: u128,
    oracle: &dyn MuOracle,
    config: &ConstructiveConfig,
) -> Result<ResidueUniversalSet> {
    if q < 2 {
        return Err(Error::invalid(format!("modulus {q} must be at least 2")));
    }
    if !d.is_strongly_connected() {
        return Err(Error::precondition(
            "residue-universal set requires a strongly connected digraph",
        ));
    }
    let x0 = match config.start {
        Some(v) if d.contains(v) => v,
        Some(v) => return Err(Error::invalid(format!("start vertex {v} is not in the digraph"))),
        None => d.vertices()[0],
    };
    let mut caveats = Vec::new();
    let mu_input = query(oracle, d, &d.vertex_set(), &mut caveats)?;
    threshold_check(mu_input, g(q, target.max(2)).unwrap_or(u128::MAX), &mut caveats);

    let split = level_split(d, &d.leveling(x0, Direction::In)?, oracle)?;
    absorb(&mut caveats, &split.caveats);
    if split.level_index == 0 {
        return Err(Error::construction(Stage::EntrySplit, "the split kept only the root"));
    }
    let entry_set = split.component;
    let escape_tree = d.bfs_tree(x0, Direction::In)?;
    let entry = d
        .shortest_set_path(&VertexSet::from([x0]), &entry_set, &vec![true; d.universe()])
        .ok_or_else(|| Error::construction(Stage::EntrySplit, "no path from x0 into the split"))?;
    let x1 = entry.last();

    let inner_cfg = ConstructiveConfig { start: None, ..*config };
    let gadgets =
        gadget_sequences(&d.induced(&entry_set)?, x1, q, oracle, &inner_cfg).map_err(|e| e.within(Stage::Gadgets))?;
    absorb(&mut caveats, &gadgets.caveats);

    let last = d.induced(gadgets.last_set())?;
    let anchor = gadgets.last_anchor();
    let final_split = level_split(&last, &last.leveling(anchor, Direction::Out)?, oracle)?;
    absorb(&mut caveats, &final_split.caveats);
    if final_split.level_index == 0 {
        return Err(Error::construction(Stage::FinalSplit, "the split kept only the anchor"));
    }
    let descent_tree = last.bfs_tree(anchor, Direction::Out)?;

    let mut z1_side = Vec::new();
    let mut z2_side = Vec::new();
    for j in 0..gadgets.len() {
        let (a, b) = gadgets.gadget_arc(j);
        let arc = d.find_arc(a, b).expect("gadget arcs are arcs of d");
        if arc.z1 && !arc.z2 {
            z1_side.push(j);
        } else {
            z2_side.push(j);
        }
    }
    let need = (q - 1) as usize;
    let (side, mut selected) = if z1_side.len() >= need {
        (Side::Z1, z1_side)
    } else {
        (Side::Z2, z2_side)
    };
    if selected.len() < need {
        return Err(Error::construction(
            Stage::Gadgets,
            "pigeonhole failed: gadget arcs outside Z1 Δ Z2",
        ));
    }
    selected.truncate(need);

    Ok(ResidueUniversalSet {
        set: final_split.component,
        q,
        target,
        x0,
        entry_set,
        entry,
        gadgets,
        side,
        selected,
        mu_input,
        mu_set: final_split.mu_of_component,
        oracle: oracle.kind(),
        caveats,
        escape_tree,
        descent_tree,
    })
}

fn absorb(into: &mut Vec<Caveat>, from: &[Caveat]) {
    for c in from {
        if !matches!(c, Caveat::BelowThreshold { .. }) {
            push_caveat(into, c.clone());
        }
    }
}

impl ResidueUniversalSet {
    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v || !self.set.contains(&u) || !self.set.contains(&v) {
            return Err(Error::invalid(format!(
                "({u}, {v}) is not a pair of distinct vertices of X"
            )));
        }
        Ok(())
    }

    /// `Q_k` for `k` in `1..=q`: the gadgets `selected[..k-1]` are taken in
    /// full, every other gadget is entered at its second vertex. Fails if the
    /// pieces overlap.
    pub fn assembled_path(&self, d: &LabeledDigraph, u: Vertex, v: Vertex, k: usize) -> Result<DirectedPath> {
        self.check_pair(u, v)?;
        if k == 0 || k as u64 > self.q {
            return Err(Error::invalid(format!("candidate index {k} outside 1..={}", self.q)));
        }
        let toggled = &self.selected[..k - 1];
        let escape = self.escape_tree.tree_path(u)?;
        let mut walk = shortest_path_in_union(&[&escape, &self.entry], u, self.gadgets.anchors[0])
            .ok_or_else(|| Error::construction(Stage::Assembly, "escape and entry paths do not connect"))?
            .into_vertices();
        for j in 0..self.gadgets.len() {
            let p = self.gadgets.paths[j].vertices();
            let (reach, rest) = if toggled.contains(&j) {
                (&self.gadgets.entry_paths[j][0], p)
            } else {
                (&self.gadgets.entry_paths[j][1], &p[1..])
            };
            walk.extend_from_slice(&reach.vertices()[1..]);
            walk.extend_from_slice(&rest[1..]);
        }
        walk.extend_from_slice(&self.descent_tree.tree_path(v)?.vertices()[1..]);
        let path = DirectedPath::new(walk);
        if !path.is_simple() {
            return Err(Error::construction(
                Stage::Assembly,
                format!("candidate Q_{k} repeats a vertex"),
            ));
        }
        check_set_path(d, &path, &self.set).map_err(|e| Error::construction(Stage::Assembly, e.to_string()))?;
        Ok(path)
    }

    /// All `q` candidates `Q_1, ..., Q_q`.
    pub fn assembled_paths(&self, d: &LabeledDigraph, u: Vertex, v: Vertex) -> Result<Vec<DirectedPath>> {
        (1..=self.q as usize).map(|k| self.assembled_path(d, u, v, k)).collect()
    }

    /// An `X`-path from `u` to `v` with `a |A ∩ Z1| + b |A ∩ Z2| ≡ l (mod q)`.
    pub fn query(&self, d: &LabeledDigraph, u: Vertex, v: Vertex, a: i64, b: i64, l: i64) -> Result<DirectedPath> {
        let q = self.q;
        if !coprime(a, q) || !coprime(b, q) {
            return Err(Error::invalid(format!(
                "coefficients ({a}, {b}) must be coprime to {q}"
            )));
        }
        self.check_pair(u, v)?;
        let base = self.assembled_path(d, u, v, 1)?;
        let (c1, c2) = base.label_counts(d)?;
        let (c1, c2) = (c1 as i64, c2 as i64);
        // the toggled coordinate must reach t
        let (t, shift) = match self.side {
            Side::Z1 => (inverse(a, q).unwrap() as i128 * (l - b * c2) as i128, c1),
            Side::Z2 => (inverse(b, q).unwrap() as i128 * (l - a * c1) as i128, c2),
        };
        let t = t.rem_euclid(q as i128) as i64;
        let k = reduce(t - shift, q) as usize + 1;
        let path = if k == 1 { base } else { self.assembled_path(d, u, v, k)? };
        let (z1, z2) = path.label_counts(d)?;
        let value = reduce(a * z1 as i64 + b * z2 as i64, q);
        if value != reduce(l, q) {
            return Err(Error::construction(
                Stage::Assembly,
                format!("candidate Q_{k} has residue {value}, wanted {}", reduce(l, q)),
            ));
        }
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Arc;
    use crate::oracle::CliqueOracle;

    fn clique_z1(n: usize) -> LabeledDigraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
        LabeledDigraph::new(n, arcs).unwrap()
    }

    #[test]
    fn every_residue_on_a_clique() {
        let d = clique_z1(26);
        let o = CliqueOracle::new(&d).unwrap();
        let rus = residue_universal_set(&d, 2, 2, &o, &ConstructiveConfig::default()).unwrap();
        assert!(rus.set.len() >= 2);
        assert_eq!(rus.side, Side::Z1);
        let xs: Vec<_> = rus.set.iter().copied().take(3).collect();
        for &u in &xs {
            for &v in &xs {
                if u == v {
                    continue;
                }
                for l in 0..2 {
                    let p = rus.query(&d, u, v, 1, 1, l).unwrap();
                    assert_eq!(p.length() as i64 % 2, l);
                    check_set_path(&d, &p, &rus.set).unwrap();
                }
            }
        }
    }

    #[test]
    fn first_candidate_for_its_own_residue() {
        let d = clique_z1(26);
        let o = CliqueOracle::new(&d).unwrap();
        let rus = residue_universal_set(&d, 2, 2, &o, &ConstructiveConfig::default()).unwrap();
        let mut it = rus.set.iter().copied();
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        let q1 = rus.assembled_path(&d, u, v, 1).unwrap();
        let l = q1.length() as i64;
        assert_eq!(rus.query(&d, u, v, 1, 1, l).unwrap(), q1);
    }

    #[test]
    fn rejects_non_coprime_coefficients() {
        let d = clique_z1(26);
        let o = CliqueOracle::new(&d).unwrap();
        let rus = residue_universal_set(&d, 2, 2, &o, &ConstructiveConfig::default()).unwrap();
        let mut it = rus.set.iter().copied();
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        assert!(matches!(rus.query(&d, u, v, 2, 1, 0), Err(Error::InvalidArgument(_))));
    }
}
