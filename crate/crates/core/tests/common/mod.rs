//! Brute-force reference implementations. Deliberately naive: they share no
//! code with the library beyond the data model.

#![allow(dead_code)]

use std::collections::HashMap;

use unbalanced_core::{DirectedPath, LabeledDigraph, SubdivisionPattern, SubdivisionWitness, Vertex};

/// Adjacency matrix of `(z1, z2)` labels.
pub fn matrix(d: &LabeledDigraph) -> Vec<Vec<Option<(bool, bool)>>> {
    let n = d.universe();
    let mut m = vec![vec![None; n]; n];
    for a in d.arcs() {
        m[a.tail][a.head] = Some((a.z1, a.z2));
    }
    m
}

/// Every directed cycle of `D[mask]` as a vertex sequence starting at its
/// smallest vertex, once per cycle.
pub fn cycles_in(d: &LabeledDigraph, mask: &[bool]) -> Vec<Vec<Vertex>> {
    let m = matrix(d);
    let n = d.universe();
    let mut out = Vec::new();
    fn go(
        m: &[Vec<Option<(bool, bool)>>],
        mask: &[bool],
        s: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for w in 0..m.len() {
            if m[v][w].is_none() || !mask[w] {
                continue;
            }
            if w == s {
                out.push(path.clone());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                go(m, mask, s, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    for s in 0..n {
        if !mask[s] || !d.contains(s) {
            continue;
        }
        let mut on = vec![false; n];
        on[s] = true;
        go(&m, mask, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn cycles(d: &LabeledDigraph) -> Vec<Vec<Vertex>> {
    let mask: Vec<bool> = (0..d.universe()).map(|v| d.contains(v)).collect();
    cycles_in(d, &mask)
}

pub fn cycle_weight(d: &LabeledDigraph, c: &[Vertex]) -> i64 {
    let m = matrix(d);
    (0..c.len())
        .map(|i| {
            let (z1, z2) = m[c[i]][c[(i + 1) % c.len()]].expect("cycle arc");
            z1 as i64 - z2 as i64
        })
        .sum()
}

pub fn mask_is_balanced(d: &LabeledDigraph, mask: &[bool]) -> bool {
    cycles_in(d, mask).iter().all(|c| cycle_weight(d, c) == 0)
}

pub fn has_unbalanced(d: &LabeledDigraph) -> bool {
    cycles(d).iter().any(|c| cycle_weight(d, c) != 0)
}

pub fn shortest_unbalanced_len(d: &LabeledDigraph) -> Option<usize> {
    cycles(d)
        .iter()
        .filter(|c| cycle_weight(d, c) != 0)
        .map(|c| c.len())
        .min()
}

/// mu by enumerating every set partition (restricted growth strings).
pub fn mu(d: &LabeledDigraph) -> usize {
    let vs: Vec<Vertex> = d.vertices().to_vec();
    if vs.is_empty() {
        return 0;
    }
    let n = d.universe();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut ok = |bits: u64| {
        *memo.entry(bits).or_insert_with(|| {
            let mask: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
            mask_is_balanced(d, &mask)
        })
    };
    let mut best = vs.len();
    let mut labels = vec![0usize; vs.len()];
    fn rec(
        i: usize,
        used: usize,
        labels: &mut [usize],
        vs: &[Vertex],
        best: &mut usize,
        ok: &mut dyn FnMut(u64) -> bool,
    ) {
        if used >= *best {
            return;
        }
        if i == vs.len() {
            let good = (0..used).all(|b| {
                let bits = vs
                    .iter()
                    .zip(labels.iter())
                    .filter(|(_, &l)| l == b)
                    .fold(0u64, |m, (&v, _)| m | 1 << v);
                ok(bits)
            });
            if good {
                *best = used;
            }
            return;
        }
        for b in 0..=used {
            labels[i] = b;
            rec(i + 1, used.max(b + 1), labels, vs, best, ok);
        }
    }
    rec(0, 0, &mut labels, &vs, &mut best, &mut ok);
    best
}

/// All simple paths `u -> v` whose internal vertices satisfy `interior`.
pub fn simple_paths(d: &LabeledDigraph, u: Vertex, v: Vertex, interior: &dyn Fn(Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let m = matrix(d);
    let n = d.universe();
    let mut out = Vec::new();
    let mut on = vec![false; n];
    on[u] = true;
    fn go(
        m: &[Vec<Option<(bool, bool)>>],
        t: usize,
        interior: &dyn Fn(usize) -> bool,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = *path.last().unwrap();
        for w in 0..m.len() {
            if m[x][w].is_none() || on[w] {
                continue;
            }
            if w == t {
                path.push(w);
                out.push(path.clone());
                path.pop();
            } else if interior(w) {
                on[w] = true;
                path.push(w);
                go(m, t, interior, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    if u != v {
        go(&m, v, interior, &mut vec![u], &mut on, &mut out);
    }
    out
}

pub fn counts(d: &LabeledDigraph, p: &[Vertex]) -> (usize, usize) {
    let m = matrix(d);
    p.windows(2).fold((0, 0), |(a, b), w| {
        let (z1, z2) = m[w[0]][w[1]].unwrap();
        (a + z1 as usize, b + z2 as usize)
    })
}

/// Does any simple `u -> v` path (interior avoiding `blocked`) satisfy
/// `a z1 + b z2 ≡ l (mod q)`?
#[allow(clippy::too_many_arguments)]
pub fn residue_path_exists(
    d: &LabeledDigraph,
    u: Vertex,
    v: Vertex,
    a: i64,
    b: i64,
    l: i64,
    q: u64,
    blocked: &[Vertex],
) -> bool {
    let q = q as i64;
    simple_paths(d, u, v, &|w| !blocked.contains(&w)).iter().any(|p| {
        let (c1, c2) = counts(d, p);
        (a * c1 as i64 + b * c2 as i64 - l).rem_euclid(q) == 0
    })
}

/// Exhaustive subdivision search: every injective branch map, every tuple
/// of qualifying paths, with disjointness checked by backtracking.
/// `holds(e, z1, z2)` decides arc `e`'s constraint.
pub fn subdivision_with(
    d: &LabeledDigraph,
    k: usize,
    arcs: &[(usize, usize)],
    holds: &dyn Fn(usize, usize, usize) -> bool,
) -> Option<SubdivisionWitness> {
    let vs = d.vertices().to_vec();
    if k > vs.len() {
        return None;
    }
    let mut branch = Vec::new();
    fn maps(
        d: &LabeledDigraph,
        vs: &[Vertex],
        k: usize,
        arcs: &[(usize, usize)],
        holds: &dyn Fn(usize, usize, usize) -> bool,
        branch: &mut Vec<Vertex>,
    ) -> Option<SubdivisionWitness> {
        if branch.len() == k {
            let b = branch.clone();
            let candidates: Vec<Vec<Vec<Vertex>>> = arcs
                .iter()
                .enumerate()
                .map(|(e, &(s, t))| {
                    simple_paths(d, b[s], b[t], &|w| !b.contains(&w))
                        .into_iter()
                        .filter(|p| {
                            let (c1, c2) = counts(d, p);
                            holds(e, c1, c2)
                        })
                        .collect()
                })
                .collect();
            let mut chosen = Vec::new();
            let mut used = vec![false; d.universe()];
            if pick(&candidates, 0, &mut chosen, &mut used) {
                return Some(SubdivisionWitness {
                    branch: b,
                    paths: chosen.into_iter().map(DirectedPath::new).collect(),
                });
            }
            return None;
        }
        for &v in vs {
            if !branch.contains(&v) {
                branch.push(v);
                if let Some(w) = maps(d, vs, k, arcs, holds, branch) {
                    return Some(w);
                }
                branch.pop();
            }
        }
        None
    }
    fn pick(c: &[Vec<Vec<Vertex>>], i: usize, chosen: &mut Vec<Vec<Vertex>>, used: &mut [bool]) -> bool {
        if i == c.len() {
            return true;
        }
        for p in &c[i] {
            let inner = &p[1..p.len() - 1];
            if inner.iter().any(|&v| used[v]) {
                continue;
            }
            for &v in inner {
                used[v] = true;
            }
            chosen.push(p.clone());
            if pick(c, i + 1, chosen, used) {
                return true;
            }
            chosen.pop();
            for &v in inner {
                used[v] = false;
            }
        }
        false
    }
    maps(d, &vs, k, arcs, holds, &mut branch)
}

pub fn subdivision(d: &LabeledDigraph, p: &SubdivisionPattern) -> Option<SubdivisionWitness> {
    let arcs: Vec<(usize, usize)> = p.arcs().iter().map(|a| (a.tail, a.head)).collect();
    let cons: Vec<_> = p.arcs().iter().map(|a| a.constraint).collect();
    subdivision_with(d, p.vertex_count(), &arcs, &|e, z1, z2| {
        let c = cons[e];
        (c.a * z1 as i64 + c.b * z2 as i64 - c.r as i64).rem_euclid(c.q as i64) == 0
    })
}

/// Plain finder: only path lengths matter, `|P_e| ≡ r_e (mod q_e)`.
pub fn length_subdivision(
    d: &LabeledDigraph,
    k: usize,
    arcs: &[(usize, usize, u64, u64)],
) -> Option<SubdivisionWitness> {
    let pairs: Vec<(usize, usize)> = arcs.iter().map(|a| (a.0, a.1)).collect();
    subdivision_with(d, k, &pairs, &|e, z1, z2| {
        let len = z1 + z2;
        len as u64 % arcs[e].3 == arcs[e].2
    })
}

/// Independent witness check: injective, simple paths with the right ends,
/// disjoint interiors avoiding branch vertices, congruences.
pub fn witness_ok(d: &LabeledDigraph, p: &SubdivisionPattern, w: &SubdivisionWitness) -> bool {
    let m = matrix(d);
    let mut seen = vec![false; d.universe()];
    for &b in &w.branch {
        if b >= d.universe() || !d.contains(b) || seen[b] {
            return false;
        }
        seen[b] = true;
    }
    if w.paths.len() != p.arc_count() {
        return false;
    }
    for (a, path) in p.arcs().iter().zip(&w.paths) {
        let vs = path.vertices();
        if vs.len() < 2 || vs[0] != w.branch[a.tail] || *vs.last().unwrap() != w.branch[a.head] {
            return false;
        }
        if vs.windows(2).any(|x| m[x[0]][x[1]].is_none()) {
            return false;
        }
        for &v in &vs[1..vs.len() - 1] {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        let (c1, c2) = counts(d, vs);
        let c = a.constraint;
        if (c.a * c1 as i64 + c.b * c2 as i64 - c.r as i64).rem_euclid(c.q as i64) != 0 {
            return false;
        }
    }
    true
}

/// BFS strong connectivity of `D[set]`.
pub fn strongly_connected(d: &LabeledDigraph, set: &[Vertex]) -> bool {
    if set.is_empty() {
        return false;
    }
    let m = matrix(d);
    let reach = |forward: bool| {
        let mut seen = vec![set[0]];
        let mut i = 0;
        while i < seen.len() {
            let x = seen[i];
            i += 1;
            for &y in set {
                let arc = if forward { m[x][y] } else { m[y][x] };
                if arc.is_some() && !seen.contains(&y) {
                    seen.push(y);
                }
            }
        }
        seen.len()
    };
    reach(true) == set.len() && reach(false) == set.len()
}
