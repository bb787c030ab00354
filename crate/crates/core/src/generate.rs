//! Seeded instance generators.
//!
//! Families that carry `mu_analytic` are exactly those an analytic oracle can
//! re-certify: `bioriented-clique` and `pendant-clique` (core `0..mu`).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Arc, DirectedPath, LabeledDigraph, Vertex};
use crate::direct::{
    verify_undirected_witness, verify_witness, Edge, UndirectedLabeledGraph, UndirectedPattern, UndirectedWitness,
};
use crate::error::{Error, Result};
use crate::io::InstanceFile;
use crate::modular::inverse;
use crate::oracle::CliqueOracle;
use crate::pattern::{Congruence, SubdivisionPattern, SubdivisionWitness};

pub const FAMILY_CLIQUE: &str = "bioriented-clique";
pub const FAMILY_PENDANT: &str = "pendant-clique";
pub const FAMILY_RANDOM: &str = "random";
pub const FAMILY_PLANTED: &str = "planted";

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

/// Every ordered pair an arc in `Z1` only.
pub fn bioriented_clique(n: usize) -> LabeledDigraph {
    let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::z1(u, v)));
    LabeledDigraph::new(n, arcs).expect("clique arcs are distinct")
}

/// `mu = n`: any two vertices in one block span a digon of weight 2.
pub fn gen_bioriented_clique(n: usize) -> Result<InstanceFile> {
    if n == 0 {
        return Err(Error::invalid("clique size must be at least 1"));
    }
    Ok(InstanceFile {
        digraph: bioriented_clique(n),
        family: Some(FAMILY_CLIQUE.into()),
        mu_analytic: Some(n),
        planted: None,
    })
}

/// Bioriented `K_n` on `0..n` plus a path `0 -> n -> ... -> n+len-1 -> 1`
/// whose arcs alternate `Z1`, `Z2`. The path vertices join no cycle
/// without two core vertices, so `mu` stays `n`.
pub fn gen_pendant_clique(n: usize, tail_len: usize) -> Result<InstanceFile> {
    if n < 2 {
        return Err(Error::invalid("pendant clique needs a core of at least 2 vertices"));
    }
    let mut arcs: Vec<Arc> = bioriented_clique(n).arcs().to_vec();
    let mut walk = vec![0];
    walk.extend(n..n + tail_len);
    walk.push(1);
    for (i, w) in walk.windows(2).enumerate() {
        if (w[0], w[1]) == (0, 1) {
            continue;
        }
        arcs.push(if i % 2 == 0 {
            Arc::z1(w[0], w[1])
        } else {
            Arc::z2(w[0], w[1])
        });
    }
    let digraph = LabeledDigraph::new(n + tail_len, arcs)?;
    Ok(InstanceFile {
        digraph,
        family: Some(FAMILY_PENDANT.into()),
        mu_analytic: Some(n),
        planted: None,
    })
}

/// The oracle matching an instance's family tag; refuses untagged instances.
pub fn analytic_oracle(f: &InstanceFile) -> Result<CliqueOracle> {
    match (f.family.as_deref(), f.mu_analytic) {
        (Some(FAMILY_CLIQUE), _) => CliqueOracle::new(&f.digraph),
        (Some(FAMILY_PENDANT), Some(mu)) => CliqueOracle::with_core(&f.digraph, (0..mu).collect()),
        (family, _) => Err(Error::invalid(format!(
            "no analytic oracle for family {}",
            family.unwrap_or("(none)")
        ))),
    }
}

/// Each ordered pair is an arc with probability `p`; each arc is in `Z1`
/// with probability `z1_p` and, independently, in `Z2` with probability `z2_p`.
pub fn gen_random(n: usize, p: f64, z1_p: f64, z2_p: f64, seed: u64) -> Result<InstanceFile> {
    check_probability("arc probability", p)?;
    check_probability("z1 probability", z1_p)?;
    check_probability("z2 probability", z2_p)?;
    let mut r = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                let z1 = r.gen_bool(z1_p);
                let z2 = r.gen_bool(z2_p);
                arcs.push(Arc::new(u, v, z1, z2));
            }
        }
    }
    Ok(InstanceFile {
        digraph: LabeledDigraph::new(n, arcs)?,
        family: Some(FAMILY_RANDOM.into()),
        mu_analytic: None,
        planted: None,
    })
}

/// Extra material added around a planted subdivision. Noise only adds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseParams {
    pub extra_vertices: usize,
    pub extra_arcs: usize,
    /// Each noise arc is in `Z1` (and independently `Z2`) with this probability.
    pub label_prob: f64,
}

/// `Z1`-labelled positions for a path meeting `c` with no `Z2` arcs:
/// `c1 = a^{-1} r mod q`, optionally plus one extra period, and the length
/// padded with unlabelled arcs.
fn planted_labels(c: &Congruence, r: &mut ChaCha8Rng) -> Vec<bool> {
    let base = (inverse(c.a, c.q).expect("validated") as u128 * c.r as u128 % c.q as u128) as usize;
    let c1 = base + if r.gen_bool(0.3) { c.q as usize } else { 0 };
    let pad = r.gen_range(0..=2);
    let len = (c1 + pad).max(1);
    let mut labels = vec![false; len];
    for slot in labels.iter_mut().take(c1) {
        *slot = true;
    }
    labels.shuffle(r);
    labels
}

/// A subdivision of `pattern` meeting every congruence, with vertex names
/// shuffled and `noise` added; the witness is stored and self-checked.
pub fn gen_planted(pattern: &SubdivisionPattern, noise: NoiseParams, seed: u64) -> Result<InstanceFile> {
    check_probability("label probability", noise.label_prob)?;
    let mut r = rng(seed);
    let k = pattern.vertex_count();
    let mut next = k;
    let mut arcs = Vec::new();
    let mut paths = Vec::new();
    for a in pattern.arcs() {
        let labels = planted_labels(&a.constraint, &mut r);
        let mut seq = vec![a.tail];
        for _ in 1..labels.len() {
            seq.push(next);
            next += 1;
        }
        seq.push(a.head);
        for (w, &z1) in seq.windows(2).zip(&labels) {
            arcs.push(Arc::new(w[0], w[1], z1, false));
        }
        paths.push(seq);
    }
    let n = next + noise.extra_vertices;
    let mut names: Vec<Vertex> = (0..n).collect();
    names.shuffle(&mut r);
    let mut present: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut renamed = Vec::with_capacity(arcs.len() + noise.extra_arcs);
    for a in arcs {
        let (u, v) = (names[a.tail], names[a.head]);
        present.insert((u, v));
        renamed.push(Arc::new(u, v, a.z1, a.z2));
    }
    let free = n * n.saturating_sub(1) - present.len();
    for _ in 0..noise.extra_arcs.min(free) {
        loop {
            let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
            if u != v && present.insert((u, v)) {
                let z1 = r.gen_bool(noise.label_prob);
                let z2 = r.gen_bool(noise.label_prob);
                renamed.push(Arc::new(u, v, z1, z2));
                break;
            }
        }
    }
    let digraph = LabeledDigraph::new(n, renamed)?;
    let witness = SubdivisionWitness {
        branch: (0..k).map(|v| names[v]).collect(),
        paths: paths
            .into_iter()
            .map(|p| DirectedPath::new(p.into_iter().map(|v| names[v]).collect()))
            .collect(),
    };
    let verdict = verify_witness(&digraph, pattern, &witness);
    assert!(verdict.ok, "planted witness rejected: {:?}", verdict.diagnostic);
    Ok(InstanceFile {
        digraph,
        family: Some(FAMILY_PLANTED.into()),
        mu_analytic: None,
        planted: Some(witness),
    })
}

/// Undirected analogue of [`gen_planted`]; noise edges never repeat an edge.
pub fn gen_planted_undirected(
    pattern: &UndirectedPattern,
    noise: NoiseParams,
    seed: u64,
) -> Result<(UndirectedLabeledGraph, UndirectedWitness)> {
    check_probability("label probability", noise.label_prob)?;
    let mut r = rng(seed);
    let k = pattern.vertex_count();
    let mut next = k;
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for e in pattern.edges() {
        let labels = planted_labels(&e.constraint, &mut r);
        let mut seq = vec![e.u];
        for _ in 1..labels.len() {
            seq.push(next);
            next += 1;
        }
        seq.push(e.v);
        for (w, &b1) in seq.windows(2).zip(&labels) {
            edges.push((w[0], w[1], b1, false));
        }
        paths.push(seq);
    }
    let n = next + noise.extra_vertices;
    let mut names: Vec<Vertex> = (0..n).collect();
    names.shuffle(&mut r);
    let key = |u: Vertex, v: Vertex| (u.min(v), u.max(v));
    let mut present = BTreeSet::new();
    let mut renamed = Vec::new();
    for (u, v, b1, b2) in edges {
        let (u, v) = (names[u], names[v]);
        present.insert(key(u, v));
        renamed.push(Edge::new(u, v, b1, b2));
    }
    let free = n * n.saturating_sub(1) / 2 - present.len();
    for _ in 0..noise.extra_arcs.min(free) {
        loop {
            let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
            if u != v && present.insert(key(u, v)) {
                renamed.push(Edge::new(
                    u,
                    v,
                    r.gen_bool(noise.label_prob),
                    r.gen_bool(noise.label_prob),
                ));
                break;
            }
        }
    }
    let g = UndirectedLabeledGraph::new(n, renamed)?;
    let w = UndirectedWitness {
        branch: (0..k).map(|v| names[v]).collect(),
        paths: paths
            .into_iter()
            .map(|p| p.into_iter().map(|v| names[v]).collect())
            .collect(),
    };
    let verdict = verify_undirected_witness(&g, pattern, &w);
    assert!(verdict.ok, "planted witness rejected: {:?}", verdict.diagnostic);
    Ok((g, w))
}
