//! Condition checkers for the constructive outputs.
//!
//! These only look at the returned objects and the host digraph; they share
//! no code with the constructions beyond the data model.

use std::fmt;

use crate::balance::DirectedCycle;
use crate::digraph::{DirectedPath, LabeledDigraph, Vertex, VertexSet};

use super::sequences::GadgetSequences;
use super::special::SpecialSetResult;
use super::universal::ResidueUniversalSet;

/// The first condition an output fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionViolation {
    pub condition: String,
    pub detail: String,
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)
    }
}

type Check = Result<(), ConditionViolation>;

fn fail(condition: impl Into<String>, detail: impl Into<String>) -> Check {
    Err(ConditionViolation {
        condition: condition.into(),
        detail: detail.into(),
    })
}

fn strongly_connected(d: &LabeledDigraph, set: &VertexSet) -> bool {
    !set.is_empty() && set.iter().all(|&v| d.contains(v)) && d.induced(set).is_ok_and(|h| h.is_strongly_connected())
}

/// Simple path of `d` whose vertices all satisfy `inside`.
fn path_within(d: &LabeledDigraph, p: &DirectedPath, inside: impl Fn(Vertex) -> bool) -> bool {
    p.validate(d).is_ok() && p.vertices().iter().all(|&v| inside(v))
}

fn counts(d: &LabeledDigraph, p: &DirectedPath) -> (usize, usize) {
    p.arc_pairs().fold((0, 0), |(c1, c2), (a, b)| {
        let arc = d.find_arc(a, b).expect("validated path");
        (c1 + arc.z1 as usize, c2 + arc.z2 as usize)
    })
}

fn symmetric_difference_arc(d: &LabeledDigraph, a: Vertex, b: Vertex) -> bool {
    d.find_arc(a, b).is_some_and(|arc| arc.z1 != arc.z2)
}

pub fn check_two_arc_cycle(d: &LabeledDigraph, c: &DirectedCycle) -> Check {
    let re = match DirectedCycle::new(d, c.vertices().to_vec()) {
        Ok(re) => re,
        Err(e) => return fail("cycle", e.to_string()),
    };
    let marked = re
        .arc_pairs()
        .filter(|&(a, b)| symmetric_difference_arc(d, a, b))
        .count();
    if marked < 2 {
        return fail("two arcs", format!("only {marked} arc(s) in Z1 Δ Z2"));
    }
    Ok(())
}

/// The five conditions of a special set for `(d, x, q)`.
pub fn check_special_set(d: &LabeledDigraph, r: &SpecialSetResult) -> Check {
    let (x, q) = (r.x, r.q);
    if !r.u.is_subset(&r.y) || r.y.contains(&x) || !r.y.iter().all(|&v| d.contains(v)) {
        return fail("nesting", "U ⊆ Y ⊆ V(D) \\ {x} fails");
    }
    if !strongly_connected(d, &r.u) || !strongly_connected(d, &r.y) {
        return fail("condition 1", "D[U] or D[Y] is not strongly connected");
    }
    if !path_within(d, &r.path, |v| r.y.contains(&v)) {
        return fail("path", "P is not a path of D[Y]");
    }
    if r.path.length() < 1 {
        return fail("path", "P has length 0");
    }
    let on_u: Vec<Vertex> = r.path.vertices().iter().copied().filter(|v| r.u.contains(v)).collect();
    if on_u != [r.w] || r.path.last() != r.w {
        return fail("condition 2", "P meets U somewhere other than its last vertex w");
    }
    if let (Some(mu_u), Some(mu)) = (r.mu_u, r.mu_input) {
        if (2 * mu_u) as i128 + 3072 < mu as i128 {
            return fail(
                "condition 3",
                format!("mu(U) = {mu_u} < mu(D)/2 - 1536 with mu(D) = {mu}"),
            );
        }
    }
    let p = r.path.vertices();
    if !symmetric_difference_arc(d, p[0], p[1]) {
        return fail("condition 4", "first arc of P is not in Z1 Δ Z2");
    }
    for (i, qp) in r.entry_paths.iter().enumerate() {
        let target = p[i];
        if qp.first() != x || qp.last() != target {
            return fail(
                "condition 5",
                format!("entry path {i} does not run from {x} to {target}"),
            );
        }
        if !path_within(d, qp, |v| v == target || !r.y.contains(&v)) {
            return fail(
                "condition 5",
                format!("entry path {i} is not a path of D[(V \\ Y) ∪ {{{target}}}]"),
            );
        }
        let (c1, c2) = counts(d, qp);
        if (c1 as u64 % q, c2 as u64 % q) != (r.r, r.s) {
            return fail(
                "condition 5",
                format!("entry path {i} has residues ({c1}, {c2}) mod {q}"),
            );
        }
    }
    Ok(())
}

/// The six conditions of a gadget sequence started at `g.anchors[0]`.
pub fn check_gadget_sequences(d: &LabeledDigraph, g: &GadgetSequences) -> Check {
    let q = g.q;
    let steps = (2 * q - 3) as usize;
    if g.paths.len() != steps
        || g.inner.len() != steps
        || g.outer.len() != steps + 1
        || g.anchors.len() != steps + 1
        || g.residues.len() != steps
        || g.entry_paths.len() != steps
    {
        return fail("shape", format!("expected {steps} gadgets"));
    }
    if g.outer[0] != d.vertex_set() {
        return fail("shape", "X_1 is not V(D)");
    }
    if !strongly_connected(d, &g.outer[steps]) {
        return fail("condition 2", format!("D[X_{}] is not strongly connected", steps + 1));
    }
    for j in 0..steps {
        let i = j + 1;
        let (xs, ys, next) = (&g.outer[j], &g.inner[j], &g.outer[j + 1]);
        let anchor = g.anchors[j];
        if !xs.contains(&anchor) || ys.contains(&anchor) || !next.is_subset(ys) || !ys.is_subset(xs) {
            return fail("condition 1", format!("nesting fails at step {i}"));
        }
        if !strongly_connected(d, xs) || !strongly_connected(d, ys) {
            return fail("condition 2", format!("D[X_{i}] or D[Y_{i}] is not strongly connected"));
        }
        let p = &g.paths[j];
        if !path_within(d, p, |v| ys.contains(&v)) || p.length() < 1 {
            return fail("condition 3", format!("P_{i} is not a nontrivial path of D[Y_{i}]"));
        }
        let on_next: Vec<Vertex> = p.vertices().iter().copied().filter(|v| next.contains(v)).collect();
        if on_next != [g.anchors[j + 1]] || p.last() != g.anchors[j + 1] {
            return fail("condition 3", format!("P_{i} meets X_{} other than at its end", i + 1));
        }
        if let (Some(a), Some(b)) = (g.mu_trace[j], g.mu_trace[j + 1]) {
            if (2 * b) as i128 + 3072 < a as i128 {
                return fail("condition 4", format!("mu(X_{}) = {b} < mu(X_{i})/2 - 1536", i + 1));
            }
        }
        let pv = p.vertices();
        if !symmetric_difference_arc(d, pv[0], pv[1]) {
            return fail("condition 5", format!("first arc of P_{i} is not in Z1 Δ Z2"));
        }
        for (k, qp) in g.entry_paths[j].iter().enumerate() {
            let target = pv[k];
            let ok = qp.first() == anchor
                && qp.last() == target
                && path_within(d, qp, |v| v == target || (xs.contains(&v) && !ys.contains(&v)));
            if !ok {
                return fail(
                    "condition 6",
                    format!("entry path to {target} at step {i} leaves D[(X_{i} \\ Y_{i}) ∪ {{{target}}}]"),
                );
            }
            let (c1, c2) = counts(d, qp);
            if (c1 as u64 % q, c2 as u64 % q) != g.residues[j] {
                return fail(
                    "condition 6",
                    format!("entry path to {target} at step {i} has the wrong residues"),
                );
            }
        }
    }
    Ok(())
}

/// `D[X]` strongly connected, `X ⊆ V(D)`, and each of the `q` candidates for
/// `(u, v)` an `X`-path, with `Z1` (or `Z2`) counts pairwise distinct mod `q`
/// and the other count constant.
pub fn check_residue_universal(d: &LabeledDigraph, rus: &ResidueUniversalSet, u: Vertex, v: Vertex) -> Check {
    if !strongly_connected(d, &rus.set) {
        return fail("set", "D[X] is not strongly connected");
    }
    let q = rus.q;
    let mut seen = Vec::new();
    let mut fixed = None;
    for k in 1..=q as usize {
        let p = match rus.assembled_path(d, u, v, k) {
            Ok(p) => p,
            Err(e) => return fail("assembly", e.to_string()),
        };
        if !is_x_path(d, &p, &rus.set, u, v) {
            return fail("X-path", format!("Q_{k} is not an X-path from {u} to {v}"));
        }
        let (c1, c2) = counts(d, &p);
        let (moving, still) = match rus.side {
            super::Side::Z1 => (c1, c2),
            super::Side::Z2 => (c2, c1),
        };
        let moving = moving as u64 % q;
        if seen.contains(&moving) {
            return fail("pigeonhole", format!("Q_{k} repeats residue {moving}"));
        }
        seen.push(moving);
        if *fixed.get_or_insert(still as u64 % q) != still as u64 % q {
            return fail("pigeonhole", format!("Q_{k} changes the untouched coordinate"));
        }
    }
    Ok(())
}

/// Endpoints `u`, `v` in `set`, interior outside it.
pub fn is_x_path(d: &LabeledDigraph, p: &DirectedPath, set: &VertexSet, u: Vertex, v: Vertex) -> bool {
    p.validate(d).is_ok()
        && p.length() >= 1
        && p.first() == u
        && p.last() == v
        && set.contains(&u)
        && set.contains(&v)
        && p.interior().iter().all(|w| !set.contains(w))
}
