use std::fmt;

use crate::digraph::{LabeledDigraph, Vertex, VertexSet};
use crate::pattern::{SubdivisionPattern, SubdivisionWitness};

/// The first clause a witness breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Wrong number of branch vertices or paths.
    Shape(String),
    /// Two pattern vertices share an image, or an image is not a vertex.
    Injectivity(String),
    /// `P_e` is not a simple directed path of the digraph.
    Path(usize, String),
    Endpoints(usize, String),
    /// Paths share an internal vertex, or pass through a branch vertex.
    Disjointness(String),
    Congruence(usize, String),
}

impl Violation {
    /// Clause name: `injectivity`, `path(e)`, `endpoints(e)`, `disjointness`,
    /// `congruence(e)` or `shape`.
    pub fn clause(&self) -> String {
        match self {
            Violation::Shape(_) => "shape".into(),
            Violation::Injectivity(_) => "injectivity".into(),
            Violation::Path(e, _) => format!("path({e})"),
            Violation::Endpoints(e, _) => format!("endpoints({e})"),
            Violation::Disjointness(_) => "disjointness".into(),
            Violation::Congruence(e, _) => format!("congruence({e})"),
        }
    }

    fn detail(&self) -> &str {
        match self {
            Violation::Shape(s) | Violation::Injectivity(s) | Violation::Disjointness(s) => s,
            Violation::Path(_, s) | Violation::Endpoints(_, s) | Violation::Congruence(_, s) => s,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause(), self.detail())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub violation: Option<Violation>,
    /// Rendered `violation`.
    pub diagnostic: Option<String>,
}

impl Verdict {
    fn from(check: Result<(), Violation>) -> Self {
        match check {
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
}

/// Checks, in order: shape, injectivity, each path (simple, in `d`, right
/// endpoints), internal disjointness, and each congruence.
pub fn verify_witness(d: &LabeledDigraph, pattern: &SubdivisionPattern, w: &SubdivisionWitness) -> Verdict {
    Verdict::from(check(d, pattern, w))
}

fn check(d: &LabeledDigraph, pattern: &SubdivisionPattern, w: &SubdivisionWitness) -> Result<(), Violation> {
    if w.branch.len() != pattern.vertex_count() || w.paths.len() != pattern.arc_count() {
        return Err(Violation::Shape(format!(
            "{} branch vertices and {} paths for a pattern with {} vertices and {} arcs",
            w.branch.len(),
            w.paths.len(),
            pattern.vertex_count(),
            pattern.arc_count()
        )));
    }
    let mut images = VertexSet::new();
    for (i, &v) in w.branch.iter().enumerate() {
        if !d.contains(v) {
            return Err(Violation::Injectivity(format!(
                "branch vertex {i} maps to {v}, not a vertex"
            )));
        }
        if !images.insert(v) {
            return Err(Violation::Injectivity(format!(
                "vertex {v} is the image of two pattern vertices"
            )));
        }
    }
    for (e, (arc, p)) in pattern.arcs().iter().zip(&w.paths).enumerate() {
        if let Err(err) = p.validate(d) {
            return Err(Violation::Path(e, err.to_string()));
        }
        if p.length() == 0 {
            return Err(Violation::Path(e, "path has no arcs".into()));
        }
        let (s, t) = (w.branch[arc.tail], w.branch[arc.head]);
        if p.first() != s || p.last() != t {
            return Err(Violation::Endpoints(
                e,
                format!("runs {} -> {}, expected {s} -> {t}", p.first(), p.last()),
            ));
        }
    }
    let mut owner: std::collections::BTreeMap<Vertex, usize> = Default::default();
    for (e, p) in w.paths.iter().enumerate() {
        for &v in p.interior() {
            if images.contains(&v) {
                return Err(Violation::Disjointness(format!(
                    "path {e} passes through branch vertex {v}"
                )));
            }
            if let Some(f) = owner.insert(v, e) {
                return Err(Violation::Disjointness(format!(
                    "paths {f} and {e} share internal vertex {v}"
                )));
            }
        }
    }
    for (e, (arc, p)) in pattern.arcs().iter().zip(&w.paths).enumerate() {
        let (z1, z2) = p.label_counts(d).expect("validated path");
        let c = arc.constraint;
        if !c.holds(z1, z2) {
            return Err(Violation::Congruence(
                e,
                format!(
                    "{}*{z1} + {}*{z2} ≡ {} (mod {}), expected {}",
                    c.a,
                    c.b,
                    c.value(z1, z2),
                    c.q,
                    c.r
                ),
            ));
        }
    }
    Ok(())
}
