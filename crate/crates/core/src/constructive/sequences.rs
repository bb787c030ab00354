use crate::decomposition::{push_caveat, query, threshold_check, Caveat};
use crate::digraph::{DirectedPath, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::{MuOracle, OracleKind};

use super::special::special_set;
use super::verify::check_gadget_sequences;
use super::{threshold_sequences, ConstructiveConfig, Stage};

/// `2q - 3` special sets applied one inside the other.
///
/// Indices are 0-based: `anchors[j]` lies in `outer[j]`, gadget `j` consists
/// of `inner[j]`, `paths[j]`, `residues[j]` and `entry_paths[j]`, and
/// `outer[j + 1]` is the set it hands on. `outer` and `anchors` have one
/// more entry than there are gadgets.
#[derive(Debug, Clone)]
pub struct GadgetSequences {
    pub q: u64,
    pub outer: Vec<VertexSet>,
    pub inner: Vec<VertexSet>,
    pub anchors: Vec<Vertex>,
    pub paths: Vec<DirectedPath>,
    /// `(r_j, s_j)`.
    pub residues: Vec<(u64, u64)>,
    /// Paths from `anchors[j]` to the first and the second vertex of `paths[j]`.
    pub entry_paths: Vec<[DirectedPath; 2]>,
    /// Oracle mu of each `outer[j]`.
    pub mu_trace: Vec<Option<usize>>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

impl GadgetSequences {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn last_set(&self) -> &VertexSet {
        self.outer.last().unwrap()
    }

    pub fn last_anchor(&self) -> Vertex {
        *self.anchors.last().unwrap()
    }

    /// The first arc of gadget path `j`.
    pub fn gadget_arc(&self, j: usize) -> (Vertex, Vertex) {
        let p = self.paths[j].vertices();
        (p[0], p[1])
    }

    /// Whether `2 (mu(X_{j+1}) + 3072) >= mu(X_j) + 3072` holds at every step
    /// where both values are known.
    pub fn recurrence_holds(&self) -> bool {
        self.mu_trace.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => 2 * (b + 3072) >= a + 3072,
            _ => true,
        })
    }

    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

pub fn gadget_sequences(
    d: &LabeledDigraph,
    x: Vertex,
    q: u64,
    oracle: &dyn MuOracle,
    config: &ConstructiveConfig,
) -> Result<GadgetSequences> {
    if !d.contains(x) {
        return Err(Error::invalid(format!("vertex {x} is not in the digraph")));
    }
    if q < 2 {
        return Err(Error::invalid(format!("modulus {q} must be at least 2")));
    }
    if !d.is_strongly_connected() {
        return Err(Error::precondition(
            "gadget sequences require a strongly connected digraph",
        ));
    }
    let mut caveats = Vec::new();
    let mut outer = vec![d.vertex_set()];
    let mut mu_trace = vec![query(oracle, d, &outer[0], &mut caveats)?];
    threshold_check(mu_trace[0], threshold_sequences(q).unwrap_or(u128::MAX), &mut caveats);
    let steps = (2 * q - 3) as usize;
    let mut seq = GadgetSequences {
        q,
        outer: Vec::new(),
        inner: Vec::with_capacity(steps),
        anchors: vec![x],
        paths: Vec::with_capacity(steps),
        residues: Vec::with_capacity(steps),
        entry_paths: Vec::with_capacity(steps),
        mu_trace: Vec::new(),
        oracle: oracle.kind(),
        caveats: Vec::new(),
    };
    for j in 0..steps {
        let host = d.induced(outer.last().unwrap())?;
        let anchor = *seq.anchors.last().unwrap();
        let step = special_set(&host, anchor, q, oracle, config).map_err(|e| e.within(Stage::GadgetStep(j + 1)))?;
        for c in &step.caveats {
            if !matches!(c, Caveat::BelowThreshold { .. }) {
                push_caveat(&mut caveats, c.clone());
            }
        }
        seq.inner.push(step.y);
        outer.push(step.u);
        mu_trace.push(step.mu_u);
        seq.anchors.push(step.w);
        seq.paths.push(step.path);
        seq.residues.push((step.r, step.s));
        seq.entry_paths.push(step.entry_paths);
    }
    seq.outer = outer;
    seq.mu_trace = mu_trace;
    seq.caveats = caveats;
    check_gadget_sequences(d, &seq).map_err(|v| Error::construction(Stage::Verification, v.to_string()))?;
    Ok(seq)
}
