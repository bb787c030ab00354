use crate::decomposition::{push_caveat, query, Caveat};
use crate::digraph::{DirectedPath, LabeledDigraph, Vertex, VertexSet};
use crate::direct::verify_witness;
use crate::error::{Error, Result};
use crate::oracle::{MuOracle, OracleKind};
use crate::pattern::{SubdivisionPattern, SubdivisionWitness};

use super::universal::residue_universal_set;
use super::{subdivision_threshold, ConstructiveConfig, Stage};

/// A verified subdivision together with the nested sets it was built in.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub witness: SubdivisionWitness,
    /// Strong component the construction ran in.
    pub host: VertexSet,
    /// Pattern arc indices in the order they were routed (outermost first).
    pub order: Vec<usize>,
    /// `sets[i]` is the residue-universal set of depth `i`.
    pub sets: Vec<VertexSet>,
    pub mu_host: Option<usize>,
    pub threshold: Option<u128>,
    pub oracle: OracleKind,
    pub caveats: Vec<Caveat>,
}

impl Extraction {
    pub fn is_certified(&self) -> bool {
        self.caveats.is_empty()
    }
}

/// Arc indices by decreasing modulus, ties by index.
pub fn extraction_order(pattern: &SubdivisionPattern) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pattern.arc_count()).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(pattern.arcs()[e].constraint.q), e));
    order
}

/// Peels off one pattern arc per level: a residue-universal set for that
/// arc's modulus, the rest of the pattern recursively inside it, then the
/// arc routed as an `X`-path with the required residue.
pub fn extract_subdivision(
    d: &LabeledDigraph,
    pattern: &SubdivisionPattern,
    oracle: &dyn MuOracle,
    config: &ConstructiveConfig,
) -> Result<Extraction> {
    let mut caveats = Vec::new();
    let order = extraction_order(pattern);
    let threshold = subdivision_threshold(pattern);

    let comps = d.strong_components();
    let mut host: Option<(Option<usize>, VertexSet)> = None;
    for c in comps {
        let mu = query(oracle, d, &c, &mut caveats)?;
        let better = match &host {
            None => true,
            Some((best, set)) => match (mu, best) {
                (Some(a), Some(b)) => a > *b,
                (Some(_), None) => true,
                (None, None) => c.len() > set.len(),
                (None, Some(_)) => false,
            },
        };
        if better {
            host = Some((mu, c));
        }
    }
    let (mu_host, host) = host.unwrap_or((None, VertexSet::new()));
    let host = if pattern.arc_count() == 0 { d.vertex_set() } else { host };
    if mu_host.is_none_or(|m| (m as u128) < threshold.unwrap_or(u128::MAX)) {
        push_caveat(
            &mut caveats,
            Caveat::BelowThreshold {
                mu: mu_host,
                threshold: threshold.unwrap_or(u128::MAX),
            },
        );
    }

    let mut branch: Vec<Option<Vertex>> = vec![None; pattern.vertex_count()];
    let mut paths: Vec<Option<DirectedPath>> = vec![None; pattern.arc_count()];
    let mut sets = Vec::new();
    build(
        d,
        pattern,
        &order,
        0,
        &host,
        oracle,
        config,
        &mut branch,
        &mut paths,
        &mut sets,
        &mut caveats,
    )?;

    let witness = SubdivisionWitness {
        branch: branch.into_iter().map(|b| b.unwrap()).collect(),
        paths: paths.into_iter().map(|p| p.unwrap()).collect(),
    };
    let verdict = verify_witness(d, pattern, &witness);
    if !verdict.ok {
        return Err(Error::construction(
            Stage::Verification,
            verdict.diagnostic.unwrap_or_else(|| "witness rejected".into()),
        ));
    }
    Ok(Extraction {
        witness,
        host,
        order,
        sets,
        mu_host,
        threshold,
        oracle: oracle.kind(),
        caveats,
    })
}

#[allow(clippy::too_many_arguments)]
fn build(
    d: &LabeledDigraph,
    pattern: &SubdivisionPattern,
    order: &[usize],
    depth: usize,
    set: &VertexSet,
    oracle: &dyn MuOracle,
    config: &ConstructiveConfig,
    branch: &mut [Option<Vertex>],
    paths: &mut [Option<DirectedPath>],
    sets: &mut Vec<VertexSet>,
    caveats: &mut Vec<Caveat>,
) -> Result<()> {
    let Some((&f, rest)) = order[depth..].split_first() else {
        let k = pattern.vertex_count();
        if set.len() < k {
            return Err(Error::construction(
                Stage::Base,
                format!("{} vertices left for {k} branch vertices", set.len()),
            )
            .within(Stage::ExtractDepth(depth)));
        }
        for (slot, &v) in branch.iter_mut().zip(set.iter()) {
            *slot = Some(v);
        }
        return Ok(());
    };
    let arc = pattern.arcs()[f];
    let c = arc.constraint;
    // what the rest of the pattern needs, for the threshold report only
    let inner_pattern = SubdivisionPattern::new(
        pattern.vertex_count(),
        rest.iter().map(|&e| pattern.arcs()[e]).collect(),
    )?;
    let target = subdivision_threshold(&inner_pattern).unwrap_or(u128::MAX);
    let host = d.induced(set)?;
    let cfg = ConstructiveConfig {
        start: if depth == 0 { config.start } else { None },
        ..*config
    };
    let rus =
        residue_universal_set(&host, c.q, target, oracle, &cfg).map_err(|e| e.within(Stage::ExtractDepth(depth)))?;
    for cav in &rus.caveats {
        // the overall threshold is reported once, at the top
        if !matches!(cav, Caveat::BelowThreshold { .. }) {
            push_caveat(caveats, cav.clone());
        }
    }
    sets.push(rus.set.clone());
    build(
        d,
        pattern,
        order,
        depth + 1,
        &rus.set,
        oracle,
        config,
        branch,
        paths,
        sets,
        caveats,
    )?;

    let (u, v) = (branch[arc.tail].unwrap(), branch[arc.head].unwrap());
    let path = rus
        .query(&host, u, v, c.a, c.b, c.r as i64)
        .map_err(|e| e.within(Stage::Route).within(Stage::ExtractDepth(depth)))?;
    paths[f] = Some(path);
    Ok(())
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
    fn no_arcs_picks_smallest_vertices() {
        let d = LabeledDigraph::new(5, []).unwrap();
        let p = SubdivisionPattern::from_tuples(3, &[]).unwrap();
        let e = extract_subdivision(&d, &p, &ExactOracle::new(), &ConstructiveConfig::default()).unwrap();
        assert_eq!(e.witness.branch, vec![0, 1, 2]);
        assert!(e.witness.paths.is_empty());
    }

    #[test]
    fn single_arc_both_parities() {
        let d = clique_z1(26);
        let o = CliqueOracle::new(&d).unwrap();
        for r in 0..2 {
            let p = SubdivisionPattern::from_tuples(2, &[(0, 1, 1, 1, r, 2)]).unwrap();
            let e = extract_subdivision(&d, &p, &o, &ConstructiveConfig::default()).unwrap();
            assert_eq!(e.witness.paths[0].length() as i64 % 2, r);
            assert!(verify_witness(&d, &p, &e.witness).ok);
        }
    }

    #[test]
    fn balanced_digraph_fails() {
        let d = LabeledDigraph::new(3, [Arc::plain(0, 1), Arc::plain(1, 2), Arc::plain(2, 0)]).unwrap();
        let p = SubdivisionPattern::from_tuples(2, &[(0, 1, 1, 1, 0, 2)]).unwrap();
        let err = extract_subdivision(&d, &p, &ExactOracle::new(), &ConstructiveConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { .. }));
    }

    #[test]
    fn order_is_by_decreasing_modulus() {
        let p =
            SubdivisionPattern::from_tuples(3, &[(0, 1, 1, 1, 0, 2), (1, 2, 1, 1, 0, 5), (2, 0, 1, 1, 0, 5)]).unwrap();
        assert_eq!(extraction_order(&p), vec![1, 2, 0]);
    }
}
