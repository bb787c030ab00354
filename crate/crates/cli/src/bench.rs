//! `bench <suite>`: generated instances, one CSV row each.

use std::fmt::Write;
use std::time::Instant;

use clap::ValueEnum;

use unbalanced_core::generate::{gen_bioriented_clique, gen_planted, gen_random, NoiseParams};
use unbalanced_core::io::InstanceFile;
use unbalanced_core::{
    find_subdivision, has_unbalanced_cycle, mu_exact, residue_path, Budget, ResidueQuery, SearchOutcome,
    SubdivisionPattern,
};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// mu_exact on bioriented cliques, n = 1..=7.
    MuClique,
    /// mu_exact on random digraphs with 8 vertices.
    MuRandom,
    /// Balance test on random digraphs, 50..=400 vertices.
    Balance,
    /// Residue path queries on random digraphs.
    Residue,
    /// Direct finder on planted triangles with growing noise.
    DirectPlanted,
}

struct Case {
    name: String,
    instance: InstanceFile,
    payload: Payload,
}

enum Payload {
    Mu,
    Balance,
    Residue(ResidueQuery),
    Direct(SubdivisionPattern),
}

const BUDGET: u64 = 10_000_000;

pub fn run(suite: Suite, jobs: usize) -> anyhow::Result<String> {
    let cases = cases(suite)?;
    let mut rows = vec![String::new(); cases.len()];
    let chunk = cases.len().div_ceil(jobs).max(1);
    std::thread::scope(|s| {
        for (cs, out) in cases.chunks(chunk).zip(rows.chunks_mut(chunk)) {
            s.spawn(move || {
                for (c, row) in cs.iter().zip(out.iter_mut()) {
                    *row = time(c);
                }
            });
        }
    });
    let mut csv = String::from("instance,vertices,arcs,result,micros\n");
    for r in rows {
        csv.push_str(&r);
    }
    Ok(csv)
}

fn time(c: &Case) -> String {
    let d = &c.instance.digraph;
    let t = Instant::now();
    let result = match &c.payload {
        Payload::Mu => match mu_exact(d, None) {
            Ok(r) => r.value.to_string(),
            Err(e) => format!("error: {e}"),
        },
        Payload::Balance => (!has_unbalanced_cycle(d)).to_string(),
        Payload::Residue(q) => outcome(residue_path(d, q, &Budget::new(BUDGET))),
        Payload::Direct(p) => outcome(find_subdivision(d, p, &Budget::new(BUDGET))),
    };
    let micros = t.elapsed().as_micros();
    let mut row = String::new();
    let _ = writeln!(
        row,
        "{},{},{},{},{}",
        c.name,
        d.vertex_count(),
        d.arc_count(),
        result,
        micros
    );
    row
}

fn outcome<T>(r: unbalanced_core::Result<SearchOutcome<T>>) -> String {
    match r {
        Ok(SearchOutcome::Found(_)) => "found".into(),
        Ok(SearchOutcome::Absent) => "absent".into(),
        Ok(SearchOutcome::Indeterminate) => "indeterminate".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn cases(suite: Suite) -> anyhow::Result<Vec<Case>> {
    let mut out = Vec::new();
    match suite {
        Suite::MuClique => {
            for n in 1..=7 {
                out.push(Case {
                    name: format!("clique-{n}"),
                    instance: gen_bioriented_clique(n)?,
                    payload: Payload::Mu,
                });
            }
        }
        Suite::MuRandom => {
            for seed in 0..20 {
                out.push(Case {
                    name: format!("random-8-s{seed}"),
                    instance: gen_random(8, 0.35, 0.5, 0.3, seed)?,
                    payload: Payload::Mu,
                });
            }
        }
        Suite::Balance => {
            for n in [50, 100, 200, 400] {
                out.push(Case {
                    name: format!("random-{n}"),
                    instance: gen_random(n, 4.0 / n as f64, 0.5, 0.5, n as u64)?,
                    payload: Payload::Balance,
                });
            }
        }
        Suite::Residue => {
            for (i, n) in [10, 20, 40, 80].into_iter().enumerate() {
                for q in [2, 3, 5] {
                    out.push(Case {
                        name: format!("random-{n}-q{q}"),
                        instance: gen_random(n, 3.0 / n as f64, 0.5, 0.5, i as u64)?,
                        payload: Payload::Residue(ResidueQuery::new(0, 1, 1, 1, 1, q)?),
                    });
                }
            }
        }
        Suite::DirectPlanted => {
            let p = SubdivisionPattern::from_tuples(3, &[(0, 1, 1, 1, 1, 3), (1, 2, 1, 1, 2, 3), (2, 0, 1, 1, 0, 3)])?;
            for extra in [0, 5, 10, 20, 40] {
                let noise = NoiseParams {
                    extra_vertices: extra,
                    extra_arcs: 2 * extra,
                    label_prob: 0.5,
                };
                out.push(Case {
                    name: format!("planted-triangle-x{extra}"),
                    instance: gen_planted(&p, noise, extra as u64)?,
                    payload: Payload::Direct(p.clone()),
                });
            }
        }
    }
    Ok(out)
}
