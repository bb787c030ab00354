use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use unbalanced_core::constructive::{extract_subdivision, ConstructiveConfig};
use unbalanced_core::generate::{
    analytic_oracle, gen_bioriented_clique, gen_pendant_clique, gen_planted, gen_random, NoiseParams,
};
use unbalanced_core::io::{
    emit_instance, emit_witness, instance_to_dot, parse_hints, parse_instance, parse_pattern, parse_witness,
    witness_to_dot, InstanceFile,
};
use unbalanced_core::mu::{mu_greedy_upper, verify_partition};
use unbalanced_core::{
    disjoint_unbalanced_cycles, find_subdivision, mu_exact, set_is_balanced, shortest_unbalanced_cycle, verify_witness,
    Budget, Error, ExactOracle, HintOracle, MuOracle, SearchOutcome, SubdivisionPattern, SubdivisionWitness, VertexSet,
};

mod bench;

const SUCCESS: u8 = 0;
const NEGATIVE: u8 = 1;
const MALFORMED: u8 = 2;
const INDETERMINATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "unbalanced",
    version,
    about = "Unbalanced dichromatic number and congruence-constrained subdivisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute mu with a certificate partition.
    Mu {
        instance: PathBuf,
        /// Give up (exit 3) once mu is proven to exceed K.
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Is the instance (or a subset of it) balanced?
    CheckBalanced {
        instance: PathBuf,
        #[arg(long, num_args = 1.., value_name = "V")]
        subset: Option<Vec<usize>>,
    },
    /// Greedily extract pairwise disjoint unbalanced cycles.
    FindCycles {
        instance: PathBuf,
        #[arg(long, value_name = "T")]
        count: usize,
    },
    /// Search for a subdivision of a pattern.
    FindSubdivision {
        instance: PathBuf,
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Direct)]
        mode: Mode,
        /// Search step budget (direct mode).
        #[arg(long, value_name = "B", default_value_t = 10_000_000)]
        budget: u64,
        /// Picks the starting vertex of the constructive pipeline.
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        /// Special-set floor of the constructive pipeline.
        #[arg(long, default_value_t = ConstructiveConfig::default().floor)]
        floor: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a witness against an instance and a pattern.
    Verify {
        instance: PathBuf,
        pattern: PathBuf,
        witness: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a DOT rendering of an instance, optionally with a witness.
    Dot {
        instance: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time a generated suite and print CSV.
    Bench {
        #[arg(value_enum)]
        suite: bench::Suite,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Bioriented clique, all arcs in Z1.
    Clique {
        n: usize,
        /// Attach a directed tail of this many extra vertices.
        #[arg(long, value_name = "LEN")]
        pendant: Option<usize>,
    },
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        z1: f64,
        #[arg(long, default_value_t = 0.5)]
        z2: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Planted {
        pattern: PathBuf,
        #[arg(long, default_value_t = 0)]
        extra_vertices: usize,
        #[arg(long, default_value_t = 0)]
        extra_arcs: usize,
        #[arg(long, default_value_t = 0.5)]
        label_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Direct,
    Constructive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    Exact,
    Analytic,
    Hints,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleChoice::Exact)]
    oracle: OracleChoice,
    /// Hint table for `--oracle hints`.
    #[arg(long, value_name = "FILE", required_if_eq("oracle", "hints"))]
    hints: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering.
    #[arg(long, value_name = "FILE", global = true)]
    dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::LimitExceeded { .. }) | Some(Error::OracleUnavailable(_)) => INDETERMINATE,
        Some(Error::Construction { .. }) => NEGATIVE,
        _ => MALFORMED,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Mu {
            instance,
            limit,
            oracle,
        } => mu(&instance, limit, &oracle),
        Command::CheckBalanced { instance, subset } => check_balanced(&instance, subset),
        Command::FindCycles { instance, count } => find_cycles(&instance, count),
        Command::FindSubdivision {
            instance,
            pattern,
            mode,
            budget,
            seed,
            floor,
            oracle,
            output,
        } => {
            let f = read_instance(&instance)?;
            let p = read_pattern(&pattern)?;
            let (code, witness) = match mode {
                Mode::Direct => direct(&f, &p, budget)?,
                Mode::Constructive => constructive(&f, &p, seed, floor, &oracle)?,
            };
            if let Some(w) = witness {
                emit(&output.out, &emit_witness(&w))?;
                if let Some(path) = &output.dot {
                    write_atomic(path, &witness_to_dot(&f.digraph, &w))?;
                }
            }
            Ok(code)
        }
        Command::Verify {
            instance,
            pattern,
            witness,
        } => {
            let f = read_instance(&instance)?;
            let p = read_pattern(&pattern)?;
            let w = parse_witness(&read(&witness)?).with_context(|| witness.display().to_string())?;
            let verdict = verify_witness(&f.digraph, &p, &w);
            if verdict.ok {
                println!("PASS");
                Ok(SUCCESS)
            } else {
                println!("FAIL {}", verdict.diagnostic.unwrap_or_default());
                Ok(NEGATIVE)
            }
        }
        Command::Gen { family, output } => {
            let f = generate(family)?;
            emit(&output.out, &emit_instance(&f))?;
            if let Some(path) = &output.dot {
                let dot = match &f.planted {
                    Some(w) => witness_to_dot(&f.digraph, w),
                    None => instance_to_dot(&f.digraph),
                };
                write_atomic(path, &dot)?;
            }
            Ok(SUCCESS)
        }
        Command::Dot { instance, witness, out } => {
            let f = read_instance(&instance)?;
            let dot = match witness {
                Some(path) => {
                    let w = parse_witness(&read(&path)?).with_context(|| path.display().to_string())?;
                    witness_to_dot(&f.digraph, &w)
                }
                None => instance_to_dot(&f.digraph),
            };
            emit(&out, &dot)?;
            Ok(SUCCESS)
        }
        Command::Bench { suite, jobs } => {
            print!("{}", bench::run(suite, jobs.max(1))?);
            Ok(SUCCESS)
        }
    }
}

fn mu(instance: &Path, limit: Option<usize>, args: &OracleArgs) -> anyhow::Result<u8> {
    let f = read_instance(instance)?;
    let d = &f.digraph;
    if args.oracle == OracleChoice::Exact {
        let r = match mu_exact(d, limit) {
            Err(Error::LimitExceeded { limit, lower, upper }) => {
                println!("mu > {limit}");
                println!("lower {lower}");
                println!("upper {upper}");
                return Ok(INDETERMINATE);
            }
            r => r?,
        };
        println!("mu {}", r.value);
        println!("oracle exact");
        println!("certificate {}", r.certificate);
        return Ok(SUCCESS);
    }
    let oracle = load_oracle(&f, args)?;
    let value = oracle.mu(d, &d.vertex_set())?;
    if limit.is_some_and(|k| value > k) {
        println!("mu > {}", limit.unwrap());
        println!("oracle {}", oracle.kind());
        return Ok(INDETERMINATE);
    }
    println!("mu {value}");
    println!("oracle {}", oracle.kind());
    // An oracle gives no partition; print one only if it is tight.
    let greedy = mu_greedy_upper(d);
    if greedy.block_count() == value && verify_partition(d, &greedy)? {
        println!("certificate {greedy}");
    } else {
        println!("certificate none");
    }
    Ok(SUCCESS)
}

fn check_balanced(instance: &Path, subset: Option<Vec<usize>>) -> anyhow::Result<u8> {
    let f = read_instance(instance)?;
    let set: VertexSet = match subset {
        Some(vs) => vs.into_iter().collect(),
        None => f.digraph.vertex_set(),
    };
    let sub = f.digraph.induced(&set)?;
    if set_is_balanced(&f.digraph, &set) {
        println!("balanced");
        return Ok(SUCCESS);
    }
    println!("unbalanced");
    if let Some(c) = shortest_unbalanced_cycle(&sub) {
        println!("cycle {} weight {}", join(c.vertices()), c.weight());
    }
    Ok(NEGATIVE)
}

fn find_cycles(instance: &Path, count: usize) -> anyhow::Result<u8> {
    let f = read_instance(instance)?;
    let packing = disjoint_unbalanced_cycles(&f.digraph, count)?;
    for c in &packing.cycles {
        println!("cycle {} weight {}", join(c.vertices()), c.weight());
    }
    if packing.shortfall > 0 {
        println!("shortfall {}", packing.shortfall);
        return Ok(NEGATIVE);
    }
    Ok(SUCCESS)
}

fn direct(f: &InstanceFile, p: &SubdivisionPattern, budget: u64) -> anyhow::Result<(u8, Option<SubdivisionWitness>)> {
    match find_subdivision(&f.digraph, p, &Budget::new(budget))? {
        SearchOutcome::Found(w) => {
            let verdict = verify_witness(&f.digraph, p, &w);
            if !verdict.ok {
                bail!(
                    "internal error: search produced a rejected witness ({})",
                    verdict.diagnostic.unwrap_or_default()
                );
            }
            Ok((SUCCESS, Some(w)))
        }
        SearchOutcome::Absent => {
            eprintln!("absent");
            Ok((NEGATIVE, None))
        }
        SearchOutcome::Indeterminate => {
            eprintln!("indeterminate: budget of {budget} steps exhausted");
            Ok((INDETERMINATE, None))
        }
    }
}

fn constructive(
    f: &InstanceFile,
    p: &SubdivisionPattern,
    seed: Option<u64>,
    floor: usize,
    args: &OracleArgs,
) -> anyhow::Result<(u8, Option<SubdivisionWitness>)> {
    let d = &f.digraph;
    let vs = d.vertices();
    let start = match seed {
        Some(s) if !vs.is_empty() => Some(vs[(s % vs.len() as u64) as usize]),
        _ => None,
    };
    let config = ConstructiveConfig { floor, start };
    let oracle = load_oracle(f, args)?;
    let ex = extract_subdivision(d, p, oracle.as_ref(), &config)?;
    eprintln!("oracle {}", ex.oracle);
    for c in &ex.caveats {
        eprintln!("caveat: {c}");
    }
    let verdict = verify_witness(d, p, &ex.witness);
    if !verdict.ok {
        eprintln!(
            "construction rejected by verifier: {}",
            verdict.diagnostic.unwrap_or_default()
        );
        return Ok((NEGATIVE, None));
    }
    Ok((SUCCESS, Some(ex.witness)))
}

fn load_oracle(f: &InstanceFile, args: &OracleArgs) -> anyhow::Result<Box<dyn MuOracle>> {
    Ok(match args.oracle {
        OracleChoice::Exact => Box::new(ExactOracle::new()),
        OracleChoice::Analytic => Box::new(analytic_oracle(f)?),
        OracleChoice::Hints => {
            let path = args.hints.as_ref().context("--oracle hints needs --hints FILE")?;
            let hints = parse_hints(&read(path)?).with_context(|| path.display().to_string())?;
            Box::new(HintOracle::new(hints.into_iter().collect::<HashMap<_, _>>()))
        }
    })
}

fn generate(family: GenFamily) -> anyhow::Result<InstanceFile> {
    Ok(match family {
        GenFamily::Clique { n, pendant: None } => gen_bioriented_clique(n)?,
        GenFamily::Clique { n, pendant: Some(t) } => gen_pendant_clique(n, t)?,
        GenFamily::Random { n, p, z1, z2, seed } => gen_random(n, p, z1, z2, seed)?,
        GenFamily::Planted {
            pattern,
            extra_vertices,
            extra_arcs,
            label_prob,
            seed,
        } => {
            let p = read_pattern(&pattern)?;
            gen_planted(
                &p,
                NoiseParams {
                    extra_vertices,
                    extra_arcs,
                    label_prob,
                },
                seed,
            )?
        }
    })
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_instance(path: &Path) -> anyhow::Result<InstanceFile> {
    parse_instance(&read(path)?).with_context(|| path.display().to_string())
}

fn read_pattern(path: &Path) -> anyhow::Result<SubdivisionPattern> {
    parse_pattern(&read(path)?).with_context(|| path.display().to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Temp file in the target directory, then rename.
fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
