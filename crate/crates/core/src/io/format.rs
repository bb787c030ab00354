//! Line-oriented text formats.
//!
//! Every file starts with `format_version 1`. Records are one per line,
//! blank lines and `#` comments are skipped on input, and emitted files are
//! canonical: fixed record order, arcs sorted, flags written as `0`/`1`.
//!
//! ```text
//! format_version 1
//! vertices 3
//! family bioriented-clique
//! mu_analytic 3
//! arc 0 1 1 0
//! planted_branch 0 2
//! planted_path 0 2 1
//! ```
//!
//! Patterns use `arc tail head a b r q`, witnesses `branch p v` and
//! `path e v0 v1 ...`, hint tables `hint mu v...`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::digraph::{Arc, DirectedPath, LabeledDigraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::pattern::{Congruence, PatternArc, SubdivisionPattern, SubdivisionWitness};

pub const FORMAT_VERSION: u32 = 1;

/// A digraph with optional generator metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub digraph: LabeledDigraph,
    pub family: Option<String>,
    /// Only set by generators that can certify it.
    pub mu_analytic: Option<usize>,
    pub planted: Option<SubdivisionWitness>,
}

impl InstanceFile {
    pub fn plain(digraph: LabeledDigraph) -> Self {
        InstanceFile {
            digraph,
            family: None,
            mu_analytic: None,
            planted: None,
        }
    }
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    fields: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            field: field.into(),
            message: message.into(),
        }
    }

    fn arity(&self, names: &[&str]) -> Result<()> {
        if self.fields.len() != names.len() {
            return Err(self.err(
                self.keyword,
                format!(
                    "expected {} field(s) ({}), found {}",
                    names.len(),
                    names.join(" "),
                    self.fields.len()
                ),
            ));
        }
        Ok(())
    }

    fn at_least(&self, n: usize, what: &str) -> Result<()> {
        if self.fields.len() < n {
            return Err(self.err(self.keyword, format!("expected at least {n} field(s): {what}")));
        }
        Ok(())
    }

    fn get<T: FromStr>(&self, i: usize, name: &str) -> Result<T> {
        let raw = self.fields[i];
        raw.parse().map_err(|_| self.err(name, format!("cannot parse `{raw}`")))
    }

    fn flag(&self, i: usize, name: &str) -> Result<bool> {
        match self.fields[i] {
            "0" => Ok(false),
            "1" => Ok(true),
            raw => Err(self.err(name, format!("flag must be 0 or 1, found `{raw}`"))),
        }
    }

    fn vertex(&self, i: usize, name: &str, n: usize) -> Result<Vertex> {
        let v: Vertex = self.get(i, name)?;
        if v >= n {
            return Err(self.err(name, format!("vertex {v} outside 0..{n}")));
        }
        Ok(v)
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap().trim();
        let mut parts = content.split_whitespace();
        let keyword = parts.next()?;
        Some(Line {
            number: i + 1,
            keyword,
            fields: parts.collect(),
        })
    })
}

/// Reads the `format_version` header and the `vertices` (or given) count line.
fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>, count_keyword: &str) -> Result<usize> {
    let first = it.next().ok_or(Error::Parse {
        line: 1,
        field: "format_version".into(),
        message: "empty file".into(),
    })?;
    if first.keyword != "format_version" {
        return Err(first.err(
            "format_version",
            format!("expected `format_version`, found `{}`", first.keyword),
        ));
    }
    first.arity(&["version"])?;
    let version: u32 = first.get(0, "version")?;
    if version != FORMAT_VERSION {
        return Err(first.err("version", format!("unsupported version {version}")));
    }
    let second = it.next().ok_or(Error::Parse {
        line: first.number + 1,
        field: count_keyword.into(),
        message: format!("missing `{count_keyword}` line"),
    })?;
    if second.keyword != count_keyword {
        return Err(second.err(
            count_keyword,
            format!("expected `{count_keyword}`, found `{}`", second.keyword),
        ));
    }
    second.arity(&["count"])?;
    second.get(0, "count")
}

fn unknown(line: &Line) -> Error {
    line.err("keyword", format!("unknown record `{}`", line.keyword))
}

/// Branch and path records shared by instance metadata and witness files.
#[derive(Default)]
struct WitnessBuilder {
    branch: Vec<(usize, Vertex)>,
    paths: Vec<(usize, Vec<Vertex>)>,
}

impl WitnessBuilder {
    fn branch(&mut self, l: &Line, n: usize) -> Result<()> {
        l.arity(&["pattern_vertex", "vertex"])?;
        self.branch
            .push((l.get(0, "pattern_vertex")?, l.vertex(1, "vertex", n)?));
        Ok(())
    }

    fn path(&mut self, l: &Line, n: usize) -> Result<()> {
        l.at_least(2, "arc index and at least one vertex")?;
        let e: usize = l.get(0, "arc")?;
        let vs = (1..l.fields.len())
            .map(|i| l.vertex(i, "vertex", n))
            .collect::<Result<Vec<_>>>()?;
        self.paths.push((e, vs));
        Ok(())
    }

    fn finish(mut self, last_line: usize) -> Result<Option<SubdivisionWitness>> {
        if self.branch.is_empty() && self.paths.is_empty() {
            return Ok(None);
        }
        let bad = |field: &str, message: String| Error::Parse {
            line: last_line,
            field: field.into(),
            message,
        };
        self.branch.sort_unstable();
        self.paths.sort_by_key(|p| p.0);
        for (i, &(p, _)) in self.branch.iter().enumerate() {
            if p != i {
                return Err(bad(
                    "pattern_vertex",
                    format!("branch records must cover 0..{} once each", self.branch.len()),
                ));
            }
        }
        for (i, (e, _)) in self.paths.iter().enumerate() {
            if *e != i {
                return Err(bad(
                    "arc",
                    format!("path records must cover 0..{} once each", self.paths.len()),
                ));
            }
        }
        Ok(Some(SubdivisionWitness {
            branch: self.branch.into_iter().map(|b| b.1).collect(),
            paths: self.paths.into_iter().map(|p| DirectedPath::new(p.1)).collect(),
        }))
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut it = lines(text);
    let n = header(&mut it, "vertices")?;
    let mut arcs = Vec::new();
    let mut family = None;
    let mut mu_analytic = None;
    let mut witness = WitnessBuilder::default();
    let mut last = 2;
    for l in it {
        last = l.number;
        match l.keyword {
            "arc" => {
                l.arity(&["tail", "head", "z1", "z2"])?;
                arcs.push(Arc::new(
                    l.vertex(0, "tail", n)?,
                    l.vertex(1, "head", n)?,
                    l.flag(2, "z1")?,
                    l.flag(3, "z2")?,
                ));
            }
            "family" => {
                l.arity(&["name"])?;
                family = Some(l.fields[0].to_string());
            }
            "mu_analytic" => {
                l.arity(&["value"])?;
                mu_analytic = Some(l.get(0, "value")?);
            }
            "planted_branch" => witness.branch(&l, n)?,
            "planted_path" => witness.path(&l, n)?,
            _ => return Err(unknown(&l)),
        }
    }
    Ok(InstanceFile {
        digraph: LabeledDigraph::new(n, arcs)?,
        family,
        mu_analytic,
        planted: witness.finish(last)?,
    })
}

fn push_witness(out: &mut String, w: &SubdivisionWitness, branch_kw: &str, path_kw: &str) {
    for (i, v) in w.branch.iter().enumerate() {
        writeln!(out, "{branch_kw} {i} {v}").unwrap();
    }
    for (e, p) in w.paths.iter().enumerate() {
        write!(out, "{path_kw} {e}").unwrap();
        for v in p.vertices() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
}

pub fn emit_instance(f: &InstanceFile) -> String {
    let d = &f.digraph;
    let mut out = format!("format_version {FORMAT_VERSION}\nvertices {}\n", d.universe());
    if let Some(fam) = &f.family {
        writeln!(out, "family {fam}").unwrap();
    }
    if let Some(mu) = f.mu_analytic {
        writeln!(out, "mu_analytic {mu}").unwrap();
    }
    for a in d.arcs() {
        writeln!(out, "arc {} {} {} {}", a.tail, a.head, a.z1 as u8, a.z2 as u8).unwrap();
    }
    if let Some(w) = &f.planted {
        push_witness(&mut out, w, "planted_branch", "planted_path");
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<SubdivisionPattern> {
    let mut it = lines(text);
    let k = header(&mut it, "vertices")?;
    let mut arcs = Vec::new();
    for l in it {
        if l.keyword != "arc" {
            return Err(unknown(&l));
        }
        l.arity(&["tail", "head", "a", "b", "r", "q"])?;
        let (tail, head) = (l.vertex(0, "tail", k)?, l.vertex(1, "head", k)?);
        let (a, b, r, q): (i64, i64, i64, u64) = (l.get(2, "a")?, l.get(3, "b")?, l.get(4, "r")?, l.get(5, "q")?);
        let constraint = Congruence::new(a, b, r, q).map_err(|e| l.err("q", e.to_string()))?;
        arcs.push(PatternArc { tail, head, constraint });
    }
    SubdivisionPattern::new(k, arcs)
}

pub fn emit_pattern(p: &SubdivisionPattern) -> String {
    let mut out = format!("format_version {FORMAT_VERSION}\nvertices {}\n", p.vertex_count());
    for a in p.arcs() {
        let c = a.constraint;
        writeln!(out, "arc {} {} {} {} {} {}", a.tail, a.head, c.a, c.b, c.r, c.q).unwrap();
    }
    out
}

/// A witness file names its own vertex range only implicitly; any
/// non-negative identifier is accepted and checked later by verification.
pub fn parse_witness(text: &str) -> Result<SubdivisionWitness> {
    let mut it = lines(text);
    let first = it.next().ok_or(Error::Parse {
        line: 1,
        field: "format_version".into(),
        message: "empty file".into(),
    })?;
    if first.keyword != "format_version" {
        return Err(first.err(
            "format_version",
            format!("expected `format_version`, found `{}`", first.keyword),
        ));
    }
    first.arity(&["version"])?;
    if first.get::<u32>(0, "version")? != FORMAT_VERSION {
        return Err(first.err("version", "unsupported version"));
    }
    let mut b = WitnessBuilder::default();
    let mut last = first.number;
    for l in it {
        last = l.number;
        match l.keyword {
            "branch" => b.branch(&l, usize::MAX)?,
            "path" => b.path(&l, usize::MAX)?,
            _ => return Err(unknown(&l)),
        }
    }
    Ok(b.finish(last)?.unwrap_or(SubdivisionWitness {
        branch: Vec::new(),
        paths: Vec::new(),
    }))
}

pub fn emit_witness(w: &SubdivisionWitness) -> String {
    let mut out = format!("format_version {FORMAT_VERSION}\n");
    push_witness(&mut out, w, "branch", "path");
    out
}

/// `hint mu v1 v2 ...` records: the value of mu on the induced subdigraph.
pub fn parse_hints(text: &str) -> Result<Vec<(VertexSet, usize)>> {
    let mut out = Vec::new();
    for l in lines(text) {
        if l.keyword == "format_version" {
            continue;
        }
        if l.keyword != "hint" {
            return Err(unknown(&l));
        }
        l.at_least(1, "mu value")?;
        let mu = l.get(0, "mu")?;
        let set = (1..l.fields.len())
            .map(|i| l.get(i, "vertex"))
            .collect::<Result<VertexSet>>()?;
        out.push((set, mu));
    }
    Ok(out)
}

pub fn emit_hints(hints: &[(VertexSet, usize)]) -> String {
    let mut out = format!("format_version {FORMAT_VERSION}\n");
    for (set, mu) in hints {
        write!(out, "hint {mu}").unwrap();
        for v in set {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIGON: &str = "format_version 1\nvertices 2\narc 0 1 1 0\narc 1 0 0 0\n";

    #[test]
    fn digon_round_trip() {
        let f = parse_instance(DIGON).unwrap();
        assert_eq!(f.digraph.arc_count(), 2);
        assert_eq!(emit_instance(&f), DIGON);
    }

    #[test]
    fn duplicate_arc_is_validation_error() {
        let text = "format_version 1\nvertices 2\narc 0 1 0 0\narc 0 1 1 0\n";
        assert!(matches!(parse_instance(text), Err(Error::Validation(_))));
    }

    #[test]
    fn parse_errors_locate_field() {
        let text = "format_version 1\nvertices 2\n\narc 0 1 2 0\n";
        match parse_instance(text) {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field.as_str()), (4, "z1")),
            other => panic!("{other:?}"),
        }
        match parse_instance("format_version 1\nvertices 2\narc 0 5 0 0\n") {
            Err(Error::Parse { line, field, .. }) => assert_eq!((line, field.as_str()), (3, "head")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_instance("vertices 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("format_version 2\nvertices 2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_instance("format_version 1\nvertices 2\nedge 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn metadata_round_trip() {
        let text = "format_version 1\nvertices 3\nfamily planted\narc 0 2 1 0\narc 2 1 0 1\nplanted_branch 0 0\nplanted_branch 1 1\nplanted_path 0 0 2 1\n";
        let f = parse_instance(text).unwrap();
        assert_eq!(f.planted.as_ref().unwrap().paths[0].vertices(), &[0, 2, 1]);
        assert_eq!(emit_instance(&f), text);
    }

    #[test]
    fn pattern_and_witness_round_trip() {
        let text = "format_version 1\nvertices 3\narc 0 1 1 1 1 2\narc 1 2 2 -1 0 3\n";
        let p = parse_pattern(text).unwrap();
        assert_eq!(emit_pattern(&p), text);
        assert!(matches!(
            parse_pattern("format_version 1\nvertices 2\narc 0 1 2 1 0 4\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        let w = "format_version 1\nbranch 0 4\nbranch 1 2\npath 0 4 3 2\n";
        assert_eq!(emit_witness(&parse_witness(w).unwrap()), w);
    }

    #[test]
    fn hints_round_trip() {
        let text = "format_version 1\nhint 2 0 1 2\nhint 1 3\n";
        let h = parse_hints(text).unwrap();
        assert_eq!(h[0], (VertexSet::from([0, 1, 2]), 2));
        assert_eq!(emit_hints(&h), text);
    }
}
