//! Text formats for prefix maps, machines, anchored elements and raw
//! initial transducers.
//!
//! Every format starts with an `@` header line of `key=value` fields.
//! `#` starts a comment; blank lines are ignored. Printing is canonical:
//! prefix-map lines in domain order, machine edges by state then letter,
//! anchored cells by input word.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::anchored::{AnchoredHomeo, Cell, RawEdge, RawInitialTransducer};
use crate::error::{Error, Result};
use crate::mealy::SynchronousTransducer;
use crate::prefix_map::PrefixMap;
use crate::words::{Letter, Params, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    PrefixMap(PrefixMap),
    Mealy(SynchronousTransducer),
    Anchored(AnchoredHomeo),
    Raw(RawInitialTransducer),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::PrefixMap(_) => "prefixmap",
            Artifact::Mealy(_) => "mealy",
            Artifact::Anchored(_) => "anchored",
            Artifact::Raw(_) => "raw",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Artifact::PrefixMap(g) => print_prefix_map(g),
            Artifact::Mealy(t) => print_mealy(t),
            Artifact::Anchored(h) => print_anchored(h),
            Artifact::Raw(t) => print_raw(t),
        }
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("").trim();
            (!text.is_empty()).then_some(Line { number: i + 1, text })
        })
        .collect()
}

fn syntax(line: usize, reason: impl Into<String>) -> Error {
    Error::SyntaxError {
        line,
        reason: reason.into(),
    }
}

fn violation(line: usize, err: impl ToString) -> Error {
    Error::InvariantViolation {
        line,
        reason: err.to_string(),
    }
}

struct Header<'a> {
    line: usize,
    fields: HashMap<&'a str, &'a str>,
}

impl<'a> Header<'a> {
    fn parse(line: &Line<'a>, tag: &str, allowed: &[&str]) -> Result<Self> {
        let mut tokens = line.text.split_whitespace();
        if tokens.next() != Some(tag) {
            return Err(syntax(line.number, format!("expected {tag} header")));
        }
        let mut fields = HashMap::new();
        for token in tokens {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| syntax(line.number, format!("expected key=value, found {token:?}")))?;
            if !allowed.contains(&key) {
                return Err(syntax(line.number, format!("unknown field {key:?}")));
            }
            if fields.insert(key, value).is_some() {
                return Err(syntax(line.number, format!("repeated field {key:?}")));
            }
        }
        Ok(Header {
            line: line.number,
            fields,
        })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let value = self
            .fields
            .get(key)
            .ok_or_else(|| syntax(self.line, format!("missing field {key}")))?;
        value
            .parse()
            .map_err(|_| syntax(self.line, format!("bad value for {key}: {value:?}")))
    }

    fn get_opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        if self.fields.contains_key(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn params(&self) -> Result<Params> {
        Params::new(self.get("n")?, self.get("r")?).map_err(|e| violation(self.line, e))
    }
}

/// Reads any artifact, dispatching on the header.
pub fn parse_artifact(text: &str) -> Result<Artifact> {
    let lines = content_lines(text);
    let first = lines
        .first()
        .ok_or_else(|| Error::UnknownHeader("empty input".into()))?;
    let tag = first.text.split_whitespace().next().unwrap_or("");
    match tag {
        "@prefixmap" => parse_prefix_map_lines(&lines).map(Artifact::PrefixMap),
        "@mealy" => parse_mealy_lines(&lines).map(Artifact::Mealy),
        "@anchored" => parse_anchored_lines(&lines).map(Artifact::Anchored),
        "@raw" => parse_raw_lines(&lines).map(Artifact::Raw),
        other => Err(Error::UnknownHeader(other.to_string())),
    }
}

fn word_at(line: usize, text: &str, params: &Params) -> Result<Word> {
    Word::parse(text, params).map_err(|e| syntax(line, e.to_string()))
}

fn number_at<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<T> {
    text.parse().map_err(|_| syntax(line, format!("bad {what} {text:?}")))
}

pub fn parse_prefix_map(text: &str) -> Result<PrefixMap> {
    parse_prefix_map_lines(&content_lines(text))
}

fn parse_prefix_map_lines(lines: &[Line<'_>]) -> Result<PrefixMap> {
    let header = Header::parse(&lines[0], "@prefixmap", &["n", "r"])?;
    let params = header.params()?;
    let mut pairs = Vec::new();
    let mut line_of: HashMap<Word, usize> = HashMap::new();
    for line in &lines[1..] {
        let (u, v) = line
            .text
            .split_once("->")
            .ok_or_else(|| syntax(line.number, "expected `<word> -> <word>`"))?;
        let u = word_at(line.number, u, &params)?;
        let v = word_at(line.number, v, &params)?;
        if !u.is_rooted() || !v.is_rooted() {
            return Err(syntax(line.number, "prefix map words must be rooted"));
        }
        line_of.entry(u.clone()).or_insert(line.number);
        line_of.entry(v.clone()).or_insert(line.number);
        pairs.push((u, v));
    }
    PrefixMap::from_pairs(params, pairs).map_err(|e| {
        let line = match &e {
            Error::NotAntichain(_, b) => line_of.get(b).copied(),
            _ => None,
        };
        violation(line.unwrap_or(header.line), e)
    })
}

pub fn print_prefix_map(g: &PrefixMap) -> String {
    let p = g.params();
    let mut out = format!("@prefixmap n={} r={}\n", p.n, p.r);
    for (u, v) in g.pairs() {
        let _ = writeln!(out, "{} -> {}", u.to_text(p.n), v.to_text(p.n));
    }
    out
}

pub fn parse_mealy(text: &str) -> Result<SynchronousTransducer> {
    parse_mealy_lines(&content_lines(text))
}

fn parse_mealy_lines(lines: &[Line<'_>]) -> Result<SynchronousTransducer> {
    let header = Header::parse(&lines[0], "@mealy", &["n", "states", "start"])?;
    let n: u32 = header.get("n")?;
    let states: usize = header.get("states")?;
    let start: Option<usize> = header.get_opt("start")?;
    if n < 2 || states == 0 {
        return Err(violation(header.line, "need n >= 2 and at least one state"));
    }
    let mut next = vec![vec![None; n as usize]; states];
    let mut out = vec![vec![0; n as usize]; states];
    for line in &lines[1..] {
        let tokens: Vec<&str> = line.text.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(syntax(line.number, "expected `<state> <in> <out> <next>`"));
        }
        let q: usize = number_at(line.number, tokens[0], "state")?;
        let a: Letter = number_at(line.number, tokens[1], "letter")?;
        let b: Letter = number_at(line.number, tokens[2], "letter")?;
        let p: usize = number_at(line.number, tokens[3], "state")?;
        if q >= states || p >= states {
            return Err(violation(line.number, format!("state out of range 0..{states}")));
        }
        if a >= n || b >= n {
            return Err(violation(line.number, format!("letter out of range 0..{n}")));
        }
        if next[q][a as usize].is_some() {
            return Err(violation(line.number, format!("second edge for state {q} letter {a}")));
        }
        next[q][a as usize] = Some(p);
        out[q][a as usize] = b;
    }
    let mut table = Vec::with_capacity(states);
    for (q, row) in next.into_iter().enumerate() {
        let mut full = Vec::with_capacity(n as usize);
        for (a, p) in row.into_iter().enumerate() {
            full.push(p.ok_or_else(|| {
                violation(
                    header.line,
                    format!("transition map is not total: state {q} has no edge for letter {a}"),
                )
            })?);
        }
        table.push(full);
    }
    SynchronousTransducer::new(n, table, out)
        .and_then(|t| t.with_start(start))
        .map_err(|e| violation(header.line, e))
}

pub fn print_mealy(t: &SynchronousTransducer) -> String {
    let mut out = format!("@mealy n={} states={}", t.n(), t.num_states());
    if let Some(s) = t.start() {
        let _ = write!(out, " start={s}");
    }
    out.push('\n');
    for q in 0..t.num_states() {
        for a in 0..t.n() {
            let _ = writeln!(out, "{q} {a} {} {}", t.output(q, a), t.next_state(q, a));
        }
    }
    out
}

pub fn parse_anchored(text: &str) -> Result<AnchoredHomeo> {
    parse_anchored_lines(&content_lines(text))
}

fn parse_anchored_lines(lines: &[Line<'_>]) -> Result<AnchoredHomeo> {
    let header = Header::parse(&lines[0], "@anchored", &["n", "r"])?;
    let params = header.params()?;
    let core_at = lines
        .iter()
        .position(|l| l.text == "@core")
        .ok_or_else(|| syntax(header.line, "missing @core block"))?;
    let cells_at = lines
        .iter()
        .position(|l| l.text == "@cells")
        .ok_or_else(|| syntax(header.line, "missing @cells block"))?;
    if core_at != 1 || cells_at < core_at + 2 {
        return Err(syntax(
            lines[1.min(lines.len() - 1)].number,
            "expected @core, a machine, then @cells",
        ));
    }
    let core = parse_mealy_lines(&lines[core_at + 1..cells_at])?;
    let mut cells = Vec::new();
    for line in &lines[cells_at + 1..] {
        let (u, rest) = line
            .text
            .split_once("->")
            .ok_or_else(|| syntax(line.number, "expected `<u> -> <v> @ <state>`"))?;
        let (v, q) = rest
            .split_once('@')
            .ok_or_else(|| syntax(line.number, "expected `<u> -> <v> @ <state>`"))?;
        let input = word_at(line.number, u, &params)?;
        let output = word_at(line.number, v, &params)?;
        if !input.is_rooted() || !output.is_rooted() {
            return Err(syntax(line.number, "cell words must be rooted"));
        }
        let state: usize = number_at(line.number, q.trim(), "state")?;
        if state >= core.num_states() {
            return Err(violation(line.number, format!("state {state} is not a core state")));
        }
        cells.push(Cell { input, output, state });
    }
    AnchoredHomeo::new(params, core, cells).map_err(|e| violation(lines[cells_at].number, e))
}

pub fn print_anchored(h: &AnchoredHomeo) -> String {
    let p = h.params();
    let mut out = format!("@anchored n={} r={}\n@core\n", p.n, p.r);
    out.push_str(&print_mealy(h.core()));
    out.push_str("@cells\n");
    for c in h.cells() {
        let _ = writeln!(
            out,
            "{} -> {} @ {}",
            c.input.to_text(p.n),
            c.output.to_text(p.n),
            c.state
        );
    }
    out
}

pub fn parse_raw(text: &str) -> Result<RawInitialTransducer> {
    parse_raw_lines(&content_lines(text))
}

fn parse_raw_lines(lines: &[Line<'_>]) -> Result<RawInitialTransducer> {
    let header = Header::parse(&lines[0], "@raw", &["n", "r", "states", "initial"])?;
    let params = header.params()?;
    let states: usize = header.get("states")?;
    let initial: usize = header.get("initial")?;
    if initial >= states {
        return Err(violation(header.line, "initial state out of range"));
    }
    let width = |q: usize| if q == initial { params.r } else { params.n } as usize;
    let mut edges: Vec<Vec<Option<RawEdge>>> = (0..states).map(|q| vec![None; width(q)]).collect();
    for line in &lines[1..] {
        let tokens: Vec<&str> = line.text.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(syntax(line.number, "expected `<state> <in> <out-word> <next>`"));
        }
        let q: usize = number_at(line.number, tokens[0], "state")?;
        if q >= states {
            return Err(violation(line.number, format!("state out of range 0..{states}")));
        }
        let a: usize = if q == initial {
            let dot = tokens[1]
                .strip_prefix('d')
                .ok_or_else(|| syntax(line.number, "the initial state reads dot letters d<i>"))?;
            number_at(line.number, dot, "dot letter")?
        } else {
            number_at(line.number, tokens[1], "letter")?
        };
        if a >= width(q) {
            return Err(violation(
                line.number,
                format!("input letter {} out of range", tokens[1]),
            ));
        }
        let output = word_at(line.number, tokens[2], &params)?;
        let next: usize = number_at(line.number, tokens[3], "state")?;
        if edges[q][a].is_some() {
            return Err(violation(
                line.number,
                format!("second edge for state {q} letter {}", tokens[1]),
            ));
        }
        edges[q][a] = Some(RawEdge { output, next });
    }
    let mut table = Vec::with_capacity(states);
    for (q, row) in edges.into_iter().enumerate() {
        let mut full = Vec::with_capacity(row.len());
        for (a, e) in row.into_iter().enumerate() {
            full.push(e.ok_or_else(|| {
                violation(
                    header.line,
                    format!("transition map is not total: state {q} has no edge for letter {a}"),
                )
            })?);
        }
        table.push(full);
    }
    let raw = RawInitialTransducer {
        params,
        initial,
        edges: table,
    };
    raw.validate().map_err(|e| violation(header.line, e))?;
    Ok(raw)
}

pub fn print_raw(t: &RawInitialTransducer) -> String {
    let p = t.params;
    let mut out = format!(
        "@raw n={} r={} states={} initial={}\n",
        p.n,
        p.r,
        t.edges.len(),
        t.initial
    );
    for (q, row) in t.edges.iter().enumerate() {
        for (a, e) in row.iter().enumerate() {
            let input = if q == t.initial { format!("d{a}") } else { a.to_string() };
            let _ = writeln!(out, "{q} {input} {} {}", e.output.to_text(p.n), e.next);
        }
    }
    out
}
