//! DIMACS shortest-path (`.gr`) reading and writing.
//!
//! ```text
//! c comment
//! p sp <n> <m>
//! n <v> s          optional source designator
//! a <u> <v> <w>    1-based ids, signed weights
//! ```
//!
//! Negative weights are accepted. Writing is canonical: problem line, source
//! line if any, then arcs in id order, so `write(parse(write(g)))` is
//! byte-identical to `write(g)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error as GraphError;
use crate::graph::{Arc, Graph, VertexId, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsInstance {
    pub graph: Graph,
    pub source: Option<VertexId>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<VertexId, ParseError> {
    let v: usize = field(tok, line, "vertex id")?;
    if v == 0 || v > n {
        return Err(err(line, format!("vertex id {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_dimacs(bytes: &[u8]) -> Result<DimacsInstance, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        err(line, "input is not valid UTF-8")
    })?;
    let mut header: Option<(usize, usize)> = None;
    let mut source = None;
    let mut arcs = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                let kind: String = field(toks.next(), line, "problem type")?;
                if kind != "sp" {
                    return Err(err(line, format!("unsupported problem type `{kind}`")));
                }
                let n: usize = field(toks.next(), line, "vertex count")?;
                let m: usize = field(toks.next(), line, "arc count")?;
                if n == 0 {
                    return Err(err(line, "graph must have at least one vertex"));
                }
                if n > crate::graph::MAX_VERTICES {
                    return Err(err(line, format!("{n} vertices exceeds 2^20")));
                }
                header = Some((n, m));
                arcs.reserve(m.min(1 << 24));
            }
            "a" => {
                let (n, m) = header.ok_or_else(|| err(line, "arc before problem line"))?;
                let u = vertex(toks.next(), line, n)?;
                let v = vertex(toks.next(), line, n)?;
                let w: Weight = field(toks.next(), line, "weight")?;
                if w.unsigned_abs() > crate::graph::MAX_ABS_WEIGHT as u64 {
                    return Err(err(line, format!("weight {w} exceeds 2^40 in magnitude")));
                }
                if arcs.len() == m {
                    return Err(err(line, format!("more than {m} arcs")));
                }
                arcs.push(Arc::new(u, v, w));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| err(line, "source line before problem line"))?;
                let v = vertex(toks.next(), line, n)?;
                match toks.next() {
                    Some("s") => {}
                    other => {
                        return Err(err(line, format!("unsupported node designator {other:?}")))
                    }
                }
                if source.replace(v).is_some() {
                    return Err(err(line, "duplicate source line"));
                }
            }
            other => return Err(err(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(err(line, "trailing tokens"));
        }
    }

    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing problem line"))?;
    if arcs.len() != m {
        return Err(err(
            last_line.max(1),
            format!("problem line declares {m} arcs, found {}", arcs.len()),
        ));
    }
    let graph = Graph::new(n, arcs).map_err(|e: GraphError| err(last_line, e.to_string()))?;
    Ok(DimacsInstance { graph, source })
}

pub fn write_dimacs(g: &Graph) -> String {
    write_dimacs_with_source(g, None)
}

pub fn write_dimacs_with_source(g: &Graph, source: Option<VertexId>) -> String {
    let mut out = String::with_capacity(16 + 24 * g.m());
    writeln!(out, "p sp {} {}", g.n(), g.m()).unwrap();
    if let Some(s) = source {
        writeln!(out, "n {} s", s + 1).unwrap();
    }
    for a in g.arcs() {
        writeln!(out, "a {} {} {}", a.source + 1, a.target + 1, a.weight).unwrap();
    }
    out
}

/// One line per vertex: `<1-based id> <potential>`.
pub fn write_potentials(potentials: &[Weight]) -> String {
    let mut out = String::with_capacity(16 * potentials.len());
    for (v, p) in potentials.iter().enumerate() {
        writeln!(out, "{} {}", v + 1, p).unwrap();
    }
    out
}

pub fn parse_potentials(text: &str, n: usize) -> Result<Vec<Weight>, ParseError> {
    let mut out = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        if raw.trim().is_empty() {
            continue;
        }
        let v = vertex(toks.next(), line, n)?;
        let p: Weight = field(toks.next(), line, "potential")?;
        if out[v].replace(p).is_some() {
            return Err(err(line, format!("duplicate vertex {}", v + 1)));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| err(0, format!("no potential for vertex {}", v + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let inst = parse_dimacs(b"p sp 3 3\na 1 2 2\na 2 3 -5\na 1 3 0\n").unwrap();
        assert_eq!(
            inst.graph,
            Graph::from_triples(3, &[(0, 1, 2), (1, 2, -5), (0, 2, 0)]).unwrap()
        );
        assert_eq!(inst.source, None);

        let inst = parse_dimacs(b"p sp 1 0").unwrap();
        assert_eq!(inst.graph.n(), 1);
        assert_eq!(inst.graph.m(), 0);

        let e = parse_dimacs(b"p sp 3 1\na 1 5 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"), "{e}");
    }

    #[test]
    fn parse_comments_and_source() {
        let text = "c hello\n\nc world\np sp 2 1\nn 2 s\na 2 1 -7\n";
        let inst = parse_dimacs(text.as_bytes()).unwrap();
        assert_eq!(inst.source, Some(1));
        assert_eq!(inst.graph.arcs(), &[Arc::new(1, 0, -7)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("a 1 2 3\n", 1),
            ("p sp 2 1\na 1 2\n", 2),
            ("p sp 2 1\na 1 2 x\n", 2),
            ("p sp 2 2\na 1 2 3\n", 2),
            ("p sp 2 1\na 1 2 3\na 2 1 3\n", 3),
            ("p sp 2 0\nq\n", 2),
            ("p sp 2 0\np sp 2 0\n", 2),
            ("p max 2 0\n", 1),
            ("p sp 2 1\na 1 2 2000000000000\n", 2),
            ("p sp 2 0\nn 1 t\n", 2),
            ("p sp 0 0\n", 1),
            ("p sp 2 1\na 0 1 1\n", 2),
            ("p sp 2 1\na 1 2 3 4\n", 2),
        ];
        for &(text, line) in cases {
            let e = parse_dimacs(text.as_bytes()).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn write_examples() {
        assert_eq!(write_dimacs(&Graph::new(1, vec![]).unwrap()), "p sp 1 0\n");
        let text = "p sp 3 3\na 1 2 2\na 2 3 -5\na 1 3 0\n";
        let g = parse_dimacs(text.as_bytes()).unwrap().graph;
        assert_eq!(write_dimacs(&g), text);
        let with_source = write_dimacs_with_source(&g, Some(0));
        assert_eq!(parse_dimacs(with_source.as_bytes()).unwrap().source, Some(0));
    }

    #[test]
    fn potentials_round_trip() {
        let p = vec![0, -5, 12];
        let text = write_potentials(&p);
        assert_eq!(text, "1 0\n2 -5\n3 12\n");
        assert_eq!(parse_potentials(&text, 3).unwrap(), p);
        assert!(parse_potentials("1 0\n", 2).is_err());
        assert!(parse_potentials("1 0\n1 0\n", 1).is_err());
    }

    proptest! {
        #[test]
        fn parse_inverts_write(
            n in 1usize..30,
            raw in prop::collection::vec((0usize..1000, 0usize..1000, -(1i64 << 40)..=(1i64 << 40)), 0..60),
            src in prop::option::of(0usize..1000),
        ) {
            let arcs: Vec<_> = raw.iter().map(|&(u, v, w)| Arc::new(u % n, v % n, w)).collect();
            let g = Graph::new(n, arcs).unwrap();
            let source = src.map(|s| s % n);
            let text = write_dimacs_with_source(&g, source);
            let back = parse_dimacs(text.as_bytes()).unwrap();
            prop_assert_eq!(&back.graph, &g);
            prop_assert_eq!(back.source, source);
            prop_assert_eq!(write_dimacs_with_source(&back.graph, back.source), text);
        }
    }
}
