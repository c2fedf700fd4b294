//! Line-oriented text formats for graphs, relations, functions and points.
//!
//! Graph files:
//!
//! ```text
//! # a lasso
//! edge 1 1
//! edge 2 3/2
//! glue 1:0 1:1
//! glue 1:1 2:0
//! ```
//!
//! `edge <id> <length>` declares an interval, `glue <endpoint> <endpoint>`
//! identifies two endpoints (`<id>:0` is the `0` end, `<id>:1` the `ℓ` end).
//! The stored relation is generated by all glue lines. Relation files hold
//! glue lines only. Function files hold `piece <id> <c0> <c1> …` lines with
//! ascending coefficients. `#` starts a comment; blank lines are ignored.
//! Rationals are written `p/q` in lowest terms, or as plain integers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::edge::{EdgeId, EdgeSpace};
use crate::functions::{PiecewiseFunction, Polynomial};
use crate::graph::{GraphPoint, MetricGraph};
use crate::rational::parse_rational;
use crate::relation::{Endpoint, EndpointRelation, Side};
use crate::{Error, Rational, Result};

/// Content lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> + '_ {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn edge_id(line: usize, word: &str) -> Result<EdgeId> {
    EdgeId::new(word).map_err(|_| Error::parse(line, format!("invalid edge id {word:?}")))
}

fn rational(line: usize, word: &str) -> Result<Rational> {
    parse_rational(word).ok_or_else(|| Error::parse(line, format!("invalid rational {word:?}")))
}

fn endpoint(line: usize, word: &str) -> Result<Endpoint> {
    let (edge, side) = word.rsplit_once(':').ok_or_else(|| {
        Error::parse(
            line,
            format!("invalid endpoint {word:?}, expected <edge>:0 or <edge>:1"),
        )
    })?;
    let side = match side {
        "0" => Side::Zero,
        "1" => Side::Length,
        _ => {
            return Err(Error::parse(
                line,
                format!("invalid endpoint side in {word:?}, expected 0 or 1"),
            ))
        }
    };
    Ok(Endpoint::new(edge_id(line, edge)?, side))
}

fn glue_line(line: usize, words: &[&str]) -> Result<(Endpoint, Endpoint)> {
    match words {
        [_, a, b] => Ok((endpoint(line, a)?, endpoint(line, b)?)),
        _ => Err(Error::parse(line, "expected `glue <endpoint> <endpoint>`")),
    }
}

pub fn parse_graph(text: &str) -> Result<MetricGraph> {
    let mut edges = Vec::new();
    let mut glue = Vec::new();
    for (line, words) in lines(text) {
        match words[0] {
            "edge" => match words.as_slice() {
                [_, id, length] => edges.push((edge_id(line, id)?, rational(line, length)?)),
                _ => return Err(Error::parse(line, "expected `edge <id> <length>`")),
            },
            "glue" => glue.push(glue_line(line, &words)?),
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    MetricGraph::build(edges, glue)
}

/// Canonical text: edges in id order, then one glue line from each block's
/// least endpoint to each of its other endpoints.
pub fn emit_graph(g: &MetricGraph) -> String {
    let mut out = String::new();
    for (edge, length) in g.edges().iter() {
        writeln!(out, "edge {edge} {length}").expect("writing to a String");
    }
    out.push_str(&emit_relation(g.relation()));
    out
}

/// Glue lines for a relation, as in [`emit_graph`].
pub fn emit_relation(relation: &EndpointRelation) -> String {
    let mut out = String::new();
    for block in relation.blocks() {
        for other in &block[1..] {
            writeln!(out, "glue {} {}", block[0], other).expect("writing to a String");
        }
    }
    out
}

/// A relation file (glue lines only) over the endpoints of `edges`.
pub fn parse_relation(text: &str, edges: &EdgeSpace) -> Result<EndpointRelation> {
    let mut glue = Vec::new();
    for (line, words) in lines(text) {
        match words[0] {
            "glue" => glue.push(glue_line(line, &words)?),
            other => {
                return Err(Error::parse(
                    line,
                    format!("relation files contain only glue lines, found {other:?}"),
                ))
            }
        }
    }
    EndpointRelation::closure(glue.iter().map(|(a, b)| (a, b)), edges.endpoints())
}

pub fn parse_function(text: &str) -> Result<PiecewiseFunction> {
    let mut pieces = BTreeMap::new();
    for (line, words) in lines(text) {
        if words[0] != "piece" {
            return Err(Error::parse(
                line,
                format!("unknown directive {:?}", words[0]),
            ));
        }
        let Some(id) = words.get(1) else {
            return Err(Error::parse(
                line,
                "expected `piece <edge-id> <c0> ... <cn>`",
            ));
        };
        let id = edge_id(line, id)?;
        let coeffs = words[2..]
            .iter()
            .map(|w| rational(line, w))
            .collect::<Result<Vec<_>>>()?;
        if pieces.insert(id.clone(), Polynomial::new(coeffs)).is_some() {
            return Err(Error::parse(line, format!("second piece for edge {id}")));
        }
    }
    Ok(PiecewiseFunction::new(pieces))
}

pub fn emit_function(f: &PiecewiseFunction) -> String {
    let mut out = String::new();
    for (edge, piece) in f.pieces() {
        writeln!(out, "piece {edge} {piece}").expect("writing to a String");
    }
    out
}

/// `<edge-id>@<rational>`.
pub fn parse_point(text: &str) -> Result<GraphPoint> {
    let (edge, x) = text.split_once('@').ok_or_else(|| {
        Error::parse(
            1,
            format!("invalid point {text:?}, expected <edge>@<coordinate>"),
        )
    })?;
    Ok(GraphPoint::new(edge_id(1, edge)?, rational(1, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn minimal_file() {
        let g = parse_graph("edge a 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn lasso_file() {
        let g = parse_graph(
            "# lasso\nedge 1 1\nedge 2 3/2   # pendant\n\nglue 1:0 1:1\nglue 1:1 2:0\n",
        )
        .unwrap();
        let blocks: Vec<usize> = g.relation().blocks().iter().map(Vec::len).collect();
        assert_eq!(blocks, vec![3, 1]);
        assert_eq!(g.length(&EdgeId::from(2)), Some(&ratio(3, 2)));
        assert_eq!(
            emit_graph(&g),
            "edge 1 1\nedge 2 3/2\nglue 1:0 1:1\nglue 1:0 2:0\n"
        );
    }

    #[test]
    fn round_trip() {
        let text = "edge 1 2/4\nedge 2 3\nglue 2:1 1:0\nglue 2:0 1:1\nglue 1:0 1:1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
        assert!(emit_graph(&g).starts_with("edge 1 1/2\n"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("edge 1 1\nedge 2\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "expected `edge <id> <length>`"));
        assert!(parse_graph("vertex 1\n").unwrap_err().is_parse());
        assert!(parse_graph("edge 1 x\n").unwrap_err().is_parse());
        assert!(parse_graph("edge 1 1\nglue 1:2 1:0\n")
            .unwrap_err()
            .is_parse());
        assert!(parse_graph("edge 1 1\nglue 1:0\n").unwrap_err().is_parse());
        assert!(parse_graph("edge a-b 1\n").unwrap_err().is_parse());
    }

    #[test]
    fn domain_errors_are_not_parse_errors() {
        let err = parse_graph("edge 1 0\n").unwrap_err();
        assert!(!err.is_parse());
        let err = parse_graph("edge 1 1\nglue 1:0 2:0\n").unwrap_err();
        assert!(matches!(err, Error::UnknownEndpoint(_)));
    }

    #[test]
    fn relation_files() {
        let g = parse_graph("edge 1 1\nedge 2 1\n").unwrap();
        let r = parse_relation("glue 1:0 2:1\nglue 1:1 2:0\n", g.edges()).unwrap();
        assert_eq!(r.block_count(), 2);
        assert!(parse_relation("edge 3 1\n", g.edges())
            .unwrap_err()
            .is_parse());
    }

    #[test]
    fn function_files() {
        let f = parse_function("piece 1 0 1/2 -3\npiece 2 7\n").unwrap();
        assert_eq!(
            f.piece(&EdgeId::from(1)),
            Some(&Polynomial::new(vec![int(0), ratio(1, 2), int(-3)]))
        );
        assert_eq!(parse_function(&emit_function(&f)).unwrap(), f);
        assert!(parse_function("piece 1 1\npiece 1 2\n")
            .unwrap_err()
            .is_parse());
        assert!(parse_function("edge 1 1\n").unwrap_err().is_parse());
    }

    #[test]
    fn points() {
        assert_eq!(
            parse_point("e2@3/4").unwrap(),
            GraphPoint::new("e2".parse::<EdgeId>().unwrap(), ratio(3, 4))
        );
        assert!(parse_point("e2").unwrap_err().is_parse());
        assert!(parse_point("e2@x").unwrap_err().is_parse());
    }
}
