//! Colouring files.
//!
//! Text form, line oriented, `#` starts a comment:
//!
//! ```text
//! host complete 4          # or: host bipartite n m
//! params 4 2               # r k, with k = * for generalized colourings
//! 0 1 2,3                  # u v c1,c2,... (strictly increasing)
//! ```
//!
//! Every host edge must appear exactly once. The JSON form carries the same
//! fields: `{"host": {"kind": "complete", "n": 4}, "r": 4, "k": 2,
//! "edges": [{"u": 0, "v": 1, "colours": [2, 3]}, ...]}` with `"k": null` for
//! generalized colourings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::colour::{ColourSet, MAX_COLOURS};
use crate::{HostGraph, SetColouring};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Structure(String),
    #[error("json: {0}")]
    Json(String),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

pub fn to_text(c: &SetColouring) -> String {
    let mut s = String::new();
    match c.host() {
        HostGraph::Complete { n } => writeln!(s, "host complete {n}").unwrap(),
        HostGraph::Bipartite { n, m } => writeln!(s, "host bipartite {n} {m}").unwrap(),
    }
    match c.uniform_k() {
        Some(k) => writeln!(s, "params {} {k}", c.r()).unwrap(),
        None => writeln!(s, "params {} *", c.r()).unwrap(),
    }
    for (u, v, set) in c.edges() {
        let list: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        writeln!(s, "{u} {v} {}", list.join(",")).unwrap();
    }
    s
}

fn number(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| at(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_text(text: &str) -> Result<SetColouring, ParseError> {
    let mut host: Option<HostGraph> = None;
    let mut params: Option<(usize, Option<usize>)> = None;
    let mut edges: Vec<Option<ColourSet>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "host" => {
                if host.is_some() {
                    return Err(at(line, "duplicate host line"));
                }
                let h = match toks.get(1).copied() {
                    Some("complete") if toks.len() == 3 => {
                        HostGraph::complete(number(toks[2], line, "vertex count")?)
                    }
                    Some("bipartite") if toks.len() == 4 => HostGraph::bipartite(
                        number(toks[2], line, "side size n")?,
                        number(toks[3], line, "side size m")?,
                    ),
                    _ => {
                        return Err(at(
                            line,
                            "expected `host complete n` or `host bipartite n m`",
                        ))
                    }
                };
                if !h.is_well_formed() {
                    return Err(at(line, "host sides must have at least one vertex"));
                }
                edges = vec![None; h.edge_count()];
                host = Some(h);
            }
            "params" => {
                if params.is_some() {
                    return Err(at(line, "duplicate params line"));
                }
                if toks.len() != 3 {
                    return Err(at(line, "expected `params r k`"));
                }
                let r = number(toks[1], line, "r")?;
                if r == 0 || r > MAX_COLOURS {
                    return Err(at(line, format!("r must be in 1..=64, found {r}")));
                }
                let k = match toks[2] {
                    "*" => None,
                    t => {
                        let k = number(t, line, "k or *")?;
                        if k == 0 || k > r {
                            return Err(at(line, format!("k must be in 1..=r, found {k}")));
                        }
                        Some(k)
                    }
                };
                params = Some((r, k));
            }
            _ => {
                let h = host.ok_or_else(|| at(line, "edge before host line"))?;
                let (r, k) = params.ok_or_else(|| at(line, "edge before params line"))?;
                if toks.len() != 3 {
                    return Err(at(line, "expected `u v c1,c2,...`"));
                }
                let u = number(toks[0], line, "vertex u")?;
                let v = number(toks[1], line, "vertex v")?;
                let idx = h
                    .edge_index(u, v)
                    .ok_or_else(|| at(line, format!("{u}-{v} is not an edge of the host")))?;
                let mut set = ColourSet::EMPTY;
                let mut prev: Option<usize> = None;
                for tok in toks[2].split(',') {
                    let c = number(tok, line, "colour")?;
                    if c >= r {
                        return Err(at(line, format!("colour {c} out of range for r={r}")));
                    }
                    if prev.is_some_and(|p| p >= c) {
                        return Err(at(line, "colour list must be strictly increasing"));
                    }
                    prev = Some(c);
                    set.insert(c);
                }
                if let Some(k) = k {
                    if set.len() != k {
                        return Err(at(
                            line,
                            format!("edge {u}-{v} has {} colours, expected k={k}", set.len()),
                        ));
                    }
                }
                if edges[idx].replace(set).is_some() {
                    return Err(at(line, format!("edge {u}-{v} listed twice")));
                }
            }
        }
    }
    let host = host.ok_or_else(|| ParseError::Structure("missing host line".into()))?;
    let (r, k) = params.ok_or_else(|| ParseError::Structure("missing params line".into()))?;
    let mut sets = Vec::with_capacity(edges.len());
    for (idx, e) in edges.into_iter().enumerate() {
        match e {
            Some(s) => sets.push(s),
            None => {
                let (u, v) = host.endpoints(idx);
                return Err(ParseError::Structure(format!("edge {u}-{v} has no colours")));
            }
        }
    }
    SetColouring::new(host, r, k, sets).map_err(|e| ParseError::Structure(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    u: usize,
    v: usize,
    colours: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct JsonColouring {
    host: HostGraph,
    r: usize,
    k: Option<usize>,
    edges: Vec<JsonEdge>,
}

impl Serialize for SetColouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json_doc(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetColouring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = JsonColouring::deserialize(d)?;
        from_doc(doc).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(c: &SetColouring) -> String {
    serde_json::to_string(&json_doc(c)).expect("colouring serializes")
}

fn json_doc(c: &SetColouring) -> JsonColouring {
    JsonColouring {
        host: c.host(),
        r: c.r(),
        k: c.uniform_k(),
        edges: c
            .edges()
            .map(|(u, v, s)| JsonEdge {
                u,
                v,
                colours: s.to_vec(),
            })
            .collect(),
    }
}

pub fn parse_json(text: &str) -> Result<SetColouring, ParseError> {
    let doc: JsonColouring =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    from_doc(doc)
}

fn from_doc(doc: JsonColouring) -> Result<SetColouring, ParseError> {
    // reuse the text checks so both forms reject the same inputs
    let mut t = String::new();
    match doc.host {
        HostGraph::Complete { n } => writeln!(t, "host complete {n}").unwrap(),
        HostGraph::Bipartite { n, m } => writeln!(t, "host bipartite {n} {m}").unwrap(),
    }
    match doc.k {
        Some(k) => writeln!(t, "params {} {k}", doc.r).unwrap(),
        None => writeln!(t, "params {} *", doc.r).unwrap(),
    }
    for e in &doc.edges {
        let list: Vec<String> = e.colours.iter().map(|c| c.to_string()).collect();
        writeln!(t, "{} {} {}", e.u, e.v, list.join(",")).unwrap();
    }
    parse_text(&t).map_err(|err| match err {
        ParseError::Line { line, message } if line > 2 => {
            ParseError::Json(format!("edges[{}]: {message}", line - 3))
        }
        ParseError::Line { message, .. } => ParseError::Json(message),
        other => other,
    })
}

/// Parses either form, choosing JSON when the input starts with `{`.
pub fn parse_any(text: &str) -> Result<SetColouring, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_colouring;
    use proptest::prelude::*;

    #[test]
    fn text_layout() {
        let c = SetColouring::from_fn(HostGraph::complete(3), 3, Some(2), |u, v| {
            ColourSet::full(3).difference(ColourSet::singleton((u + v) % 3))
        })
        .unwrap();
        assert_eq!(
            to_text(&c),
            "host complete 3\nparams 3 2\n0 1 0,2\n0 2 0,1\n1 2 1,2\n"
        );
    }

    #[test]
    fn comments_and_order_are_ignored() {
        let t = "# a triangle\nhost complete 3\nparams 2 *\n1 2 1 # last\n0 2 0,1\n0 1 0\n";
        let c = parse_text(t).unwrap();
        assert_eq!(c.uniform_k(), None);
        assert_eq!(c.colour(0, 2), ColourSet::full(2));
    }

    #[test]
    fn colour_equal_to_r_is_rejected() {
        let t = "host complete 2\nparams 2 1\n0 1 2\n";
        assert_eq!(
            parse_text(t),
            Err(ParseError::Line {
                line: 3,
                message: "colour 2 out of range for r=2".into()
            })
        );
    }

    #[test]
    fn bipartite_side_of_size_zero_is_rejected() {
        let err = parse_text("host bipartite 3 0\nparams 2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 1, .. }));
    }

    #[test]
    fn malformed_inputs() {
        let missing = "host complete 3\nparams 2 1\n0 1 0\n0 2 1\n";
        assert!(matches!(parse_text(missing), Err(ParseError::Structure(_))));
        let unsorted = "host complete 2\nparams 3 2\n0 1 2,1\n";
        assert!(matches!(parse_text(unsorted), Err(ParseError::Line { line: 3, .. })));
        let dup = "host complete 2\nparams 3 1\n0 1 2\n1 0 2\n";
        assert!(matches!(parse_text(dup), Err(ParseError::Line { line: 4, .. })));
        let not_edge = "host bipartite 1 1\nparams 3 1\n0 0 2\n";
        assert!(parse_text(not_edge).is_err());
        let card = "host complete 2\nparams 3 2\n0 1 2\n";
        assert!(parse_text(card).is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let c = random_colouring(HostGraph::bipartite(2, 3), 5, 2, 3).unwrap();
        let j = to_json(&c);
        assert!(j.contains("\"kind\":\"bipartite\""));
        assert_eq!(parse_any(&j).unwrap(), c);
        let back: SetColouring = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        let bad = j.replacen("\"r\":5", "\"r\":2", 1);
        assert!(matches!(parse_json(&bad), Err(ParseError::Json(_))));
    }

    proptest! {
        #[test]
        fn text_round_trip(n in 1usize..7, m in 1usize..5, r in 1usize..7, kk in 1usize..7,
                           bip in any::<bool>(), seed in any::<u64>()) {
            let k = 1 + (kk - 1) % r;
            let host = if bip { HostGraph::bipartite(n, m) } else { HostGraph::complete(n) };
            let c = random_colouring(host, r, k, seed).unwrap();
            prop_assert_eq!(parse_text(&to_text(&c)).unwrap(), c.clone());
            prop_assert_eq!(parse_any(&to_json(&c)).unwrap(), c);
        }
    }
}
