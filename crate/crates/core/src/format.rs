//! Plain-text file formats.
//!
//! Map files:
//!
//! ```text
//! # comment
//! map V=2
//! v0: 0 1 2 3
//! v1: 4 5 6 7
//! e: 0 5
//! ...
//! walk: (e0, +) (e3, -)
//! ```
//!
//! Each `v<i>:` line lists the half-edges around vertex `i` counterclockwise.
//! Half-edge ids are non-negative integers, optionally written `h<k>`; they
//! need not be contiguous, but each may appear on only one vertex line and
//! in only one `e:` line. Edges are numbered by the order of their `e:`
//! lines. A walk step `(e<i>, +)` crosses edge `i` through its first listed
//! half-edge, `(e<i>, -)` through the second. Walk lines are optional and,
//! when present, give a homology basis to report coordinates in.
//!
//! Written files are canonical: ids `0..4V`, vertex `i` owning `4i..4i+3`,
//! edges sorted by their lower half-edge, which is listed first.
//!
//! Polytope documents hold one integer vector per line, coordinates
//! separated by spaces or commas, with `#` comments and blank lines
//! ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::homology::DualWalk;
use crate::map::{CombinatorialMap, HalfEdge, MapError, RawMap};
use crate::polytope::LatticePolytope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `map V=<n>` header")]
    MissingHeader,
    #[error("header declares {declared} vertices but {found} are listed")]
    VertexCount { declared: usize, found: usize },
    #[error("line {line}: vertex v{vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("line {line}: half-edge {id} listed twice")]
    DuplicateHalfEdge { line: usize, id: usize },
    #[error("line {line}: half-edge {id} is not on any vertex")]
    UnknownHalfEdge { line: usize, id: usize },
    #[error("line {line}: no edge e{index}")]
    UnknownEdge { line: usize, index: usize },
    #[error("line {line}: vectors must all have dimension {expected}")]
    Dimension { line: usize, expected: usize },
    #[error("polytope document has no vectors")]
    EmptyPolytope,
    #[error("OFF export needs dimension 2, 3 or 4, got {0}")]
    OffDimension(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// A map file before structural validation. Walk steps are indices into
/// `raw`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDocument {
    pub raw: RawMap,
    /// File id of each dense half-edge index.
    pub ids: Vec<usize>,
    pub walks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub map: CombinatorialMap,
    pub walks: Vec<DualWalk>,
}

/// Content of a line with any `#` comment removed, or `None` if blank.
fn content(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn half_edge_id(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.strip_prefix('h')
        .unwrap_or(tok)
        .parse()
        .map_err(|_| syntax(line, format!("bad half-edge id `{tok}`")))
}

/// Parses the grammar and resolves ids, leaving structural checks to
/// [`RawMap::validate`].
pub fn parse_raw_map(text: &str) -> Result<RawDocument, FormatError> {
    let mut lines = content(text);
    let declared = match lines.next() {
        Some((line, l)) => {
            let n = l
                .strip_prefix("map")
                .map(str::trim)
                .and_then(|r| r.strip_prefix("V="))
                .ok_or(FormatError::MissingHeader)?;
            n.trim()
                .parse::<usize>()
                .map_err(|_| syntax(line, format!("bad vertex count `{n}`")))?
        }
        None => return Err(FormatError::MissingHeader),
    };

    let mut vertices: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut walk_lines: Vec<(usize, Vec<(usize, bool)>)> = Vec::new();
    for (line, l) in lines {
        let (key, rest) = l
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `<key>: ...`"))?;
        let key = key.trim();
        if key == "e" {
            let ids: Vec<usize> = rest
                .split_whitespace()
                .map(|t| half_edge_id(line, t))
                .collect::<Result<_, _>>()?;
            if ids.len() != 2 {
                return Err(syntax(line, "an edge joins exactly two half-edges"));
            }
            edges.push((line, ids[0], ids[1]));
        } else if key == "walk" {
            walk_lines.push((line, parse_walk(line, rest)?));
        } else if let Some(v) = key.strip_prefix('v') {
            let v: usize = v
                .parse()
                .map_err(|_| syntax(line, format!("bad vertex name `{key}`")))?;
            let ids: Vec<usize> = rest
                .split_whitespace()
                .map(|t| half_edge_id(line, t))
                .collect::<Result<_, _>>()?;
            if vertices.insert(v, (line, ids)).is_some() {
                return Err(FormatError::DuplicateVertex { line, vertex: v });
            }
        } else {
            return Err(syntax(line, format!("unknown key `{key}`")));
        }
    }
    if vertices.len() != declared {
        return Err(FormatError::VertexCount {
            declared,
            found: vertices.len(),
        });
    }

    // dense index per id, in vertex order
    let mut dense: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ids = Vec::new();
    let mut rotation = Vec::new();
    for (line, around) in vertices.values() {
        let first = ids.len();
        for (k, &id) in around.iter().enumerate() {
            if dense.insert(id, ids.len()).is_some() {
                return Err(FormatError::DuplicateHalfEdge { line: *line, id });
            }
            ids.push(id);
            let next = if k + 1 == around.len() { first } else { ids.len() };
            rotation.push(next);
        }
    }
    let lookup = |line: usize, id: usize| {
        dense
            .get(&id)
            .copied()
            .ok_or(FormatError::UnknownHalfEdge { line, id })
    };
    // unpaired half-edges stay fixed points for validation to report
    let mut pairing: Vec<usize> = (0..ids.len()).collect();
    let mut seen = vec![false; ids.len()];
    let mut edge_darts = Vec::with_capacity(edges.len());
    for &(line, x, y) in &edges {
        let (a, b) = (lookup(line, x)?, lookup(line, y)?);
        for (h, id) in [(a, x), (b, y)] {
            if seen[h] {
                return Err(FormatError::DuplicateHalfEdge { line, id });
            }
            seen[h] = true;
        }
        pairing[a] = b;
        pairing[b] = a;
        edge_darts.push((a, b));
    }

    let walks = walk_lines
        .into_iter()
        .map(|(line, steps)| {
            steps
                .into_iter()
                .map(|(e, plus)| {
                    let &(a, b) = edge_darts
                        .get(e)
                        .ok_or(FormatError::UnknownEdge { line, index: e })?;
                    Ok(if plus { a } else { b })
                })
                .collect::<Result<Vec<_>, FormatError>>()
        })
        .collect::<Result<_, _>>()?;

    Ok(RawDocument {
        raw: RawMap { rotation, pairing },
        ids,
        walks,
    })
}

fn parse_walk(line: usize, rest: &str) -> Result<Vec<(usize, bool)>, FormatError> {
    let mut out = Vec::new();
    let mut s = rest.trim();
    while !s.is_empty() {
        let body;
        (body, s) = s
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| syntax(line, "walk steps look like `(e<i>, +)`"))?;
        s = s.trim_start();
        let (e, sign) = body
            .split_once(',')
            .ok_or_else(|| syntax(line, format!("bad walk step `({body})`")))?;
        let index: usize = e
            .trim()
            .strip_prefix('e')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| syntax(line, format!("bad edge `{}`", e.trim())))?;
        let plus = match sign.trim() {
            "+" => true,
            "-" => false,
            other => return Err(syntax(line, format!("bad sign `{other}`"))),
        };
        out.push((index, plus));
    }
    if out.is_empty() {
        return Err(syntax(line, "empty walk"));
    }
    Ok(out)
}

/// Parses and validates a map file, relabelling it canonically.
pub fn parse_map(text: &str) -> Result<MapDocument, FormatError> {
    let doc = parse_raw_map(text)?;
    let (map, relabel) = CombinatorialMap::from_raw(&doc.raw)?;
    let walks = doc
        .walks
        .iter()
        .map(|w| DualWalk::new(w.iter().map(|&h| HalfEdge(relabel[h])).collect()))
        .collect();
    Ok(MapDocument { map, walks })
}

pub fn write_map(map: &CombinatorialMap, walks: &[DualWalk]) -> String {
    let mut out = format!("map V={}\n", map.vertex_count());
    for v in 0..map.vertex_count() {
        let _ = writeln!(out, "v{v}: {} {} {} {}", 4 * v, 4 * v + 1, 4 * v + 2, 4 * v + 3);
    }
    for (lo, hi) in map.edges() {
        let _ = writeln!(out, "e: {} {}", lo.0, hi.0);
    }
    let index = map.edge_index();
    for w in walks {
        let steps: Vec<String> = w
            .steps
            .iter()
            .map(|&h| {
                let sign = if map.pair(h).0 > h.0 { '+' } else { '-' };
                format!("(e{}, {sign})", index[h.0])
            })
            .collect();
        let _ = writeln!(out, "walk: {}", steps.join(" "));
    }
    out
}

pub fn parse_vectors(text: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (line, l) in content(text) {
        let v: Vec<i64> = l
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| syntax(line, format!("bad integer `{t}`"))))
            .collect::<Result<_, _>>()?;
        if let Some(first) = out.first() {
            if first.len() != v.len() {
                return Err(FormatError::Dimension {
                    line,
                    expected: first.len(),
                });
            }
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(FormatError::EmptyPolytope);
    }
    Ok(out)
}

/// Vectors one per line, preceded by `# comment` lines.
pub fn write_vectors<'a>(
    vectors: impl IntoIterator<Item = &'a Vec<i64>>,
    comments: &[String],
) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for v in vectors {
        let row: Vec<String> = v.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Vertex data for external viewers: `OFF` (planar balls padded with a zero
/// coordinate) or `4OFF`. Faces are not listed.
pub fn write_off(polytope: &LatticePolytope) -> Result<String, FormatError> {
    let d = polytope.ambient_dimension();
    let header = match d {
        2 | 3 => "OFF",
        4 => "4OFF",
        _ => return Err(FormatError::OffDimension(d)),
    };
    let mut out = format!("{header}\n{} 0 0\n", polytope.vertex_count());
    for v in polytope.vertices() {
        let mut row: Vec<String> = v.iter().map(i64::to_string).collect();
        if d == 2 {
            row.push("0".into());
        }
        let _ = writeln!(out, "{}", row.join(" "));
    }
    Ok(out)
}
