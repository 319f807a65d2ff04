//! Text formats: the MPG v1 game file, the linear-graph value list, and the
//! automaton dump.
//!
//! MPG v1 is line-oriented UTF-8 with `#` comments:
//!
//! ```text
//! mpg 1
//! init <id>
//! vertex <id> <E|A>
//! edge <src> <weight> <dst>
//! ```
//!
//! Vertex ids are the dense range `0..n`. Printing is canonical: vertices
//! ascending, edges sorted by (source, weight, target), so parse/print
//! round-trips byte-identically on canonical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mpgkit_core::{LinearGraph, MeanPayoffGame, Owner, SafetyAutomaton, WeightedGraph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("line {line}: vertex {id} has no outgoing edge")]
    DeadEndVertex { line: usize, id: usize },

    #[error("{line}:{col}: unknown vertex {id}")]
    UnknownVertex { line: usize, col: usize, id: usize },

    #[error("line {line}: duplicate declaration of {what}")]
    DuplicateDeclaration { line: usize, what: String },
}

fn tokens_with_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

struct RawEdge {
    line: usize,
    src: (usize, usize),
    weight: i64,
    dst: (usize, usize),
}

/// Parses an MPG v1 file into a game. Unreachable vertices are dropped with
/// a warning (returned, not printed); remaining ids are compacted in order.
pub fn parse_game(text: &str) -> Result<(MeanPayoffGame, Vec<String>), ParseError> {
    let mut header_seen = false;
    let mut init: Option<(usize, usize)> = None; // (line, id)
    let mut vertices: BTreeMap<usize, (usize, Owner)> = BTreeMap::new(); // id -> (line, owner)
    let mut edges: Vec<RawEdge> = Vec::new();
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let toks = tokens_with_cols(content);
        if toks.is_empty() {
            continue;
        }
        let syntax = |col: usize, msg: String| ParseError::Syntax {
            line: lineno,
            col,
            msg,
        };
        let parse_usize = |&(col, tok): &(usize, &str)| {
            tok.parse::<usize>()
                .map(|v| (col, v))
                .map_err(|_| syntax(col, format!("expected a vertex id, got `{tok}`")))
        };

        if !header_seen {
            let ok = toks.len() == 2 && toks[0].1 == "mpg" && toks[1].1 == "1";
            if !ok {
                return Err(syntax(toks[0].0, "expected header `mpg 1`".into()));
            }
            header_seen = true;
            continue;
        }

        match toks[0].1 {
            "mpg" => {
                return Err(ParseError::DuplicateDeclaration {
                    line: lineno,
                    what: "header".into(),
                })
            }
            "init" => {
                if toks.len() != 2 {
                    return Err(syntax(toks[0].0, "expected `init <id>`".into()));
                }
                let (col, id) = parse_usize(&toks[1])?;
                if init.is_some() {
                    return Err(ParseError::DuplicateDeclaration {
                        line: lineno,
                        what: "init".into(),
                    });
                }
                init = Some((lineno, id));
                let _ = col;
            }
            "vertex" => {
                if toks.len() != 3 {
                    return Err(syntax(toks[0].0, "expected `vertex <id> <E|A>`".into()));
                }
                let (_, id) = parse_usize(&toks[1])?;
                let owner = match toks[2].1 {
                    "E" => Owner::Eve,
                    "A" => Owner::Adam,
                    other => {
                        return Err(syntax(toks[2].0, format!("expected E or A, got `{other}`")))
                    }
                };
                if vertices.insert(id, (lineno, owner)).is_some() {
                    return Err(ParseError::DuplicateDeclaration {
                        line: lineno,
                        what: format!("vertex {id}"),
                    });
                }
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(syntax(
                        toks[0].0,
                        "expected `edge <src> <weight> <dst>`".into(),
                    ));
                }
                let src = parse_usize(&toks[1])?;
                let weight = toks[2]
                    .1
                    .parse::<i64>()
                    .map_err(|_| syntax(toks[2].0, format!("expected a weight, got `{}`", toks[2].1)))?;
                let dst = parse_usize(&toks[3])?;
                edges.push(RawEdge {
                    line: lineno,
                    src,
                    weight,
                    dst,
                });
            }
            other => {
                return Err(syntax(toks[0].0, format!("unknown directive `{other}`")));
            }
        }
    }

    if !header_seen {
        return Err(ParseError::Syntax {
            line: last_line.max(1),
            col: 1,
            msg: "missing header `mpg 1`".into(),
        });
    }
    let (init_line, init_id) = init.ok_or(ParseError::Syntax {
        line: last_line,
        col: 1,
        msg: "missing `init` declaration".into(),
    })?;
    if vertices.is_empty() {
        return Err(ParseError::Syntax {
            line: last_line,
            col: 1,
            msg: "no vertices declared".into(),
        });
    }
    let n = vertices.len();
    for (&id, &(line, _)) in &vertices {
        if id >= n {
            return Err(ParseError::Syntax {
                line,
                col: 1,
                msg: format!("vertex ids must be the dense range 0..{n}, got {id}"),
            });
        }
    }
    if !vertices.contains_key(&init_id) {
        return Err(ParseError::UnknownVertex {
            line: init_line,
            col: 1,
            id: init_id,
        });
    }
    for e in &edges {
        for &(col, id) in [&e.src, &e.dst] {
            if !vertices.contains_key(&id) {
                return Err(ParseError::UnknownVertex {
                    line: e.line,
                    col,
                    id,
                });
            }
        }
    }

    // reachability from init over the declared edges
    let mut reach = vec![false; n];
    reach[init_id] = true;
    let mut stack = vec![init_id];
    while let Some(u) = stack.pop() {
        for e in &edges {
            if e.src.1 == u && !reach[e.dst.1] {
                reach[e.dst.1] = true;
                stack.push(e.dst.1);
            }
        }
    }
    let mut warnings = Vec::new();
    let dropped: Vec<usize> = (0..n).filter(|&v| !reach[v]).collect();
    if !dropped.is_empty() {
        warnings.push(format!(
            "dropped {} unreachable vertex(es): {:?}",
            dropped.len(),
            dropped
        ));
    }
    let mut remap = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if reach[v] {
            remap[v] = next;
            next += 1;
        }
    }

    for (&id, &(line, _)) in &vertices {
        if reach[id] && !edges.iter().any(|e| e.src.1 == id) {
            return Err(ParseError::DeadEndVertex { line, id });
        }
    }

    let kept: Vec<(usize, i64, usize)> = edges
        .iter()
        .filter(|e| reach[e.src.1])
        .map(|e| (remap[e.src.1], e.weight, remap[e.dst.1]))
        .collect();
    let weights: std::collections::BTreeSet<i64> = kept.iter().map(|&(_, w, _)| w).collect();
    let owners: Vec<Owner> = vertices
        .iter()
        .filter(|(&id, _)| reach[id])
        .map(|(_, &(_, o))| o)
        .collect();

    let graph = WeightedGraph::new(next, kept, remap[init_id], weights)
        .expect("validated edges form a well-formed graph");
    debug_assert_eq!(graph.dropped_vertices(), 0);
    let game = MeanPayoffGame::new(graph, owners).expect("dead ends were rejected above");
    Ok((game, warnings))
}

/// Canonical MPG v1 text for a game.
pub fn print_game(game: &MeanPayoffGame) -> String {
    let g = game.graph();
    let mut out = String::new();
    out.push_str("mpg 1\n");
    let _ = writeln!(out, "init {}", g.init());
    for v in 0..g.vertex_count() {
        let tag = match game.owner(v) {
            Owner::Eve => "E",
            Owner::Adam => "A",
        };
        let _ = writeln!(out, "vertex {v} {tag}");
    }
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    for (u, w, v) in edges {
        let _ = writeln!(out, "edge {u} {w} {v}");
    }
    out
}

/// One signed decimal per line, ascending.
pub fn print_linear(a: &LinearGraph) -> String {
    let mut out = String::new();
    for v in a.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// `state <id>` lines, then `trans <state> <weight> <state|BOT>` lines.
pub fn print_automaton(aut: &SafetyAutomaton) -> String {
    let mut out = String::new();
    for q in 0..aut.size() {
        let _ = writeln!(out, "state {q}");
    }
    for q in 0..aut.size() {
        for &w in aut.alphabet() {
            match aut.step(q, w).expect("alphabet letter") {
                Some(q2) => {
                    let _ = writeln!(out, "trans {q} {w} {q2}");
                }
                None => {
                    let _ = writeln!(out, "trans {q} {w} BOT");
                }
            }
        }
    }
    out
}
