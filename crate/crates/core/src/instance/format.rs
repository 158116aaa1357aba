//! Line-oriented instance format, 1-based indices:
//!
//! ```text
//! c optional comment lines, anywhere
//! p msc <n> <m>
//! d <b_1> ... <b_n>
//! e <v_1> ... <v_r>      (exactly m lines, strictly increasing indices)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Demands, Hypergraph};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

enum State {
    Header,
    Demands { n: usize, m: usize },
    Edges { n: usize, m: usize },
    Done,
}

pub fn parse_instance(text: &str) -> Result<(Hypergraph, Demands)> {
    let mut state = State::Header;
    let mut demands = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        if raw.contains('\r') {
            return Err(parse_err(line, "carriage return; expected LF line endings"));
        }
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else {
            continue;
        };
        if tag == "c" {
            continue;
        }
        last_line = line;
        let rest: Vec<&str> = tokens.collect();
        state = match (state, tag) {
            (State::Header, "p") => {
                if rest.len() != 3 || rest[0] != "msc" {
                    return Err(parse_err(line, "header must be `p msc <n> <m>`"));
                }
                let n: usize = number(rest[1], line, "vertex count")?;
                let m: usize = number(rest[2], line, "edge count")?;
                if n == 0 || m == 0 {
                    return Err(parse_err(line, "vertex and edge counts must be positive"));
                }
                State::Demands { n, m }
            }
            (State::Header, _) => return Err(parse_err(line, "expected header `p msc <n> <m>`")),
            (State::Demands { n, m }, "d") => {
                if rest.len() != n {
                    return Err(parse_err(
                        line,
                        format!("demand line has {} entries, expected {n}", rest.len()),
                    ));
                }
                for tok in rest {
                    let b: u32 = number(tok, line, "demand")?;
                    if b == 0 {
                        return Err(parse_err(line, "demands must be at least 1"));
                    }
                    demands.push(b);
                }
                State::Edges { n, m }
            }
            (State::Demands { .. }, _) => {
                return Err(parse_err(line, "expected demand line `d ...`"))
            }
            (State::Edges { n, m }, "e") => {
                if rest.is_empty() {
                    return Err(parse_err(line, "empty edge"));
                }
                let mut edge = Vec::with_capacity(rest.len());
                for tok in rest {
                    let v: usize = number(tok, line, "vertex index")?;
                    if v == 0 || v > n {
                        return Err(parse_err(line, format!("vertex {v} outside 1..{n}")));
                    }
                    if let Some(&prev) = edge.last() {
                        if v <= prev + 1 {
                            return Err(parse_err(
                                line,
                                format!(
                                    "vertex indices must be strictly increasing (got {v} after {})",
                                    prev + 1
                                ),
                            ));
                        }
                    }
                    edge.push(v - 1);
                }
                edges.push(edge);
                if edges.len() == m {
                    State::Done
                } else {
                    State::Edges { n, m }
                }
            }
            (State::Edges { .. }, _) => return Err(parse_err(line, "expected edge line `e ...`")),
            (State::Done, _) => return Err(parse_err(line, "trailing data after the last edge")),
        };
    }
    let n = match state {
        State::Done => demands.len(),
        State::Header => return Err(parse_err(last_line.max(1), "missing header")),
        State::Demands { .. } => return Err(parse_err(last_line, "missing demand line")),
        State::Edges { m, .. } => {
            return Err(parse_err(
                last_line,
                format!("expected {m} edges, found {}", edges.len()),
            ))
        }
    };
    let h = Hypergraph::new(n, edges)?;
    Ok((h, Demands::new(demands)?))
}

pub fn serialize_instance(h: &Hypergraph, d: &Demands) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p msc {} {}", h.num_vertices(), h.num_edges());
    out.push('d');
    for b in d.as_slice() {
        let _ = write!(out, " {b}");
    }
    out.push('\n');
    for e in h.edges() {
        out.push('e');
        for v in e {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_round_trip() {
        let text = "p msc 1 3\nd 2\ne 1\ne 1\ne 1\n";
        let (h, d) = parse_instance(text).unwrap();
        assert_eq!(h.num_edges(), 3);
        assert_eq!(d.as_slice(), &[2]);
        assert_eq!(serialize_instance(&h, &d), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "c made by hand\np msc 3 2\n\nd 1 1 1\nc between\ne 1 3\ne 2\n";
        let (h, _) = parse_instance(text).unwrap();
        assert_eq!(h.edges(), &[vec![0, 2], vec![1]]);
    }

    fn err_line(text: &str) -> usize {
        match parse_instance(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn grammar_violations() {
        assert_eq!(err_line("p msc 1 1\nd 2\ne 1 1\n"), 3);
        assert_eq!(err_line("p msc 2 1\nd 2 1\ne 2 1\n"), 3);
        assert_eq!(err_line("p msc 3 1\nd 2 2\ne 1\n"), 2);
        assert_eq!(err_line("p msc 2 1\nd 2 2\ne 3\n"), 3);
        assert_eq!(err_line("p msc 2 1\nd 2 0\ne 1\n"), 2);
        assert_eq!(err_line("d 2\np msc 1 1\ne 1\n"), 1);
        assert_eq!(err_line("p msc 1 2\nd 1\ne 1\n"), 3);
        assert_eq!(err_line("p msc 1 1\nd 1\ne 1\ne 1\n"), 4);
        assert_eq!(err_line("p msc 1 1\nd 1\ne\n"), 3);
        assert_eq!(err_line("p msc 1 1\r\nd 1\ne 1\n"), 1);
        assert_eq!(err_line("p sc 1 1\nd 1\ne 1\n"), 1);
        assert_eq!(err_line(""), 1);
    }
}
