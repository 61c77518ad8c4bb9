//! Plain-text edge lists and DOT export.
//!
//! The text format is a header line `n <count>` followed by one `u v` edge
//! per line, 0-indexed. `#` starts a comment that runs to the end of the line;
//! blank lines are ignored. Self-loops are rejected.

use std::fmt::Write as _;

use crate::{Digraph, Error, Result};

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut graph: Option<Digraph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match &mut graph {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(parse_err(format!(
                        "expected header `n <count>`, found `{line}`"
                    )));
                }
                let n: usize = fields[1]
                    .parse()
                    .map_err(|_| parse_err(format!("invalid vertex count `{}`", fields[1])))?;
                graph = Some(Digraph::new(n).map_err(|e| parse_err(e.to_string()))?);
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(parse_err(format!("expected `u v`, found `{line}`")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    *slot = f
                        .parse()
                        .map_err(|_| parse_err(format!("invalid vertex `{f}`")))?;
                }
                g.add_edge(ends[0], ends[1])
                    .map_err(|e| parse_err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        message: "missing `n <count>` header".into(),
    })
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v};").expect("writing to a String");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -> {v};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# a path\nn 3\n0 1  # first\n\n1 2\n";
        let g = parse_digraph(text).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn round_trips() {
        let g = Digraph::from_edges(4, [(3, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(parse_digraph(&write_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_digraph("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("n 3\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("n 3\n0 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("n 3\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("n 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("# nothing\n"),
            Err(Error::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(to_dot(&g), "digraph G {\n  0;\n  1;\n  0 -> 1;\n}\n");
    }
}
