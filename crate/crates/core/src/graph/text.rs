//! Text format `graph I=<p> P=<q>; E: a->b, a->p1, p2->p3;` where `pK` is
//! peripheral vertex K, and DOT export.

use super::{End, ExtGraph, GraphError};
use std::fmt;

impl fmt::Display for ExtGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph I={} P={}; E:", self.n_int, self.n_per)?;
        for (k, (a, b)) in self.edges.iter().enumerate() {
            let show = |e: &End| match e {
                End::Int(i) => format!("{i}"),
                End::Per(i) => format!("p{i}"),
            };
            if k == 0 {
                write!(f, " {}->{}", show(a), show(b))?;
            } else {
                write!(f, ", {}->{}", show(a), show(b))?;
            }
        }
        write!(f, ";")
    }
}

fn parse_end(s: &str) -> Result<End, GraphError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('p') {
        let i: u32 = rest
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad peripheral vertex `{s}`")))?;
        Ok(End::Per(i))
    } else {
        let i: u32 = s
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad internal vertex `{s}`")))?;
        Ok(End::Int(i))
    }
}

pub fn parse_graph(text: &str) -> Result<ExtGraph, GraphError> {
    let text = text.trim();
    let body = text
        .strip_prefix("graph")
        .ok_or_else(|| GraphError::Parse("expected leading `graph`".into()))?
        .trim();
    let (header, edges_part) = body
        .split_once(';')
        .ok_or_else(|| GraphError::Parse("expected `;` after header".into()))?;
    let mut n_int = None;
    let mut n_per = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("I=") {
            n_int = Some(v.parse().map_err(|_| GraphError::Parse(format!("bad I `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("P=") {
            n_per = Some(v.parse().map_err(|_| GraphError::Parse(format!("bad P `{v}`")))?);
        } else {
            return Err(GraphError::Parse(format!("unexpected token `{tok}`")));
        }
    }
    let (n_int, n_per) = (
        n_int.ok_or_else(|| GraphError::Parse("missing I=".into()))?,
        n_per.ok_or_else(|| GraphError::Parse("missing P=".into()))?,
    );
    let edges_part = edges_part.trim();
    let mut edges = Vec::new();
    if !edges_part.is_empty() {
        let list = edges_part
            .strip_prefix("E:")
            .ok_or_else(|| GraphError::Parse("expected `E:`".into()))?
            .trim()
            .trim_end_matches(';');
        for item in list.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (a, b) = item
                .split_once("->")
                .ok_or_else(|| GraphError::Parse(format!("expected `->` in `{item}`")))?;
            edges.push((parse_end(a)?, parse_end(b)?));
        }
    }
    ExtGraph::new(n_int, n_per, edges)
}

/// DOT export; peripheral vertices are drawn on a dashed circle skeleton.
pub fn to_dot(g: &ExtGraph, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    for i in 1..=g.n_int {
        out.push_str(&format!("  i{i} [label=\"{i}\", shape=point, width=0.12];\n"));
    }
    for i in 1..=g.n_per {
        out.push_str(&format!("  p{i} [label=\"p{i}\", shape=circle];\n"));
    }
    // circle skeleton
    if g.n_per >= 2 {
        for i in 1..=g.n_per {
            let j = i % g.n_per + 1;
            out.push_str(&format!("  p{i} -> p{j} [style=dashed, arrowhead=none, color=gray];\n"));
        }
    }
    for (a, b) in &g.edges {
        let show = |e: &End| match e {
            End::Int(i) => format!("i{i}"),
            End::Per(i) => format!("p{i}"),
        };
        out.push_str(&format!("  {} -> {};\n", show(a), show(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let g = parse_graph("graph I=2 P=2; E: 1->2, 1->p1, p2->2;").unwrap();
        assert_eq!(g.n_int, 2);
        assert_eq!(g.n_per, 2);
        assert_eq!(g.n_edges(), 3);
        let s = g.to_string();
        let g2 = parse_graph(&s).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn empty_edge_list() {
        let g = parse_graph("graph I=1 P=0; E:;").unwrap();
        assert_eq!(g.n_edges(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_graph("I=1 P=0;").is_err());
        assert!(parse_graph("graph I=1 P=0; E: 1->2;").is_err());
        assert!(parse_graph("graph I=x P=0; E:;").is_err());
    }

    #[test]
    fn dot_contains_edges() {
        let g = parse_graph("graph I=1 P=2; E: p1->1, p2->1;").unwrap();
        let dot = to_dot(&g, "t");
        assert!(dot.contains("p1 -> i1"));
        assert!(dot.contains("digraph"));
    }
}
