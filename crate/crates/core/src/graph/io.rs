use super::{Graph, GraphError};

/// Parses the edge-list text format: a header line `n m`, then `m` lines
/// `u v` with `1 <= u < v <= n`.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let nums = parse_pair(header, 1)?;
    let (n, m) = (nums.0, nums.1);
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let (u, v) = parse_pair(line, idx + 1)?;
        if u >= v {
            return Err(GraphError::Parse(format!(
                "line {}: expected u < v, got {u} {v}",
                idx + 1
            )));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it
            .next()
            .ok_or_else(|| GraphError::Parse(format!("line {lineno}: expected two integers")))?;
        tok.parse()
            .map_err(|_| GraphError::Parse(format!("line {lineno}: bad integer {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse(format!("line {lineno}: trailing tokens")));
    }
    Ok((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_k4() {
        let k4 = Graph::complete(4);
        let text = to_edge_list(&k4);
        assert!(text.starts_with("4 6\n1 2\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), k4);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 1\n2 1\n").is_err());
        assert!(parse_edge_list("3 2\n1 2\n1 2\n").is_err());
        assert!(parse_edge_list("3 1\n1 4\n").is_err());
        assert!(parse_edge_list("3 2\n1 2\n").is_err());
        assert!(parse_edge_list("3 1\n1 x\n").is_err());
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
    }
}
