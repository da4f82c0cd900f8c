//! graph6 and plain edge-list text formats.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups, each offset by 63.
//! For `n <= 62` the vertex count is a single byte `n + 63`; for `63 <= n`
//! it is `~` followed by three 6-bit groups.
//!
//! The edge-list format is a first line holding `n`, then one `u v` pair
//! per line. Blank lines and lines starting with `#` are ignored.

use crate::error::GraphError;
use crate::graph::{pair_order, Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in pair_order(n) {
        acc = acc << 1 | g.has_edge(i, j) as u8;
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(malformed(format!("byte {b:#04x} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(malformed("empty input")),
        [126, 126, ..] => return Err(malformed("vertex counts above 258047 are unsupported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed("truncated vertex count"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let bits = n * (n - 1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(malformed(format!(
            "truncated payload: {} of {needed} bytes",
            body.len()
        )));
    }
    if body.len() > needed {
        return Err(malformed(format!(
            "{} trailing bytes after payload",
            body.len() - needed
        )));
    }
    let mut edges = Vec::new();
    for (k, (i, j)) in pair_order(n).enumerate() {
        let byte = body[k / 6] - 63;
        if byte >> (5 - k % 6) & 1 == 1 {
            edges.push((i, j));
        }
    }
    if bits % 6 != 0 {
        let pad = body[needed - 1] - 63;
        if pad & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Graph::from_edge_list(n, &edges)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let bad = |line: usize, reason: String| GraphError::MalformedEdgeList { line, reason };
    let (line, first) = lines.next().ok_or_else(|| bad(0, "empty input".into()))?;
    let n: usize = first
        .parse()
        .map_err(|e| bad(line, format!("vertex count {first:?}: {e}")))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(bad(line, format!("expected \"u v\", got {l:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| bad(line, format!("vertex {s:?}: {e}")))
        };
        edges.push((parse(u)?, parse(v)?));
    }
    Graph::from_edge_list(n, &edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads either format. A first meaningful line made only of digits marks an
/// edge list; graph6 never starts with a digit.
pub fn parse_auto(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}
