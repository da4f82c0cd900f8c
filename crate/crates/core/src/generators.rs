//! Named graph families with fixed vertex labelings.
//!
//! | family                   | labeling                                               |
//! |--------------------------|--------------------------------------------------------|
//! | `complete(n)`            | `0..n`                                                 |
//! | `complete_bipartite(a,b)`| parts `0..a` and `a..a+b`                              |
//! | `complete_minus_edge(n)` | `K_n` without the edge `(0, 1)`                        |
//! | `glued_complete(k)`      | shared vertex `0`; cliques `{0, 1..k}`, `{0, k..2k-1}` |
//! | `cycle(n)`               | `i ~ i+1 (mod n)`                                      |
//! | `path(n)`                | `i ~ i+1`                                              |
//! | `star(n)`                | center `0`                                             |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    CompleteMinusEdge { n: usize },
    GluedComplete { k: usize },
    Cycle { n: usize },
    Path { n: usize },
    Star { n: usize },
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Complete { n } => complete(n),
            Family::CompleteBipartite { a, b } => complete_bipartite(a, b),
            Family::CompleteMinusEdge { n } => complete_minus_edge(n),
            Family::GluedComplete { k } => glued_complete(k),
            Family::Cycle { n } => cycle(n),
            Family::Path { n } => path(n),
            Family::Star { n } => star(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::CompleteBipartite { a, b } => write!(f, "complete_bipartite:{a},{b}"),
            Family::CompleteMinusEdge { n } => write!(f, "complete_minus_edge:{n}"),
            Family::GluedComplete { k } => write!(f, "glued_complete:{k}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Star { n } => write!(f, "star:{n}"),
        }
    }
}

/// Parses `name:p1[,p2]`, e.g. `glued_complete:4` or `complete_bipartite:2,3`.
impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: String| GraphError::InvalidFamilyParameter {
            family: "family",
            reason,
        };
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("expected name:params, got {s:?}")))?;
        let nums = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("{params:?}: {e}")))?;
        let one = || match nums[..] {
            [x] => Ok(x),
            _ => Err(bad(format!("{name} takes one parameter"))),
        };
        Ok(match name.trim() {
            "complete" => Family::Complete { n: one()? },
            "complete_bipartite" => match nums[..] {
                [a, b] => Family::CompleteBipartite { a, b },
                _ => return Err(bad("complete_bipartite takes two parameters".into())),
            },
            "complete_minus_edge" => Family::CompleteMinusEdge { n: one()? },
            "glued_complete" => Family::GluedComplete { k: one()? },
            "cycle" => Family::Cycle { n: one()? },
            "path" => Family::Path { n: one()? },
            "star" => Family::Star { n: one()? },
            other => return Err(bad(format!("unknown family {other:?}"))),
        })
    }
}

fn check(
    family: &'static str,
    ok: bool,
    reason: impl FnOnce() -> String,
) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidFamilyParameter {
            family,
            reason: reason(),
        })
    }
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    check("complete", n >= 1, || format!("n = {n} < 1"))?;
    let edges: Vec<_> = crate::graph::pair_order(n).collect();
    Graph::from_edge_list(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    check("complete_bipartite", a >= 1 && b >= 1, || {
        format!("parts ({a}, {b}) must be nonempty")
    })?;
    let edges: Vec<_> = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(a + b, &edges)
}

pub fn complete_minus_edge(n: usize) -> Result<Graph, GraphError> {
    check("complete_minus_edge", n >= 3, || format!("n = {n} < 3"))?;
    Ok(complete(n)?.without_edge(0, 1))
}

/// Two copies of `K_k` sharing vertex 0; `n = 2k - 1`.
pub fn glued_complete(k: usize) -> Result<Graph, GraphError> {
    check("glued_complete", k >= 2, || format!("k = {k} < 2"))?;
    let n = 2 * k - 1;
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = std::iter::once(0).chain(k..n).collect();
    let mut edges = Vec::new();
    for clique in [&first, &second] {
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    check("cycle", n >= 3, || format!("n = {n} < 3"))?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    check("path", n >= 1, || format!("n = {n} < 1"))?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges)
}

pub fn star(n: usize) -> Result<Graph, GraphError> {
    check("star", n >= 2, || format!("n = {n} < 2"))?;
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edge_list(n, &edges)
}
