//! Simple undirected graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64`, so neighbourhood, distance and
//! complement queries are a handful of word operations per vertex.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Finite simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a graph from a list of vertex pairs. Duplicates and orientation
    /// are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.rows[u] |= 1u64 << v;
        self.rows[v] |= 1u64 << u;
        Ok(())
    }

    /// Copy of this graph with the edge `(u, v)` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// Copy of this graph with the edge `(u, v)` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < self.n && v < self.n {
            g.rows[u] &= !(1u64 << v);
            g.rows[v] &= !(1u64 << u);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Number of edges `m`.
    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Lowest-index vertex of degree zero, if any.
    pub fn isolated_vertex(&self) -> Option<usize> {
        self.rows.iter().position(|&r| r == 0)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in VertexSet(self.rows[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        self.complement().edges()
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == self.n - 1)
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        let rows = (0..self.n)
            .map(|v| !self.rows[v] & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    /// `N_k(v)`: vertices at BFS distance exactly `k` from `v`.
    pub fn neighborhood_at_distance(&self, v: usize, k: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        for _ in 0..k {
            let mut next = 0u64;
            for u in frontier {
                next |= self.rows[u];
            }
            frontier = VertexSet(next & !seen.0);
            if frontier.is_empty() {
                return VertexSet::EMPTY;
            }
            seen = seen.union(frontier);
        }
        frontier
    }

    /// All vertices reachable from `v`, including `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for u in frontier {
                next |= self.rows[u];
            }
            frontier = VertexSet(next & !seen.0);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let mut remaining = self.vertices();
        let mut components = Vec::new();
        while let Some(v) = remaining.first() {
            let c = self.component_of(v);
            remaining = remaining.difference(c);
            components.push(c);
        }
        ComponentPartition { components }
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertices()
    }

    /// Two-colouring of the component containing `v`, or `None` when that
    /// component has an odd cycle.
    fn two_colour_component(&self, v: usize) -> Option<(VertexSet, VertexSet)> {
        let mut sides = [VertexSet::singleton(v), VertexSet::EMPTY];
        let mut frontier = sides[0];
        let mut parity = 0;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for u in frontier {
                next |= self.rows[u];
            }
            if next & sides[parity].0 != 0 {
                return None;
            }
            parity ^= 1;
            frontier = VertexSet(next & !sides[parity].0);
            sides[parity] = sides[parity].union(frontier);
        }
        Some((sides[0], sides[1]))
    }

    pub fn is_bipartite(&self) -> bool {
        self.connected_components()
            .iter()
            .all(|c| self.two_colour_component(c.first().unwrap()).is_some())
    }

    /// True when some component with at least one edge is bipartite.
    pub fn has_bipartite_component(&self) -> bool {
        self.connected_components()
            .iter()
            .any(|c| c.len() >= 2 && self.two_colour_component(c.first().unwrap()).is_some())
    }

    /// Returns the parts `(P, Q)` when the graph is complete bipartite with both
    /// parts nonempty. `P` holds vertex 0.
    pub fn complete_bipartite_parts(&self) -> Option<(VertexSet, VertexSet)> {
        if self.n < 2 || !self.is_connected() {
            return None;
        }
        let (p, q) = self.two_colour_component(0)?;
        let complete =
            p.iter().all(|u| self.neighbors(u) == q) && q.iter().all(|u| self.neighbors(u) == p);
        complete.then_some((p, q))
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is the `i`-th
    /// smallest member of `keep`. Returns the subgraph and that mapping.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        let map = keep.to_vec();
        let mut sub = Graph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &w) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    sub.rows[i] |= 1u64 << j;
                    sub.rows[j] |= 1u64 << i;
                }
            }
        }
        Ok((sub, map))
    }

    /// Drops degree-zero vertices. `None` when every vertex is isolated.
    pub fn remove_isolated_vertices(&self) -> Option<(Graph, Vec<usize>)> {
        let keep: VertexSet = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        if keep.is_empty() {
            return None;
        }
        self.induced_subgraph(keep).ok()
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Edge bitmask over the pairs in [`pair_order`] order.
    pub fn edge_mask(&self) -> u64 {
        pair_order(self.n)
            .enumerate()
            .filter(|&(_, (u, v))| self.has_edge(u, v))
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }

    /// Graph whose edges are the set bits of `mask` over [`pair_order`].
    /// Requires `n <= 11` so that all pairs fit in the mask.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Graph, GraphError> {
        if pair_count(n) > 64 {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Graph::empty(n)?;
        for (i, (u, v)) in pair_order(n).enumerate() {
            if mask >> i & 1 == 1 {
                g.rows[u] |= 1u64 << v;
                g.rows[v] |= 1u64 << u;
            }
        }
        Ok(g)
    }
}

/// Vertex pairs `(i, j)`, `i < j`, ordered by `j` then `i`: the column-wise
/// upper-triangle order used both by graph6 and by enumeration bitmasks.
pub fn pair_order(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Connected components, each a maximal connected vertex set, ordered by
/// smallest contained vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<VertexSet>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.components.iter().copied()
    }

    /// Smallest component; ties go to the one containing the lowest vertex.
    pub fn smallest(&self) -> Option<VertexSet> {
        self.components.iter().copied().min_by_key(|c| c.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        crate::generators::complete(n).unwrap()
    }

    #[test]
    fn from_edge_list_collapses_duplicates() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (1, 2), (0, 2), (2, 0)]).unwrap();
        assert_eq!(g, k(3));
        assert_eq!(g.edge_count(), 3);
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.edges(), vec![(0, 1)]);
        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn from_edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(GraphError::Loop(1))
        );
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(
            Graph::from_edge_list(65, &[]),
            Err(GraphError::TooManyVertices(65))
        );
        assert_eq!(Graph::from_edge_list(0, &[]), Err(GraphError::NoVertices));
        assert!(Graph::from_edge_list(64, &[(0, 63)]).is_ok());
    }

    #[test]
    fn complement_of_complete_is_empty() {
        for n in 1..=8 {
            assert_eq!(k(n).complement().edge_count(), 0);
        }
        let full = k(64);
        assert_eq!(full.complement().edge_count(), 0);
        assert_eq!(Graph::empty(64).unwrap().complement(), full);
    }

    #[test]
    fn distance_neighbourhoods() {
        let c5 = crate::generators::cycle(5).unwrap();
        assert_eq!(c5.neighborhood_at_distance(0, 0).to_vec(), vec![0]);
        assert_eq!(c5.neighborhood_at_distance(0, 1).to_vec(), vec![1, 4]);
        assert_eq!(c5.neighborhood_at_distance(0, 2).to_vec(), vec![2, 3]);
        assert!(c5.neighborhood_at_distance(0, 3).is_empty());
        assert!(k(4).neighborhood_at_distance(0, 2).is_empty());
        let star = crate::generators::star(5).unwrap();
        assert_eq!(star.neighborhood_at_distance(1, 2).to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn components() {
        assert_eq!(k(5).connected_components().len(), 1);
        let two_triangles =
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let parts = two_triangles.connected_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts.components[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(parts.components[1].to_vec(), vec![3, 4, 5]);
        let with_isolated = Graph::from_edge_list(3, &[(0, 2)]).unwrap();
        let parts = with_isolated.connected_components();
        assert_eq!(parts.components[1].to_vec(), vec![1]);
        assert_eq!(parts.smallest().unwrap().to_vec(), vec![1]);
    }

    #[test]
    fn complete_bipartite_detection() {
        let k33 = crate::generators::complete_bipartite(3, 3).unwrap();
        let (p, q) = k33.complete_bipartite_parts().unwrap();
        assert_eq!(p.to_vec(), vec![0, 1, 2]);
        assert_eq!(q.to_vec(), vec![3, 4, 5]);
        assert!(crate::generators::cycle(5)
            .unwrap()
            .complete_bipartite_parts()
            .is_none());
        // C_6 is bipartite but not complete bipartite.
        assert!(crate::generators::cycle(6)
            .unwrap()
            .complete_bipartite_parts()
            .is_none());
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let (p, q) = p2.complete_bipartite_parts().unwrap();
        assert_eq!((p.to_vec(), q.to_vec()), (vec![0], vec![1]));
    }

    #[test]
    fn isolated_vertex_removal() {
        let g = Graph::from_edge_list(5, &[(1, 3)]).unwrap();
        let (sub, map) = g.remove_isolated_vertices().unwrap();
        assert_eq!(map, vec![1, 3]);
        assert_eq!(sub.edges(), vec![(0, 1)]);
        assert!(Graph::empty(4)
            .unwrap()
            .remove_isolated_vertices()
            .is_none());
    }

    #[test]
    fn bipartite_components() {
        assert!(crate::generators::cycle(6).unwrap().is_bipartite());
        assert!(!crate::generators::cycle(5).unwrap().is_bipartite());
        // triangle plus a disjoint edge
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert!(!g.is_bipartite());
        assert!(g.has_bipartite_component());
        assert!(!k(4).has_bipartite_component());
    }

    #[test]
    fn edge_mask_roundtrip() {
        let g = crate::generators::cycle(6).unwrap();
        assert_eq!(Graph::from_edge_mask(6, g.edge_mask()).unwrap(), g);
        assert_eq!(
            pair_order(4).collect::<Vec<_>>()[..3],
            [(0, 1), (0, 2), (1, 2)]
        );
    }
}
