//! Labeled graph enumeration by edge bitmask.
//!
//! Graph number `mask` on `n` vertices has edge `pair_order(n)[i]` iff bit
//! `i` of `mask` is set, so `0..2^C(n,2)` visits every labeled graph once.
//! Contiguous mask ranges can be handed to independent workers.

use std::ops::Range;

use crate::graph::{pair_count, pair_order, Graph};

/// Largest `n` for which exhaustive enumeration is considered routine.
pub const EXHAUSTIVE_MAX_N: usize = 7;

/// Largest `n` whose masks fit in a `u64` (C(11,2) = 55 bits).
pub const MASK_MAX_N: usize = 11;

/// Number of labeled graphs on `n` vertices, `2^C(n,2)`.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

/// Iterator over the graphs encoded by a range of edge masks.
pub struct LabeledGraphs {
    n: usize,
    masks: Range<u64>,
    pairs: Vec<(usize, usize)>,
}

impl LabeledGraphs {
    /// All labeled graphs on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self::range(n, 0..labeled_graph_count(n))
    }

    /// Graphs whose masks lie in `masks`; used to split a sweep.
    pub fn range(n: usize, masks: Range<u64>) -> Self {
        assert!(
            (1..=MASK_MAX_N).contains(&n),
            "labeled enumeration supports 1 <= n <= {MASK_MAX_N}, got {n}"
        );
        LabeledGraphs {
            n,
            masks,
            pairs: pair_order(n).collect(),
        }
    }

    fn build(&self, mask: u64) -> Graph {
        let mut edges = Vec::with_capacity(mask.count_ones() as usize);
        let mut bits = mask;
        while bits != 0 {
            edges.push(self.pairs[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        Graph::from_edge_list(self.n, &edges).expect("pairs are in range")
    }
}

impl Iterator for LabeledGraphs {
    type Item = (u64, Graph);

    fn next(&mut self) -> Option<(u64, Graph)> {
        let mask = self.masks.next()?;
        Some((mask, self.build(mask)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.masks.size_hint()
    }
}

/// Every labeled graph on `n` vertices that satisfies `filter`, in mask order.
///
/// Values of `n` above [`EXHAUSTIVE_MAX_N`] are allowed but slow; callers are
/// expected to warn.
pub fn enumerate_labeled_graphs<F>(n: usize, filter: F) -> impl Iterator<Item = Graph>
where
    F: Fn(&Graph) -> bool,
{
    LabeledGraphs::new(n)
        .map(|(_, g)| g)
        .filter(move |g| filter(g))
}

/// Splits `0..2^C(n,2)` into at most `parts` contiguous ranges.
pub fn partition_masks(n: usize, parts: usize) -> Vec<Range<u64>> {
    let total = labeled_graph_count(n);
    let parts = (parts.max(1) as u64).min(total);
    let chunk = total.div_ceil(parts);
    (0..parts)
        .map(|i| i * chunk..((i + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_labeled_graphs(3, |_| true).count(), 8);
        assert_eq!(labeled_graph_count(7), 2_097_152);
        assert_eq!(enumerate_labeled_graphs(1, |_| true).count(), 1);
    }

    // Brute-force connectivity oracle: union-find over each mask's edges,
    // independent of the BFS in `Graph::is_connected`.
    fn connected_by_union_find(n: usize, mask: u64) -> bool {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                k += 1;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    #[test]
    fn connected_count_matches_oracle() {
        let oracle = (0..64u64)
            .filter(|&m| connected_by_union_find(4, m))
            .count();
        assert_eq!(oracle, 38);
        assert_eq!(enumerate_labeled_graphs(4, Graph::is_connected).count(), 38);
        let oracle5 = (0..1024u64)
            .filter(|&m| connected_by_union_find(5, m))
            .count();
        assert_eq!(
            enumerate_labeled_graphs(5, Graph::is_connected).count(),
            oracle5
        );
    }

    #[test]
    fn masks_are_injective() {
        let seen: HashSet<Graph> = enumerate_labeled_graphs(5, |_| true).collect();
        assert_eq!(seen.len(), 1024);
        for (mask, g) in LabeledGraphs::new(5) {
            assert_eq!(g.edge_mask(), mask);
        }
    }

    #[test]
    fn partitions_cover_range() {
        let ranges = partition_masks(6, 7);
        assert_eq!(ranges.first().unwrap().start, 0);
        assert_eq!(ranges.last().unwrap().end, 1 << 15);
        for w in ranges.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert_eq!(partition_masks(2, 10).len(), 2);
    }
}
