//! Labelled trees via Prüfer sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

/// Largest order accepted by [`exhaustive_trees`] (8^6 = 262144 trees).
pub const MAX_EXHAUSTIVE_TREE_ORDER: usize = 8;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into its tree.
pub fn tree_from_prufer(n: usize, seq: &[usize]) -> Result<Graph, GraphError> {
    if n < 2 {
        return Graph::empty(n);
    }
    assert_eq!(seq.len(), n - 2, "Prüfer sequence must have length n - 2");
    let mut degree = vec![1usize; n];
    for &x in seq {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let mut rest = (0..n).filter(|&v| degree[v] == 1);
    let u = rest.next().expect("two vertices remain");
    let v = rest.next().expect("two vertices remain");
    edges.push((u, v));
    Graph::from_edges(n, edges)
}

/// Every labelled tree on `n` vertices, each exactly once, in lexicographic
/// order of Prüfer sequence. There are `n^(n-2)` of them.
pub fn exhaustive_trees(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n > MAX_EXHAUSTIVE_TREE_ORDER {
        return Err(GraphError::TooLargeForEnumeration {
            n,
            max: MAX_EXHAUSTIVE_TREE_ORDER,
        });
    }
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    Ok((0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        tree_from_prufer(n, &seq).expect("in-range sequence")
    }))
}

/// Uniformly random labelled trees on `n` vertices from a seeded ChaCha8 stream.
pub fn random_trees(n: usize, seed: u64) -> impl Iterator<Item = Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || random_tree(n, &mut rng))
}

pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &seq).expect("in-range sequence")
}

/// Connectivity test by repeated neighbourhood expansion.
pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = crate::bitset::VertexSet::singleton(0);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = crate::bitset::VertexSet::EMPTY;
        for v in frontier {
            next = next | g.neighbors(v);
        }
        frontier = next - seen;
        seen = seen | next;
    }
    seen == g.vertices()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        let t3: Vec<_> = exhaustive_trees(3).unwrap().collect();
        assert_eq!(t3.len(), 3);
        assert!(t3.iter().all(|t| t.m() == 2 && t.max_degree() == 2));
        assert_eq!(exhaustive_trees(4).unwrap().count(), 16);
        assert_eq!(exhaustive_trees(1).unwrap().count(), 1);
        assert_eq!(exhaustive_trees(2).unwrap().next().unwrap(), path(2).unwrap());
    }

    #[test]
    fn cayley_counts_and_distinctness() {
        for n in 3..=6 {
            let trees: HashSet<Graph> = exhaustive_trees(n).unwrap().collect();
            assert_eq!(trees.len(), n.pow(n as u32 - 2));
            assert!(trees.iter().all(|t| t.m() == n - 1 && is_connected(t)));
        }
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(exhaustive_trees(9).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for t in random_trees(9, 3).take(50) {
            assert_eq!(t.m(), 8);
            assert!(is_connected(&t));
        }
        let a: Vec<_> = random_trees(9, 11).take(5).collect();
        let b: Vec<_> = random_trees(9, 11).take(5).collect();
        assert_eq!(a, b);
    }
}
