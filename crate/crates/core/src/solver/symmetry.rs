//! Vertex permutations used to fold symmetric positions onto one table key.

use crate::bitset::VertexSet;
use crate::graph::Graph;

use super::SolveError;

/// A graph automorphism with a byte-wise lookup table for fast set mapping.
#[derive(Clone)]
pub struct Automorphism {
    perm: Vec<usize>,
    // chunk[i][b]: image of the byte `b` found at bit offset 8*i.
    chunk: Box<[[u64; 256]; 8]>,
}

impl Automorphism {
    /// Validates that `perm` is a permutation of `0..n` preserving adjacency.
    pub fn new(g: &Graph, perm: Vec<usize>) -> Result<Self, SolveError> {
        let n = g.n();
        if perm.len() != n {
            return Err(SolveError::NotAnAutomorphism(format!(
                "permutation has length {}, graph has {n} vertices",
                perm.len()
            )));
        }
        let image: VertexSet = perm.iter().copied().filter(|&v| v < n).collect();
        if image != g.vertices() {
            return Err(SolveError::NotAnAutomorphism(
                "not a permutation of the vertex set".into(),
            ));
        }
        let mut chunk = Box::new([[0u64; 256]; 8]);
        for (i, table) in chunk.iter_mut().enumerate() {
            for (b, slot) in table.iter_mut().enumerate() {
                let mut out = 0u64;
                for bit in 0..8 {
                    let v = 8 * i + bit;
                    if b >> bit & 1 == 1 && v < n {
                        out |= 1u64 << perm[v];
                    }
                }
                *slot = out;
            }
        }
        let auto = Automorphism { perm, chunk };
        for u in 0..n {
            if auto.map(g.neighbors(u)) != g.neighbors(auto.perm[u]) {
                return Err(SolveError::NotAnAutomorphism(format!(
                    "edges at vertex {u} are not preserved"
                )));
            }
        }
        Ok(auto)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn map(&self, s: VertexSet) -> VertexSet {
        let mut bits = s.bits();
        let mut out = 0u64;
        let mut i = 0;
        while bits != 0 {
            out |= self.chunk[i][(bits & 0xff) as usize];
            bits >>= 8;
            i += 1;
        }
        VertexSet(out)
    }
}

/// `i -> n-1-i`.
pub fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// `i -> i+r mod n` for `r` in `1..n`.
pub fn rotations(n: usize) -> Vec<Vec<usize>> {
    (1..n).map(|r| (0..n).map(|i| (i + r) % n).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn reversal_is_a_path_automorphism() {
        let g = path(10).unwrap();
        let a = Automorphism::new(&g, reversal(10)).unwrap();
        let s: VertexSet = [0, 3, 9].into_iter().collect();
        assert_eq!(a.map(s), [9, 6, 0].into_iter().collect());
    }

    #[test]
    fn rotations_of_cycles() {
        let g = cycle(7).unwrap();
        for p in rotations(7) {
            assert!(Automorphism::new(&g, p).is_ok());
        }
        // A rotation is not an automorphism of a path.
        assert!(Automorphism::new(&path(7).unwrap(), rotations(7)[0].clone()).is_err());
    }

    #[test]
    fn rejects_non_permutations() {
        let g = path(3).unwrap();
        assert!(Automorphism::new(&g, vec![0, 0, 1]).is_err());
        assert!(Automorphism::new(&g, vec![0, 1]).is_err());
        assert!(Automorphism::new(&g, vec![0, 1, 5]).is_err());
    }

    #[test]
    fn maps_wide_sets() {
        let n = 64;
        let g = Graph::empty(n).unwrap();
        let a = Automorphism::new(&g, reversal(n)).unwrap();
        assert_eq!(a.map(VertexSet::singleton(0)), VertexSet::singleton(63));
        assert_eq!(a.map(VertexSet::full(64)), VertexSet::full(64));
    }
}
