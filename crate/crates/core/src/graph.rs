//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex.
//!
//! Vertices are `0..n`. Every constructor funnels through [`Graph::from_edges`]
//! or checks the same invariants: symmetric adjacency, no self-loops, and a
//! cached edge count.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::mnk::MnkSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of 64 vertices")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
    #[error("invalid M(n,k) specification: {0}")]
    InvalidMnk(String),
    #[error("exhaustive enumeration limited to n <= {max}, got {n}")]
    TooLargeForEnumeration { n: usize, max: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; the
    /// orientation of each pair is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighbourhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Adjacency words, one per vertex.
    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.adj[u] - VertexSet::full(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Number of edges with both endpoints in `s`.
    #[inline]
    pub fn edges_within(&self, s: VertexSet) -> usize {
        let twice: usize = s.iter().map(|v| (self.adj[v] & s).len()).sum();
        twice / 2
    }

    /// Number of edges with one endpoint in `a` and the other in `b`
    /// (`a` and `b` disjoint).
    #[inline]
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| (self.adj[v] & b).len()).sum()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj: Vec<VertexSet> = (0..self.n)
            .map(|v| (all - self.adj[v]).without(v))
            .collect();
        let m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        Graph { n: self.n, adj, m }
    }

    /// Same graph with the edge `uv` flipped (added if absent, removed if present).
    pub fn toggle_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u].remove(v);
            g.adj[v].remove(u);
            g.m -= 1;
        } else {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `G - S`: deletes the vertices in `removed` and relabels the survivors
    /// in increasing order. Returns the new graph and, for each new index,
    /// its original vertex.
    pub fn without_vertices(&self, removed: VertexSet) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (self.vertices() - removed).iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| !removed.contains(u) && !removed.contains(v))
            .map(|(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(kept.len(), edges).expect("subgraph of a valid graph");
        (g, kept)
    }

    /// Checks every structural invariant. Used by tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let mut deg_sum = 0;
        for u in 0..self.n {
            let a = self.adj[u];
            if a.contains(u) || !(a - self.vertices()).is_empty() {
                return false;
            }
            if a.iter().any(|v| !self.adj[v].contains(u)) {
                return false;
            }
            deg_sum += a.len();
        }
        self.n <= MAX_VERTICES && deg_sum == 2 * self.m
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidFamily("path needs n >= 1".into()));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Path `0-1-..-(n-1)` closed by the edge `(n-1, 0)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidFamily("cycle needs n >= 3".into()));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidFamily("complete needs n >= 1".into()));
    }
    Ok(Graph::empty(n)?.complement())
}

/// `K_{p,q}` with parts `{0..p-1}` and `{p..p+q-1}`.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p == 0 || q == 0 {
        return Err(GraphError::InvalidFamily(
            "complete bipartite needs p, q >= 1".into(),
        ));
    }
    Graph::from_edges(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
}

pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidFamily("empty needs n >= 1".into()));
    }
    Graph::empty(n)
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("static edge list")
}

/// A named graph family with its parameters.
///
/// Textual form: `path:N`, `cycle:N`, `complete:N`, `kbip:P,Q`, `empty:N`,
/// `petersen`, `mnk:<spec>` (see [`MnkSpec`] for the spec grammar).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
    Petersen,
    Mnk(MnkSpec),
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match self {
            Family::Path(n) => path(*n),
            Family::Cycle(n) => cycle(*n),
            Family::Complete(n) => complete(*n),
            Family::CompleteBipartite(p, q) => complete_bipartite(*p, *q),
            Family::Empty(n) => edgeless(*n),
            Family::Petersen => Ok(petersen()),
            Family::Mnk(spec) => spec.build(),
        }
    }
}

fn parse_count(s: &str, what: &str) -> Result<usize, GraphError> {
    s.trim()
        .parse()
        .map_err(|_| GraphError::InvalidFamily(format!("{what}: expected a count, got {s:?}")))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(p, q) => write!(f, "kbip:{p},{q}"),
            Family::Empty(n) => write!(f, "empty:{n}"),
            Family::Petersen => f.write_str("petersen"),
            Family::Mnk(spec) => write!(f, "mnk:{spec}"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let need = |what: &str| {
            arg.ok_or_else(|| GraphError::InvalidFamily(format!("{what} needs a parameter")))
        };
        let family = match name {
            "path" => Family::Path(parse_count(need("path")?, "path")?),
            "cycle" => Family::Cycle(parse_count(need("cycle")?, "cycle")?),
            "complete" => Family::Complete(parse_count(need("complete")?, "complete")?),
            "empty" => Family::Empty(parse_count(need("empty")?, "empty")?),
            "kbip" => {
                let arg = need("kbip")?;
                let (p, q) = arg.split_once(',').ok_or_else(|| {
                    GraphError::InvalidFamily(format!("kbip expects P,Q, got {arg:?}"))
                })?;
                Family::CompleteBipartite(parse_count(p, "kbip")?, parse_count(q, "kbip")?)
            }
            "petersen" => {
                if arg.is_some() {
                    return Err(GraphError::InvalidFamily("petersen takes no parameter".into()));
                }
                Family::Petersen
            }
            "mnk" => Family::Mnk(need("mnk")?.parse()?),
            other => return Err(GraphError::InvalidFamily(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

// ---------------------------------------------------------------------------
// Random graphs
// ---------------------------------------------------------------------------

/// Samples `G(n, 1/2)`.
///
/// The generator is ChaCha8 seeded with `seed` through `seed_from_u64`. Pairs
/// `(u, v)`, `u < v`, are visited in lexicographic order and each consumes one
/// `next_u32()`; the edge is present when the low bit is set. The output is
/// therefore a fixed function of `(n, seed)` on every platform.
pub fn random_gnp(n: usize, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_gnp_with(n, &mut rng)
}

/// Same sampling procedure as [`random_gnp`], drawing from a caller-owned stream.
pub fn random_gnp_with<R: RngCore>(n: usize, rng: &mut R) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u32() & 1 == 1 {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// The labelled graph on `n` vertices whose edge set is given by the bits of
/// `code`, pairs `(u, v)`, `u < v`, numbered lexicographically from bit 0.
/// Iterating `code` over `0..2^(n(n-1)/2)` visits every labelled graph once.
pub fn graph_from_code(n: usize, code: u64) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Number of labelled graphs on `n` vertices, if it fits in a `u64`.
pub fn labelled_graph_count(n: usize) -> Option<u64> {
    let pairs = n * n.saturating_sub(1) / 2;
    1u64.checked_shl(pairs as u32)
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Parses the plain-text graph format: the first significant line holds `n`,
/// every further non-empty line holds one edge `u v`. Lines starting with `#`
/// are comments.
pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| GraphError::Parse {
        line: first_line,
        msg: format!("expected vertex count, got {header:?}"),
    })?;
    let mut g = Graph::empty(n)?;

    for (line, content) in lines {
        let mut fields = content.split_whitespace();
        let mut endpoint = || -> Result<usize, GraphError> {
            let tok = fields.next().ok_or_else(|| GraphError::Parse {
                line,
                msg: "expected two vertex indices".into(),
            })?;
            tok.parse().map_err(|_| GraphError::Parse {
                line,
                msg: format!("invalid vertex index {tok:?}"),
            })
        };
        let u = endpoint()?;
        let v = endpoint()?;
        if fields.next().is_some() {
            return Err(GraphError::Parse {
                line,
                msg: "trailing fields after edge".into(),
            });
        }
        g.add_edge(u, v).map_err(|e| GraphError::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Canonical text form: `n`, then edges `u v` with `u < v` in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn build_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.m(), 2);
        assert_eq!(p3, path(3).unwrap());

        let single = Graph::from_edges(1, []).unwrap();
        assert_eq!((single.n(), single.m()), (1, 0));

        let dup = Graph::from_edges(4, [(0, 1), (0, 1), (2, 3)]).unwrap();
        assert_eq!(dup.m(), 2);
        assert_eq!(Graph::from_edges(4, [(1, 0), (0, 1)]).unwrap().m(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn family_examples() {
        assert_eq!(edge_list(&path(4).unwrap()), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(complete(5).unwrap().m(), 10);
        let c = cycle(5).unwrap();
        assert!(c.has_edge(4, 0));
        assert_eq!(c.m(), 5);
        let kb = complete_bipartite(2, 3).unwrap();
        assert_eq!(kb.m(), 6);
        assert!(kb.has_edge(1, 4) && !kb.has_edge(0, 1) && !kb.has_edge(2, 3));

        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        for g in [path(7), cycle(9), complete(6), complete_bipartite(3, 4), edgeless(5)] {
            assert!(g.unwrap().check_invariants());
        }
        assert!(p.check_invariants());
    }

    #[test]
    fn family_parameter_errors() {
        assert!(path(0).is_err());
        assert!(cycle(2).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(edgeless(0).is_err());
        assert!(path(65).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("path:5".parse::<Family>().unwrap(), Family::Path(5));
        assert_eq!(
            "kbip:3,4".parse::<Family>().unwrap(),
            Family::CompleteBipartite(3, 4)
        );
        assert_eq!("petersen".parse::<Family>().unwrap(), Family::Petersen);
        assert!("petersen:3".parse::<Family>().is_err());
        assert!("path".parse::<Family>().is_err());
        assert!("star:4".parse::<Family>().is_err());
        assert!("kbip:3".parse::<Family>().is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(edge_list(&path(3).unwrap().complement()), vec![(0, 2)]);
        assert_eq!(complete(4).unwrap().complement(), edgeless(4).unwrap());
        assert_eq!(edgeless(6).unwrap().complement(), complete(6).unwrap());
        assert!(petersen().complement().check_invariants());
    }

    #[test]
    fn gnp_is_deterministic_and_bounded() {
        let a = random_gnp(8, 42).unwrap();
        let b = random_gnp(8, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.m() <= 28);
        assert!(a.check_invariants());
        assert!(random_gnp(65, 0).is_err());
    }

    #[test]
    fn gnp_mean_edge_count() {
        // Binomial(28, 1/2) has mean 14; compare the sample mean against it
        // with the sample's own standard error.
        let counts: Vec<f64> = (0..1000u64)
            .map(|s| random_gnp(8, s).unwrap().m() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
        let stderr = (var / counts.len() as f64).sqrt();
        assert!((mean - 14.0).abs() <= 3.0 * stderr, "mean {mean}, stderr {stderr}");
    }

    #[test]
    fn graph_codes_enumerate_everything_once() {
        let n = 4;
        let total = labelled_graph_count(n).unwrap();
        assert_eq!(total, 64);
        let mut seen = std::collections::HashSet::new();
        for code in 0..total {
            assert!(seen.insert(graph_from_code(n, code).unwrap()));
        }
        assert_eq!(labelled_graph_count(12), None);
    }

    #[test]
    fn deleting_vertices_relabels() {
        let (g, kept) = path(5).unwrap().without_vertices(VertexSet::singleton(2));
        assert_eq!(kept, vec![0, 1, 3, 4]);
        assert_eq!(edge_list(&g), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn text_format() {
        assert_eq!(read_graph("3\n0 1\n1 2\n").unwrap(), path(3).unwrap());
        let messy = "# a comment\n4\n\n3 2\n  0 1 \n# tail\n1 0\n";
        let g = read_graph(messy).unwrap();
        assert_eq!(write_graph(&g), "4\n0 1\n2 3\n");
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);

        assert!(matches!(
            read_graph("2\n0 2\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(read_graph("").is_err());
        assert!(read_graph("x\n").is_err());
        assert!(read_graph("3\n0\n").is_err());
        assert!(read_graph("3\n0 1 2\n").is_err());
        assert!(read_graph("3\n1 1\n").is_err());
    }
}
