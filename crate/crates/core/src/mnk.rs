//! The `M(n,k)` family: `k` matched pairs, `floor(n/2) - k` unmatched pairs
//! and, for odd `n`, one extra vertex, joined pair-to-pair by nothing, a
//! `P_3` or a `K_{2,2}`, and extra-vertex-to-pair by nothing or a `P_3`.
//!
//! Pair `i` occupies vertices `2i` and `2i+1`; the extra vertex is `n-1`.
//!
//! Spec strings have the form `N,K[;LINK]*` where `LINK` is one of
//!
//! ```text
//! none:I-J      no edges between pairs I and J (explicit)
//! k22:I-J       all four edges between pairs I and J
//! p3:I-J        a P_3 centred on the first vertex of the lower pair
//! p3:I-J@C      a P_3 centred on vertex C, a member of pair I or J
//! v:I           a P_3 centred on the extra vertex, joined to both ends of pair I
//! ```
//!
//! Pair indices are 0-based.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

/// The vertex hosting the midpoint of a pair-to-pair `P_3`: one of the two
/// vertices (`slot` 0 or 1) of the lower- or higher-indexed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Center {
    pub side: Side,
    pub slot: u8,
}

impl Default for Center {
    fn default() -> Self {
        Center {
            side: Side::Lower,
            slot: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    None,
    P3(Center),
    K22,
}

/// A link between pairs `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairLink {
    pub lo: usize,
    pub hi: usize,
    pub kind: LinkKind,
}

impl PairLink {
    pub fn new(a: usize, b: usize, kind: LinkKind) -> Self {
        PairLink {
            lo: a.min(b),
            hi: a.max(b),
            kind,
        }
    }

    fn center_vertex(&self, center: Center) -> usize {
        let pair = match center.side {
            Side::Lower => self.lo,
            Side::Upper => self.hi,
        };
        2 * pair + center.slot as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MnkSpec {
    pub n: usize,
    pub k: usize,
    pub pair_links: Vec<PairLink>,
    /// Pairs joined to the extra vertex by a `P_3`. Only valid for odd `n`.
    pub odd_links: Vec<usize>,
}

impl MnkSpec {
    pub fn new(n: usize, k: usize) -> Self {
        MnkSpec {
            n,
            k,
            pair_links: Vec::new(),
            odd_links: Vec::new(),
        }
    }

    pub fn with_link(mut self, a: usize, b: usize, kind: LinkKind) -> Self {
        self.pair_links.push(PairLink::new(a, b, kind));
        self
    }

    pub fn with_odd_link(mut self, pair: usize) -> Self {
        self.odd_links.push(pair);
        self
    }

    /// All pairs joined by `K_{2,2}`.
    pub fn all_k22(n: usize, k: usize) -> Self {
        let pairs = n / 2;
        let mut spec = MnkSpec::new(n, k);
        for a in 0..pairs {
            for b in a + 1..pairs {
                spec.pair_links.push(PairLink::new(a, b, LinkKind::K22));
            }
        }
        spec
    }

    pub fn pair_count(&self) -> usize {
        self.n / 2
    }

    /// The two vertices of pair `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (2 * i, 2 * i + 1)
    }

    /// The unpaired vertex, present when `n` is odd.
    pub fn odd_vertex(&self) -> Option<usize> {
        (self.n % 2 == 1).then(|| self.n - 1)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidMnk(msg));
        if self.n == 0 || self.n > crate::bitset::MAX_VERTICES {
            return bad(format!("order {} out of range 1..=64", self.n));
        }
        if 2 * self.k > self.n {
            return bad(format!("need n >= 2k, got n={} k={}", self.n, self.k));
        }
        let pairs = self.pair_count();
        let mut seen = std::collections::HashSet::new();
        for link in &self.pair_links {
            if link.lo == link.hi {
                return bad(format!("pair {} linked to itself", link.lo));
            }
            if link.hi >= pairs {
                return bad(format!("pair index {} out of range (pairs: {pairs})", link.hi));
            }
            if !seen.insert((link.lo, link.hi)) {
                return bad(format!("pairs {} and {} linked twice", link.lo, link.hi));
            }
            if let LinkKind::P3(c) = link.kind {
                if c.slot > 1 {
                    return bad(format!("P3 centre slot {} is not 0 or 1", c.slot));
                }
            }
        }
        if !self.odd_links.is_empty() && self.n % 2 == 0 {
            return bad("extra-vertex links require odd n".into());
        }
        let mut seen = std::collections::HashSet::new();
        for &p in &self.odd_links {
            if p >= pairs {
                return bad(format!("pair index {p} out of range (pairs: {pairs})"));
            }
            if !seen.insert(p) {
                return bad(format!("extra vertex linked to pair {p} twice"));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let mut edges = Vec::new();
        for i in 0..self.k {
            edges.push(self.pair(i));
        }
        for link in &self.pair_links {
            let (a0, a1) = self.pair(link.lo);
            let (b0, b1) = self.pair(link.hi);
            match link.kind {
                LinkKind::None => {}
                LinkKind::K22 => edges.extend([(a0, b0), (a0, b1), (a1, b0), (a1, b1)]),
                LinkKind::P3(center) => {
                    let c = link.center_vertex(center);
                    let other = if c / 2 == link.lo { link.hi } else { link.lo };
                    let (o0, o1) = self.pair(other);
                    edges.extend([(c, o0), (c, o1)]);
                }
            }
        }
        if let Some(v) = self.odd_vertex() {
            for &p in &self.odd_links {
                let (x, y) = self.pair(p);
                edges.extend([(v, x), (v, y)]);
            }
        }
        Graph::from_edges(self.n, edges)
    }

    /// A random member of `M(n,k)`: every pair-to-pair link is none, `P_3` or
    /// `K_{2,2}` with equal probability, each `P_3` centred on a uniformly
    /// chosen vertex of the `side` pair, and for odd `n` each pair joins the
    /// extra vertex with probability 1/2.
    pub fn random<R: Rng>(n: usize, k: usize, side: Side, rng: &mut R) -> Self {
        let mut spec = MnkSpec::new(n, k);
        let pairs = n / 2;
        for a in 0..pairs {
            for b in a + 1..pairs {
                let kind = match rng.gen_range(0..3) {
                    0 => LinkKind::None,
                    1 => LinkKind::P3(Center {
                        side,
                        slot: rng.gen_range(0..2),
                    }),
                    _ => LinkKind::K22,
                };
                spec.pair_links.push(PairLink::new(a, b, kind));
            }
        }
        if n % 2 == 1 {
            spec.odd_links = (0..pairs).filter(|_| rng.gen_bool(0.5)).collect();
        }
        spec
    }
}

impl fmt::Display for MnkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.n, self.k)?;
        for link in &self.pair_links {
            match link.kind {
                LinkKind::None => write!(f, ";none:{}-{}", link.lo, link.hi)?,
                LinkKind::K22 => write!(f, ";k22:{}-{}", link.lo, link.hi)?,
                LinkKind::P3(c) => {
                    write!(f, ";p3:{}-{}@{}", link.lo, link.hi, link.center_vertex(c))?
                }
            }
        }
        for p in &self.odd_links {
            write!(f, ";v:{p}")?;
        }
        Ok(())
    }
}

impl FromStr for MnkSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = |msg: String| GraphError::InvalidMnk(msg);
        let mut parts = s.trim().split(';');
        let head = parts.next().unwrap_or_default();
        let (n, k) = head
            .split_once(',')
            .ok_or_else(|| bad(format!("expected N,K, got {head:?}")))?;
        let num = |t: &str| -> Result<usize, GraphError> {
            t.trim()
                .parse()
                .map_err(|_| bad(format!("expected a number, got {t:?}")))
        };
        let mut spec = MnkSpec::new(num(n)?, num(k)?);

        for item in parts.map(str::trim).filter(|p| !p.is_empty()) {
            let (kind, body) = item
                .split_once(':')
                .ok_or_else(|| bad(format!("link {item:?} lacks a kind")))?;
            if kind == "v" {
                spec.odd_links.push(num(body)?);
                continue;
            }
            let (pairs, center) = match body.split_once('@') {
                Some((p, c)) => (p, Some(num(c)?)),
                None => (body, None),
            };
            let (a, b) = pairs
                .split_once('-')
                .ok_or_else(|| bad(format!("expected I-J, got {pairs:?}")))?;
            let (a, b) = (num(a)?, num(b)?);
            let (lo, hi) = (a.min(b), a.max(b));
            let kind = match (kind, center) {
                ("none", None) => LinkKind::None,
                ("k22", None) => LinkKind::K22,
                ("p3", None) => LinkKind::P3(Center::default()),
                ("p3", Some(c)) => {
                    let side = if c / 2 == lo {
                        Side::Lower
                    } else if c / 2 == hi {
                        Side::Upper
                    } else {
                        return Err(bad(format!("centre {c} is not in pair {lo} or {hi}")));
                    };
                    LinkKind::P3(Center {
                        side,
                        slot: (c % 2) as u8,
                    })
                }
                (other, _) => return Err(bad(format!("unknown link {other:?}"))),
            };
            spec.pair_links.push(PairLink::new(lo, hi, kind));
        }
        spec.validate()?;
        Ok(spec)
    }
}
