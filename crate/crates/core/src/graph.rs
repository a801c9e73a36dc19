//! Labeled simple graphs on `1..=n` and their tubes.
//!
//! A vertex set is a `u64` with bit `v - 1` standing for vertex `v`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 63;

/// A set of vertices, encoded as a bitmask.
pub type Tube = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    Custom,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Complete => "complete",
            GraphKind::Custom => "custom",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "complete" => Ok(GraphKind::Complete),
            "custom" => Ok(GraphKind::Custom),
            other => Err(Error::Parse(format!("unknown graph kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    kind: GraphKind,
    // adj[v] is the neighbourhood of v; adj[0] is unused
    adj: Vec<u64>,
}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << (v - 1)
}

pub fn full_set(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sorted vertex list of a bitmask.
pub fn to_vertices(set: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut s = set;
    while s != 0 {
        out.push(s.trailing_zeros() as usize + 1);
        s &= s - 1;
    }
    out
}

pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<u64> {
    let mut set = 0u64;
    for &v in vertices {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        set |= bit(v);
    }
    Ok(set)
}

/// Lexicographic comparison of the sorted vertex lists of two sets.
pub fn cmp_sets(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b) & (a ^ b).wrapping_neg();
    let above = !(low | (low - 1));
    if a & low != 0 {
        // a continues with `low`; b continues with something larger or stops
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `i -> n + 1 - i` applied to a vertex set.
pub fn reverse_set(n: usize, set: u64) -> u64 {
    set.reverse_bits() >> (64 - n)
}

pub fn format_set(set: u64) -> String {
    let parts: Vec<String> = to_vertices(set).iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl Graph {
    pub fn new(kind: GraphKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("n must be positive".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut edges = Vec::new();
        match kind {
            GraphKind::Path => edges.extend((1..n).map(|i| (i, i + 1))),
            GraphKind::Cycle => {
                if n < 3 {
                    return Err(Error::InvalidGraph("a cycle needs n >= 3".into()));
                }
                edges.extend((1..n).map(|i| (i, i + 1)));
                edges.push((1, n));
            }
            GraphKind::Complete => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        edges.push((i, j));
                    }
                }
            }
            GraphKind::Custom => {
                return Err(Error::InvalidGraph(
                    "custom graphs are built with Graph::custom".into(),
                ))
            }
        }
        Self::build(kind, n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(GraphKind::Path, n)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(GraphKind::Cycle, n)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(GraphKind::Complete, n)
    }

    /// A connected simple graph with arbitrary edges.
    pub fn custom(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("n must be positive".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Self::build(GraphKind::Custom, n, edges)
    }

    fn build(kind: GraphKind, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![0u64; n + 1];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        let g = Graph { n, kind, adj };
        if !g.is_connected_set(full_set(n)) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn full(&self) -> u64 {
        full_set(self.n)
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in to_vertices(self.adj[a]) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn neighborhood(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            out |= self.adj[s.trailing_zeros() as usize + 1];
            s &= s - 1;
        }
        out
    }

    /// Connected component of `within` that contains `start` (which must lie in `within`).
    pub fn component(&self, within: u64, start: usize) -> u64 {
        let mut reach = bit(start) & within;
        loop {
            let next = (reach | self.neighborhood(reach)) & within;
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    fn is_connected_set(&self, set: u64) -> bool {
        set != 0 && self.component(set, set.trailing_zeros() as usize + 1) == set
    }

    fn check_set(&self, set: u64) -> Result<()> {
        if set == 0 {
            return Err(Error::EmptySet);
        }
        if set & !self.full() != 0 {
            let v = 64 - set.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Whether `set` induces a connected subgraph.
    pub fn is_tube(&self, set: u64) -> Result<bool> {
        self.check_set(set)?;
        Ok(self.is_connected_set(set))
    }

    /// Nested, or with a union that is not a tube.
    pub fn compatible(&self, a: u64, b: u64) -> Result<bool> {
        for s in [a, b] {
            if !self.is_tube(s)? {
                return Err(Error::NotATube(to_vertices(s)));
            }
        }
        Ok(self.compatible_unchecked(a, b))
    }

    pub(crate) fn compatible_unchecked(&self, a: u64, b: u64) -> bool {
        a & b == a || a & b == b || !self.is_connected_set(a | b)
    }

    /// Every tube of the graph, by brute force over all subsets.
    pub fn all_tubes(&self) -> Result<Vec<u64>> {
        if self.n > 20 {
            return Err(Error::SizeCap(format!(
                "tube listing needs n <= 20, got {}",
                self.n
            )));
        }
        Ok((1..=self.full())
            .filter(|&s| self.is_connected_set(s))
            .collect())
    }

    /// Whether `i -> n + 1 - i` is an automorphism.
    pub fn is_reversible(&self) -> bool {
        (1..=self.n).all(|v| reverse_set(self.n, self.adj[v]) == self.adj[self.n + 1 - v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_edges() {
        assert_eq!(Graph::path(3).unwrap().edges(), vec![(1, 2), (2, 3)]);
        assert_eq!(
            Graph::cycle(4).unwrap().edges(),
            vec![(1, 2), (1, 4), (2, 3), (3, 4)]
        );
        assert_eq!(
            Graph::complete(3).unwrap().edges(),
            vec![(1, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn construction_errors() {
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::path(0).is_err());
        assert!(Graph::path(64).is_err());
        assert!(Graph::custom(4, &[(1, 2), (3, 4)]).is_err());
        assert!(Graph::custom(3, &[(1, 1), (1, 2), (2, 3)]).is_err());
    }

    #[test]
    fn tubes() {
        let c9 = Graph::cycle(9).unwrap();
        assert!(c9.is_tube(from_vertices(9, &[1, 2, 8, 9]).unwrap()).unwrap());
        let p4 = Graph::path(4).unwrap();
        assert!(!p4.is_tube(from_vertices(4, &[1, 3]).unwrap()).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_tube(c4.full()).unwrap());
        assert_eq!(p4.is_tube(0), Err(Error::EmptySet));
        assert!(p4.is_tube(1 << 5).is_err());
    }

    #[test]
    fn compatibility() {
        let p3 = Graph::path(3).unwrap();
        assert!(p3.compatible(bit(1), bit(3)).unwrap());
        assert!(p3.compatible(bit(2), bit(2) | bit(3)).unwrap());
        assert!(!p3.compatible(bit(2), bit(3)).unwrap());
        assert!(p3.compatible(bit(1) | bit(3), bit(2)).is_err());
    }

    #[test]
    fn lexicographic_set_order() {
        let sets = [
            vec![1],
            vec![1, 2],
            vec![1, 2, 3],
            vec![1, 3],
            vec![2],
            vec![2, 3],
            vec![3],
        ];
        for (x, a) in sets.iter().enumerate() {
            for (y, b) in sets.iter().enumerate() {
                let sa = from_vertices(3, a).unwrap();
                let sb = from_vertices(3, b).unwrap();
                assert_eq!(cmp_sets(sa, sb), x.cmp(&y), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse_set(5, bit(1) | bit(2)), bit(5) | bit(4));
        assert!(Graph::cycle(6).unwrap().is_reversible());
        let star = Graph::custom(3, &[(1, 2), (1, 3)]).unwrap();
        assert!(!star.is_reversible());
    }
}
