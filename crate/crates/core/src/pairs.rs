//! Sets of pairs `(i, j)` with `1 <= i < j <= n`.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: usize,
    bits: FixedBitSet,
}

fn index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            n,
            bits: FixedBitSet::with_capacity(n * n.saturating_sub(1) / 2),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut s = Self::new(n);
        for (i, j) in pairs {
            s.insert(i, j);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts the pair, normalised so the smaller vertex comes first.
    pub fn insert(&mut self, a: usize, b: usize) {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        assert!(i >= 1 && i < j && j <= self.n, "pair ({a},{b}) out of range");
        self.bits.insert(index(i, j));
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        i >= 1 && i < j && j <= self.n && self.bits.contains(index(i, j))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PairSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PairSet { n: self.n, bits }
    }

    pub fn intersection(&self, other: &PairSet) -> PairSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PairSet { n: self.n, bits }
    }

    /// Pairs sorted by `(i, j)`.
    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(self.len());
        for j in 2..=self.n {
            for i in 1..j {
                if self.bits.contains(index(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Image under `i -> n + 1 - i` (which keeps pairs normalised after swapping).
    pub fn reversed(&self) -> PairSet {
        let n = self.n;
        PairSet::from_pairs(n, self.to_vec().into_iter().map(|(i, j)| (n + 1 - j, n + 1 - i)))
    }
}

/// The five pair statistics of a G-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairStats {
    /// `j` strictly below `i`.
    pub inv: PairSet,
    /// `i` strictly below `j`.
    pub coinv: PairSet,
    pub inc: PairSet,
    /// `i` is a child of `j`.
    pub asc: PairSet,
    /// `j` is a child of `i`.
    pub desc: PairSet,
}
