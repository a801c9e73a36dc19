//! The join irreducibles `J_{i,k}` of the cycle lattice, their meet irreducible mirror
//! images `M_{i,k}`, and the map κ between them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtree::{GTree, TreeKind};
use crate::pairs::PairSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JiIndex {
    pub i: usize,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MiIndex {
    pub i: usize,
    pub k: usize,
}

impl fmt::Display for JiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.i, self.k)
    }
}

impl fmt::Display for MiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.i, self.k)
    }
}

fn check(n: usize, i: usize, k: usize) -> Result<()> {
    if n < 3 || i == 0 || k == 0 || i >= n || k >= n {
        return Err(Error::IndexOutOfRange { n, i, k });
    }
    Ok(())
}

/// All `(i, k)` with `1 <= i, k <= n - 1`, ordered by `i` then `k`.
pub fn all_indices(n: usize) -> Vec<JiIndex> {
    (1..n)
        .flat_map(|i| (1..n).map(move |k| JiIndex { i, k }))
        .collect()
}

/// The permutation `c_i` of `1..n-1`.
pub fn c_perm(n: usize, i: usize, k: usize) -> usize {
    if k <= n - i {
        n - i + 1 - k
    } else {
        k
    }
}

/// The cyclic binary tree `j_{i,k}`.
pub fn canonical_ji(n: usize, i: usize, k: usize) -> Result<GTree> {
    check(n, i, k)?;
    let mut parent = vec![0usize; n + 1];
    let hang = |parent: &mut Vec<usize>, from: usize, chain: &mut dyn Iterator<Item = usize>| {
        let mut above = from;
        for v in chain {
            parent[v] = above;
            above = v;
        }
    };
    let root;
    if k < n - i {
        // n on top, a descending chain to i; i+k .. i+1 on the right of i, i-1 .. 1 on its left
        root = n;
        let mut spine = (i + k + 1..n).rev().chain(std::iter::once(i));
        hang(&mut parent, n, &mut spine);
        hang(&mut parent, i, &mut (i + 1..=i + k).rev());
        hang(&mut parent, i, &mut (1..i).rev());
    } else {
        // i on top, then i-1 .. n-k, then n with n-1 .. i+1 and n-k-1 .. 1 below it
        root = i;
        let mut spine = (n - k..i).rev().chain(std::iter::once(n));
        hang(&mut parent, i, &mut spine);
        hang(&mut parent, n, &mut (i + 1..n).rev());
        hang(&mut parent, n, &mut (1..n - k).rev());
    }
    GTree::new(n, root, parent, TreeKind::Cycle)
}

/// The tree of `M_{i,k}`, the mirror image of `J_{i,n-k}`.
pub fn canonical_mi(n: usize, i: usize, k: usize) -> Result<GTree> {
    check(n, i, k)?;
    Ok(canonical_ji(n, i, n - k)?.relabel_reverse())
}

pub fn kappa(n: usize, i: usize, k: usize) -> Result<MiIndex> {
    check(n, i, k)?;
    Ok(if i + k <= n {
        MiIndex {
            i: n + 1 - i - k,
            k: n - k,
        }
    } else {
        MiIndex { i: k, k: n - i }
    })
}

/// Closed form of `inv(J_{i,k})`.
pub fn ji_inversions(n: usize, i: usize, k: usize) -> Result<PairSet> {
    check(n, i, k)?;
    let pairs: Vec<(usize, usize)> = if i <= n - k {
        (i + 1..=i + k).map(|j| (i, j)).collect()
    } else {
        (n - k..=i)
            .flat_map(|a| (i + 1..=n).map(move |b| (a, b)))
            .collect()
    };
    Ok(PairSet::from_pairs(n, pairs))
}

/// Closed form of `coinv(M_{i,k})`.
pub fn mi_coinversions(n: usize, i: usize, k: usize) -> Result<PairSet> {
    check(n, i, k)?;
    let pairs: Vec<(usize, usize)> = if i <= k {
        (k - i + 1..=n - i).map(|a| (a, n - i + 1)).collect()
    } else {
        (1..=n - i)
            .flat_map(|a| (n - i + 1..=n - k + 1).map(move |b| (a, b)))
            .collect()
    };
    Ok(PairSet::from_pairs(n, pairs))
}
