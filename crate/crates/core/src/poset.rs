//! Finite posets given by cover relations, with brute-force lattice operations.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tubing::{enumerate_with_cap, Tubing};

pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    // up[a] = { b : a <= b }, down[a] = { b : b <= a }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    // a linear extension
    topo: Vec<usize>,
}

/// Two elements whose join (or meet) is not unique, with their minimal upper (maximal lower)
/// bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeFailure {
    pub a: usize,
    pub b: usize,
    pub operation: &'static str,
    pub bounds: Vec<usize>,
}

/// A triple breaking one of the two semidistributive laws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdFailure {
    pub law: &'static str,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Join and meet tables of a lattice, indexed `a * len + b`.
#[derive(Clone, Debug)]
pub struct LatticeTables {
    len: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl LatticeTables {
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len + b] as usize
    }
}

impl FinitePoset {
    /// From cover pairs `(a, b)` meaning `a ⋖ b`; fails if they contain a cycle.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let len = labels.len();
        let mut upper = vec![Vec::new(); len];
        let mut lower = vec![Vec::new(); len];
        for &(a, b) in covers {
            if a >= len || b >= len || a == b {
                return Err(Error::Precondition(format!("bad cover ({a},{b})")));
            }
            upper[a].push(b);
            lower[b].push(a);
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let mut indeg: Vec<usize> = lower.iter().map(|l| l.len()).collect();
        let mut topo: Vec<usize> = (0..len).filter(|&i| indeg[i] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let a = topo[head];
            head += 1;
            for &b in &upper[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    topo.push(b);
                }
            }
        }
        if topo.len() != len {
            return Err(Error::Precondition("cover relation has a cycle".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        for &a in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(len);
            row.insert(a);
            for &b in &upper[a] {
                row.union_with(&up[b]);
            }
            up[a] = row;
        }
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        Ok(FinitePoset {
            labels,
            upper,
            lower,
            up,
            down,
            topo,
        })
    }

    /// From an order predicate; covers are its transitive reduction.
    pub fn from_order(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let len = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..len {
                if le(a, b) {
                    row.insert(b);
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..len {
            for b in up[a].ones() {
                if a == b {
                    continue;
                }
                let between = up[a].ones().filter(|&c| c != a && c != b && up[c].contains(b)).count();
                if between == 0 {
                    covers.push((a, b));
                }
            }
        }
        let p = Self::from_covers(labels, &covers)?;
        if p.up != up {
            return Err(Error::Precondition("predicate is not a partial order".into()));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lower[a].is_empty()).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper[a].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minima().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maxima().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    fn extreme_bounds(&self, common: &FixedBitSet, rows: &[FixedBitSet]) -> Vec<usize> {
        // elements of `common` with nothing else of `common` inside their row
        common
            .ones()
            .filter(|&c| common.ones().all(|d| d == c || !rows[d].contains(c)))
            .collect()
    }

    pub fn minimal_upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.up[a].clone();
        common.intersect_with(&self.up[b]);
        self.extreme_bounds(&common, &self.up)
    }

    pub fn maximal_lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.down[a].clone();
        common.intersect_with(&self.down[b]);
        self.extreme_bounds(&common, &self.down)
    }

    fn least_in(&self, common: &FixedBitSet, rows: &[FixedBitSet]) -> Option<usize> {
        // the least element of `common`, if any, has the largest row
        let cand = common.ones().max_by_key(|&c| rows[c].count_ones(..))?;
        common.is_subset(&rows[cand]).then_some(cand)
    }

    /// The unique least upper bound, if there is one.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.up[a].clone();
        common.intersect_with(&self.up[b]);
        self.least_in(&common, &self.up)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.down[a].clone();
        common.intersect_with(&self.down[b]);
        self.least_in(&common, &self.down)
    }

    /// Every pair has a join and a meet; otherwise the first failing pair.
    pub fn is_lattice(&self) -> std::result::Result<(), LatticeFailure> {
        self.tables().map(|_| ())
    }

    pub fn tables(&self) -> std::result::Result<LatticeTables, LatticeFailure> {
        let len = self.len();
        let rows: Vec<std::result::Result<(Vec<u32>, Vec<u32>), LatticeFailure>> = (0..len)
            .into_par_iter()
            .map(|a| {
                let mut j = Vec::with_capacity(len);
                let mut m = Vec::with_capacity(len);
                for b in 0..len {
                    match self.join(a, b) {
                        Some(x) => j.push(x as u32),
                        None => {
                            return Err(LatticeFailure {
                                a,
                                b,
                                operation: "join",
                                bounds: self.minimal_upper_bounds(a, b),
                            })
                        }
                    }
                    match self.meet(a, b) {
                        Some(x) => m.push(x as u32),
                        None => {
                            return Err(LatticeFailure {
                                a,
                                b,
                                operation: "meet",
                                bounds: self.maximal_lower_bounds(a, b),
                            })
                        }
                    }
                }
                Ok((j, m))
            })
            .collect();
        let mut join = Vec::with_capacity(len * len);
        let mut meet = Vec::with_capacity(len * len);
        for r in rows {
            let (j, m) = r?;
            join.extend(j);
            meet.extend(m);
        }
        Ok(LatticeTables { len, join, meet })
    }

    /// Möbius function `mu[a][b]`, zero off the order.
    pub fn mobius(&self) -> Vec<Vec<i64>> {
        let len = self.len();
        let mut pos = vec![0usize; len];
        for (i, &a) in self.topo.iter().enumerate() {
            pos[a] = i;
        }
        (0..len)
            .into_par_iter()
            .map(|a| {
                let mut row = vec![0i64; len];
                let mut above: Vec<usize> = self.up[a].ones().collect();
                above.sort_by_key(|&b| pos[b]);
                for &b in &above {
                    if b == a {
                        row[b] = 1;
                        continue;
                    }
                    let mut interval = self.up[a].clone();
                    interval.intersect_with(&self.down[b]);
                    let s: i64 = interval.ones().filter(|&z| z != b).map(|z| row[z]).sum();
                    row[b] = -s;
                }
                row
            })
            .collect()
    }

    /// Elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lower[a].len() == 1).collect()
    }

    /// Elements covered by exactly one element.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper[a].len() == 1).collect()
    }

    /// `max { L : L ∧ j = j_* }` for a join irreducible `j`, if that set has a maximum.
    pub fn kappa(&self, t: &LatticeTables, j: usize) -> Option<usize> {
        let [low] = self.lower[j][..] else {
            return None;
        };
        let mut set = FixedBitSet::with_capacity(self.len());
        for l in 0..self.len() {
            if t.meet(l, j) == low {
                set.insert(l);
            }
        }
        let cand = set.ones().min_by_key(|&c| self.up[c].count_ones(..))?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    /// Both semidistributive laws over all triples; `Err` if the poset is not a lattice.
    pub fn check_semidistributive(
        &self,
    ) -> std::result::Result<Option<SdFailure>, LatticeFailure> {
        let t = self.tables()?;
        Ok(self.semidistributive_with(&t))
    }

    pub fn semidistributive_with(&self, t: &LatticeTables) -> Option<SdFailure> {
        let len = self.len();
        (0..len).into_par_iter().find_map_first(|x| {
            for y in 0..len {
                for z in y..len {
                    let xy = t.meet(x, y);
                    if xy == t.meet(x, z) && t.meet(x, t.join(y, z)) != xy {
                        return Some(SdFailure {
                            law: "meet",
                            x,
                            y,
                            z,
                        });
                    }
                    let xy = t.join(x, y);
                    if xy == t.join(x, z) && t.join(x, t.meet(y, z)) != xy {
                        return Some(SdFailure {
                            law: "join",
                            x,
                            y,
                            z,
                        });
                    }
                }
            }
            None
        })
    }

    /// Hasse diagram in DOT; edges point from lower to upper cover.
    pub fn to_dot(&self, use_labels: bool) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for a in 0..self.len() {
            if use_labels {
                let _ = writeln!(s, "  {a} [label=\"{}\"];", self.labels[a].replace('"', "\\\""));
            } else {
                let _ = writeln!(s, "  {a};");
            }
        }
        for (a, b) in self.cover_pairs() {
            let _ = writeln!(s, "  {a} -> {b};");
        }
        s.push_str("}\n");
        s
    }

    /// Möbius matrix as CSV with a header row of element indices.
    pub fn mobius_csv(&self) -> String {
        let mu = self.mobius();
        let mut s = String::from("element");
        for b in 0..self.len() {
            let _ = write!(s, ",{b}");
        }
        s.push('\n');
        for (a, row) in mu.iter().enumerate() {
            let _ = write!(s, "{a}");
            for v in row {
                let _ = write!(s, ",{v}");
            }
            s.push('\n');
        }
        s
    }
}

/// The poset of maximal tubings of a graph.
#[derive(Clone, Debug)]
pub struct TubingPoset {
    pub poset: FinitePoset,
    pub tubings: Vec<Tubing>,
    index: HashMap<Vec<u64>, usize>,
}

impl TubingPoset {
    pub fn index_of(&self, t: &Tubing) -> Option<usize> {
        self.index.get(t.tubes()).copied()
    }

    pub fn len(&self) -> usize {
        self.tubings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubings.is_empty()
    }
}

pub fn build_poset(graph: &Graph) -> Result<TubingPoset> {
    build_poset_capped(graph, DEFAULT_SIZE_CAP)
}

pub fn build_poset_capped(graph: &Graph, cap: usize) -> Result<TubingPoset> {
    let tubings = enumerate_with_cap(graph, cap)?;
    let index = crate::tubing::index_of(&tubings);
    let covers: Vec<(usize, usize)> = tubings
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, t)| {
            let index = &index;
            t.upper_covers().into_iter().map(move |u| (a, index[u.tubes()]))
        })
        .collect();
    let labels = tubings.iter().map(|t| t.to_string()).collect();
    let poset = FinitePoset::from_covers(labels, &covers)?;
    Ok(TubingPoset {
        poset,
        tubings,
        index,
    })
}

/// Shared poset of `C_n` or `P_n`, built on first use.
pub fn cached_poset(graph: &Graph) -> Result<Arc<TubingPoset>> {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<Graph, Arc<TubingPoset>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(graph) {
        return Ok(p.clone());
    }
    let p = Arc::new(build_poset(graph)?);
    cache.lock().unwrap().insert(graph.clone(), p.clone());
    Ok(p)
}
