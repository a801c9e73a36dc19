//! Maximal tubings, flips, cover relations and enumeration.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{bit, cmp_sets, format_set, reverse_set, to_vertices, Graph};

/// A maximal tubing of a connected graph; always holds `n` tubes including the full set.
#[derive(Clone, Debug)]
pub struct Tubing {
    graph: Arc<Graph>,
    // sorted by `cmp_sets`
    tubes: Vec<u64>,
    // down[v] is the smallest tube containing v; down[0] is unused
    down: Vec<u64>,
}

impl PartialEq for Tubing {
    fn eq(&self, other: &Self) -> bool {
        self.tubes == other.tubes && self.graph == other.graph
    }
}

impl Eq for Tubing {}

impl Hash for Tubing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tubes.hash(state);
    }
}

impl fmt::Display for Tubing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tubes.iter().map(|&t| format_set(t)).collect();
        f.write_str(&parts.join(","))
    }
}

/// Pairwise compatible, exactly `n` tubes, full set included.
pub fn is_maximal_tubing(graph: &Graph, tubes: &[u64]) -> Result<bool> {
    let mut distinct: Vec<u64> = Vec::with_capacity(tubes.len());
    for &t in tubes {
        if !graph.is_tube(t)? {
            return Err(Error::NotATube(to_vertices(t)));
        }
        if !distinct.contains(&t) {
            distinct.push(t);
        }
    }
    if distinct.len() != graph.n() || !distinct.contains(&graph.full()) {
        return Ok(false);
    }
    for (idx, &a) in distinct.iter().enumerate() {
        for &b in &distinct[idx + 1..] {
            if !graph.compatible_unchecked(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sort_canonical(tubes: &mut [u64]) {
    tubes.sort_by(|&a, &b| cmp_sets(a, b));
}

impl Tubing {
    pub fn new(graph: Arc<Graph>, tubes: Vec<u64>) -> Result<Self> {
        if !is_maximal_tubing(&graph, &tubes)? {
            return Err(Error::InvalidTubing(
                "tubes are not a maximal compatible collection".into(),
            ));
        }
        let mut tubes = tubes;
        sort_canonical(&mut tubes);
        tubes.dedup();
        Self::from_sorted(graph, tubes)
    }

    /// Convenience constructor from vertex lists.
    pub fn from_lists(graph: Arc<Graph>, lists: &[Vec<usize>]) -> Result<Self> {
        let n = graph.n();
        let tubes = lists
            .iter()
            .map(|l| crate::graph::from_vertices(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, tubes)
    }

    fn from_sorted(graph: Arc<Graph>, tubes: Vec<u64>) -> Result<Self> {
        let n = graph.n();
        let mut by_size = tubes.clone();
        by_size.sort_by_key(|t| t.count_ones());
        let mut down = vec![0u64; n + 1];
        for (idx, &t) in by_size.iter().enumerate() {
            let covered = by_size[..idx]
                .iter()
                .filter(|&&s| s & t == s)
                .fold(0u64, |acc, &s| acc | s);
            let rest = t & !covered;
            if rest.count_ones() != 1 {
                return Err(Error::InvalidTubing(format!(
                    "tube {} has no unique top",
                    format_set(t)
                )));
            }
            down[rest.trailing_zeros() as usize + 1] = t;
        }
        Ok(Tubing { graph, tubes, down })
    }

    /// Builds a tubing from the table `down[v]` (index 0 ignored), trusting that it is valid.
    pub(crate) fn from_downs(graph: Arc<Graph>, down: Vec<u64>) -> Self {
        let mut tubes: Vec<u64> = down[1..].to_vec();
        sort_canonical(&mut tubes);
        Tubing { graph, tubes, down }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Tubes in canonical (lexicographic vertex list) order.
    pub fn tubes(&self) -> &[u64] {
        &self.tubes
    }

    pub fn tube_lists(&self) -> Vec<Vec<usize>> {
        self.tubes.iter().map(|&t| to_vertices(t)).collect()
    }

    pub fn contains(&self, tube: u64) -> bool {
        self.tubes.binary_search_by(|&t| cmp_sets(t, tube)).is_ok()
    }

    /// Smallest tube containing `v`.
    pub fn down(&self, v: usize) -> u64 {
        self.down[v]
    }

    pub(crate) fn downs(&self) -> &[u64] {
        &self.down
    }

    /// The vertex `v` with `down(v) == tube`.
    pub fn top(&self, tube: u64) -> Result<usize> {
        (1..=self.n())
            .find(|&v| self.down[v] == tube)
            .ok_or_else(|| Error::TubeNotInTubing(to_vertices(tube)))
    }

    /// Top of the smallest tube strictly containing `down(v)`, or `None` at the root.
    pub fn parent_vertex(&self, v: usize) -> Option<usize> {
        let dv = self.down[v];
        (1..=self.n())
            .filter(|&u| u != v && self.down[u] & dv == dv)
            .min_by_key(|&u| self.down[u].count_ones())
    }

    pub fn root(&self) -> usize {
        let full = self.graph.full();
        (1..=self.n()).find(|&v| self.down[v] == full).unwrap()
    }

    /// Exchange `tube` for the unique other tube completing `self \ {tube}`.
    ///
    /// The replacement is the component of the parent tube minus `top(tube)` that holds the
    /// parent tube's own top.
    pub fn flip(&self, tube: u64) -> Result<(Tubing, u64)> {
        if tube == self.graph.full() {
            return Err(Error::FullTube);
        }
        let x = self.top(tube)?;
        let p = self
            .parent_vertex(x)
            .expect("a non-full tube has a parent tube");
        let parent_tube = self.down[p];
        let replacement = self.graph.component(parent_tube & !bit(x), p);
        let mut down = self.down.clone();
        // x takes over the parent tube, p takes the replacement
        down[x] = parent_tube;
        down[p] = replacement;
        Ok((Tubing::from_downs(self.graph.clone(), down), replacement))
    }

    /// Reference flip: searches every tube of the graph for the replacement.
    pub fn flip_brute(&self, tube: u64) -> Result<(Tubing, u64)> {
        if tube == self.graph.full() {
            return Err(Error::FullTube);
        }
        if !self.contains(tube) {
            return Err(Error::TubeNotInTubing(to_vertices(tube)));
        }
        let rest: Vec<u64> = self.tubes.iter().copied().filter(|&t| t != tube).collect();
        let found: Vec<u64> = self
            .graph
            .all_tubes()?
            .into_iter()
            .filter(|&c| c != tube && !rest.contains(&c))
            .filter(|&c| rest.iter().all(|&t| self.graph.compatible_unchecked(c, t)))
            .collect();
        if found.len() != 1 {
            return Err(Error::InvalidTubing(format!(
                "{} replacement tubes for {}",
                found.len(),
                format_set(tube)
            )));
        }
        let mut tubes = rest;
        tubes.push(found[0]);
        Ok((Tubing::new(self.graph.clone(), tubes)?, found[0]))
    }

    /// All `n - 1` flips as `(removed, result, added)`, in canonical order of the removed tube.
    pub fn flips(&self) -> Vec<(u64, Tubing, u64)> {
        let full = self.graph.full();
        self.tubes
            .iter()
            .filter(|&&t| t != full)
            .map(|&t| {
                let (res, added) = self.flip(t).expect("tube belongs to the tubing");
                (t, res, added)
            })
            .collect()
    }

    /// Flips that go up in the order (`self` is covered by the result).
    pub fn upper_covers(&self) -> Vec<Tubing> {
        self.flips()
            .into_iter()
            .filter(|(removed, res, added)| {
                self.top(*removed).unwrap() < res.top(*added).unwrap()
            })
            .map(|(_, res, _)| res)
            .collect()
    }

    pub fn lower_covers(&self) -> Vec<Tubing> {
        self.flips()
            .into_iter()
            .filter(|(removed, res, added)| {
                self.top(*removed).unwrap() > res.top(*added).unwrap()
            })
            .map(|(_, res, _)| res)
            .collect()
    }

    /// The tubing whose every tube has its largest vertex as top.
    pub fn minimum(graph: Arc<Graph>) -> Tubing {
        Self::greedy(graph, true)
    }

    /// The tubing whose every tube has its smallest vertex as top.
    pub fn maximum(graph: Arc<Graph>) -> Tubing {
        Self::greedy(graph, false)
    }

    fn greedy(graph: Arc<Graph>, top_is_max: bool) -> Tubing {
        let n = graph.n();
        let mut down = vec![0u64; n + 1];
        let mut stack = vec![graph.full()];
        while let Some(set) = stack.pop() {
            let top = if top_is_max {
                64 - set.leading_zeros() as usize
            } else {
                set.trailing_zeros() as usize + 1
            };
            down[top] = set;
            let mut rest = set & !bit(top);
            while rest != 0 {
                let c = graph.component(rest, rest.trailing_zeros() as usize + 1);
                stack.push(c);
                rest &= !c;
            }
        }
        Tubing::from_downs(graph, down)
    }

    /// Image under `i -> n + 1 - i`.
    pub fn relabel_reverse(&self) -> Result<Tubing> {
        if !self.graph.is_reversible() {
            return Err(Error::NotReversible);
        }
        let n = self.n();
        let mut down = vec![0u64; n + 1];
        for v in 1..=n {
            down[n + 1 - v] = reverse_set(n, self.down[v]);
        }
        Ok(Tubing::from_downs(self.graph.clone(), down))
    }

    /// Lexicographic comparison of the canonical tube lists.
    pub fn canonical_cmp(&self, other: &Tubing) -> Ordering {
        for (&a, &b) in self.tubes.iter().zip(&other.tubes) {
            match cmp_sets(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.tubes.len().cmp(&other.tubes.len())
    }
}

/// `a ⋖ b`: they differ in one tube and the top of the removed tube is smaller.
pub fn covers(a: &Tubing, b: &Tubing) -> Result<bool> {
    if a.graph != b.graph {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let only_a: Vec<u64> = a.tubes.iter().copied().filter(|&t| !b.contains(t)).collect();
    let only_b: Vec<u64> = b.tubes.iter().copied().filter(|&t| !a.contains(t)).collect();
    if only_a.len() != 1 || only_b.len() != 1 {
        return Ok(false);
    }
    Ok(a.top(only_a[0])? < b.top(only_b[0])?)
}

/// Every maximal tubing, breadth first from the minimum; each layer in canonical order.
pub fn enumerate_maximal_tubings(graph: &Graph) -> Vec<Tubing> {
    enumerate_with_cap(graph, usize::MAX).expect("no cap")
}

pub fn enumerate_with_cap(graph: &Graph, cap: usize) -> Result<Vec<Tubing>> {
    let graph = Arc::new(graph.clone());
    let start = Tubing::minimum(graph);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(start.tubes.clone());
    let mut out = vec![start];
    let mut layer_start = 0;
    while layer_start < out.len() {
        let layer_end = out.len();
        let mut next: Vec<Tubing> = Vec::new();
        for t in &out[layer_start..layer_end] {
            for (_, res, _) in t.flips() {
                if seen.insert(res.tubes.clone()) {
                    next.push(res);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::SizeCap(format!("more than {cap} maximal tubings")));
        }
        next.sort_by(|a, b| a.canonical_cmp(b));
        out.extend(next);
        layer_start = layer_end;
    }
    Ok(out)
}

/// Position of every tubing in a list, keyed by its canonical tubes.
pub fn index_of(tubings: &[Tubing]) -> HashMap<Vec<u64>, usize> {
    tubings
        .iter()
        .enumerate()
        .map(|(i, t)| (t.tubes.clone(), i))
        .collect()
}
