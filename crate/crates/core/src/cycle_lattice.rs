//! Order, Cut/Sew, fibers, lifts and joins for maximal tubings of cycles and paths.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{cmp_sets, full_set, Graph, GraphKind};
use crate::gtree::{gtree_of, tubing_of};
use crate::pairs::PairSet;
use crate::tubing::{enumerate_maximal_tubings, Tubing};

/// A sequence of zipper letters; valid for a base tubing when it is an in-order shuffle of
/// that base's two zippers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShuffleWord {
    pub letters: Vec<usize>,
}

impl ShuffleWord {
    pub fn new(letters: Vec<usize>) -> Self {
        ShuffleWord { letters }
    }

    /// Comma separated labels; a comma-free string of digits is read one digit per letter.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ShuffleWord::new(Vec::new()));
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad letter `{p}` in word `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad letter `{c}` in word `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(ShuffleWord::new(letters))
    }

    /// Digits run together, as written for words over single-digit labels.
    pub fn compact(&self) -> String {
        self.letters.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Zippers of a path tubing: `left = (1, ..., a_l)` and `right = (n, ..., b_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zippers {
    pub root: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Zippers {
    pub fn of(x: &Tubing) -> Result<Zippers> {
        expect_kind(x, GraphKind::Path)?;
        let g = gtree_of(x);
        let (left, right) = g.zippers()?;
        Ok(Zippers {
            root: g.root(),
            left,
            right,
        })
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.left.contains(&v) || self.right.contains(&v)
    }

    /// Number of right letters before each left letter; `None` if `w` is not an in-order shuffle.
    pub fn profile(&self, w: &ShuffleWord) -> Option<Vec<usize>> {
        if w.letters.len() != self.len() {
            return None;
        }
        let (mut i, mut j) = (0, 0);
        let mut prof = Vec::with_capacity(self.left.len());
        for &c in &w.letters {
            if i < self.left.len() && c == self.left[i] {
                prof.push(j);
                i += 1;
            } else if j < self.right.len() && c == self.right[j] {
                j += 1;
            } else {
                return None;
            }
        }
        Some(prof)
    }

    pub fn admits(&self, w: &ShuffleWord) -> bool {
        self.profile(w).is_some()
    }

    fn check(&self, w: &ShuffleWord) -> Result<Vec<usize>> {
        self.profile(w).ok_or_else(|| {
            Error::InvalidWord(format!(
                "`{w}` is not an in-order shuffle of ({}) and ({})",
                join(&self.left),
                join(&self.right)
            ))
        })
    }

    /// Word with the given right-letter counts before each left letter.
    fn word_of_profile(&self, prof: &[usize]) -> ShuffleWord {
        let mut letters = Vec::with_capacity(self.len());
        let mut j = 0;
        for (i, &c) in prof.iter().enumerate() {
            while j < c {
                letters.push(self.right[j]);
                j += 1;
            }
            letters.push(self.left[i]);
        }
        letters.extend_from_slice(&self.right[j..]);
        ShuffleWord::new(letters)
    }

    /// Pairs `(b, a)` with right letter `b` before left letter `a`.
    pub fn cross_precedence(&self, w: &ShuffleWord) -> Result<BTreeSet<(usize, usize)>> {
        let prof = self.check(w)?;
        let mut out = BTreeSet::new();
        for (i, &c) in prof.iter().enumerate() {
            for &b in &self.right[..c] {
                out.insert((b, self.left[i]));
            }
        }
        Ok(out)
    }

    /// All in-order shuffles, left letters preferred first at each position.
    pub fn shuffles(&self) -> Vec<ShuffleWord> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        self.extend_shuffles(0, 0, &mut cur, &mut out);
        out
    }

    fn extend_shuffles(
        &self,
        i: usize,
        j: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<ShuffleWord>,
    ) {
        if i == self.left.len() && j == self.right.len() {
            out.push(ShuffleWord::new(cur.clone()));
            return;
        }
        if i < self.left.len() {
            cur.push(self.left[i]);
            self.extend_shuffles(i + 1, j, cur, out);
            cur.pop();
        }
        if j < self.right.len() {
            cur.push(self.right[j]);
            self.extend_shuffles(i, j + 1, cur, out);
            cur.pop();
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn expect_kind(t: &Tubing, kind: GraphKind) -> Result<()> {
    if t.graph().kind() != kind {
        return Err(Error::WrongGraphKind {
            expected: kind.name(),
            found: t.graph().kind().name().to_string(),
        });
    }
    Ok(())
}

fn expect_same(a: &Tubing, b: &Tubing, kind: GraphKind) -> Result<()> {
    expect_kind(a, kind)?;
    expect_kind(b, kind)?;
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// A process-wide shared path or cycle graph.
pub fn cached_graph(kind: GraphKind, n: usize) -> Result<Arc<Graph>> {
    if !matches!(kind, GraphKind::Path | GraphKind::Cycle) {
        return Err(Error::WrongGraphKind {
            expected: "path or cycle",
            found: kind.to_string(),
        });
    }
    Graph::new(kind, n)?;
    Ok(shared_graph(kind, n))
}

pub(crate) fn shared_graph(kind: GraphKind, n: usize) -> Arc<Graph> {
    static CACHE: OnceLock<Mutex<HashMap<(GraphKind, usize), Arc<Graph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry((kind, n))
        .or_insert_with(|| Arc::new(Graph::new(kind, n).expect("valid size")))
        .clone()
}

/// `j <= k` in the cycle order: no inversion of `j` is a coinversion of `k`.
pub fn leq_cycle(j: &Tubing, k: &Tubing) -> Result<bool> {
    expect_same(j, k, GraphKind::Cycle)?;
    Ok(gtree_of(j).inversions().is_disjoint(&gtree_of(k).coinversions()))
}

/// `x <= y` in the path order: inversion sets are nested.
pub fn leq_path(x: &Tubing, y: &Tubing) -> Result<bool> {
    expect_same(x, y, GraphKind::Path)?;
    Ok(gtree_of(x).inversions().is_subset(&gtree_of(y).inversions()))
}

/// Splits every tube of a cycle tubing across the edge `{1, n}`.
pub fn cut(j: &Tubing) -> Result<Tubing> {
    expect_kind(j, GraphKind::Cycle)?;
    let n = j.n();
    let m = j.root();
    let below = full_set(m - 1);
    let above = full_set(n) & !full_set(m);
    let mut down = vec![0u64; n + 1];
    for x in 1..=n {
        down[x] = match x.cmp(&m) {
            std::cmp::Ordering::Equal => j.down(x),
            std::cmp::Ordering::Less => j.down(x) & below,
            std::cmp::Ordering::Greater => j.down(x) & above,
        };
    }
    Ok(Tubing::from_downs(shared_graph(GraphKind::Path, n), down))
}

/// The shuffle word of `j` relative to the zippers of `cut(j)`.
pub fn word_of(j: &Tubing) -> Result<ShuffleWord> {
    let x = cut(j)?;
    let z = Zippers::of(&x)?;
    let mut letters: Vec<usize> = z.left.iter().chain(&z.right).copied().collect();
    letters.sort_by_key(|&v| j.down(v).count_ones());
    Ok(ShuffleWord::new(letters))
}

/// The cycle tubing in the fiber of `x` selected by the shuffle `w`.
pub fn sew(x: &Tubing, w: &ShuffleWord) -> Result<Tubing> {
    let z = Zippers::of(x)?;
    z.check(w)?;
    let n = x.n();
    let mut down: Vec<u64> = x.downs().to_vec();
    let mut acc = 0u64;
    for &v in &w.letters {
        acc |= x.down(v);
        down[v] = acc;
    }
    let t = Tubing::from_downs(shared_graph(GraphKind::Cycle, n), down);
    debug_assert!(crate::tubing::is_maximal_tubing(t.graph(), t.tubes()).unwrap());
    Ok(t)
}

/// Every preimage of `x` under `cut`, paired with its shuffle word.
pub fn fiber(x: &Tubing) -> Result<Vec<(ShuffleWord, Tubing)>> {
    let z = Zippers::of(x)?;
    z.shuffles()
        .into_iter()
        .map(|w| sew(x, &w).map(|t| (w, t)))
        .collect()
}

/// Join of two shuffles in the fiber order: union of cross-precedence sets.
pub fn shuffle_join(x: &Tubing, w1: &ShuffleWord, w2: &ShuffleWord) -> Result<ShuffleWord> {
    let z = Zippers::of(x)?;
    let p1 = z.check(w1)?;
    let p2 = z.check(w2)?;
    let prof: Vec<usize> = p1.iter().zip(&p2).map(|(a, b)| *a.max(b)).collect();
    Ok(z.word_of_profile(&prof))
}

/// Meet of two shuffles: intersection of cross-precedence sets.
pub fn shuffle_meet(x: &Tubing, w1: &ShuffleWord, w2: &ShuffleWord) -> Result<ShuffleWord> {
    let z = Zippers::of(x)?;
    let p1 = z.check(w1)?;
    let p2 = z.check(w2)?;
    let prof: Vec<usize> = p1.iter().zip(&p2).map(|(a, b)| *a.min(b)).collect();
    Ok(z.word_of_profile(&prof))
}

/// Which of the four kinds of left edge a path cover turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftCase {
    /// Inside a subtree hanging off the zipper.
    Hanging,
    /// Top of the left subtree of a right-zipper vertex, to that vertex.
    RightZipper,
    /// Between consecutive left-zipper vertices.
    LeftZipper,
    /// From the last left-zipper vertex to the root.
    Root,
}

/// One cover step `y ⋖ z` of a path tubing, given by the left child `v` whose edge turns.
fn lift_step(y: &Tubing, v: usize, w: &ShuffleWord) -> Result<(LiftCase, ShuffleWord)> {
    let z = Zippers::of(y)?;
    let g = gtree_of(y);
    let p = g.parent(v).expect("v is not the root");
    let mut letters = w.letters.clone();
    let pos = |letters: &[usize], u: usize| letters.iter().position(|&c| c == u).unwrap();
    let case = if p == z.root && z.left.last() == Some(&v) {
        letters.remove(pos(&letters, v));
        letters.push(p);
        LiftCase::Root
    } else if z.left.contains(&v) && z.left.contains(&p) {
        letters.remove(pos(&letters, v));
        let at = pos(&letters, p);
        letters[at] = v;
        LiftCase::LeftZipper
    } else if z.right.contains(&p) {
        let at = pos(&letters, p);
        letters.insert(at + 1, v);
        LiftCase::RightZipper
    } else {
        LiftCase::Hanging
    };
    Ok((case, ShuffleWord::new(letters)))
}

/// The upper covers of a path tubing as `(turned left child, result)`, sorted by exchanged tube.
fn path_up_moves(y: &Tubing) -> Vec<(usize, Tubing)> {
    let g = gtree_of(y);
    let mut out: Vec<(usize, Tubing)> = (1..=y.n())
        .filter(|&v| g.parent(v).is_some_and(|p| v < p))
        .map(|v| {
            let moved = g.tree_move(v).expect("non-root");
            (v, tubing_of(y.graph_arc(), &moved).expect("tree moves stay valid"))
        })
        .collect();
    out.sort_by(|a, b| cmp_sets(y.down(a.0), y.down(b.0)));
    out
}

/// The least element of the fiber of `x` above `j`; requires `cut(j) <= x`.
pub fn lift(j: &Tubing, x: &Tubing) -> Result<Tubing> {
    Ok(lift_traced(j, x)?.0)
}

/// As [`lift`], also reporting the case of every cover step along the chosen chain.
pub fn lift_traced(j: &Tubing, x: &Tubing) -> Result<(Tubing, Vec<LiftCase>)> {
    expect_kind(j, GraphKind::Cycle)?;
    expect_kind(x, GraphKind::Path)?;
    if j.n() != x.n() {
        return Err(Error::SizeMismatch(j.n(), x.n()));
    }
    let mut y = cut(j)?;
    if !leq_path(&y, x)? {
        return Err(Error::Precondition(
            "cut of the cycle tubing is not below the path tubing".into(),
        ));
    }
    let target = gtree_of(x).inversions();
    let mut w = word_of(j)?;
    let mut cases = Vec::new();
    while y != *x {
        let (v, next) = path_up_moves(&y)
            .into_iter()
            .find(|(_, t)| gtree_of(t).inversions().is_subset(&target))
            .expect("a cover below the target exists");
        let (case, nw) = lift_step(&y, v, &w)?;
        cases.push(case);
        w = nw;
        y = next;
    }
    Ok((sew(x, &w)?, cases))
}

/// The lift along a caller-chosen saturated chain `cut(j) = chain[0] ⋖ ... ⋖ chain[last]`.
pub fn lift_along(j: &Tubing, chain: &[Tubing]) -> Result<Tubing> {
    expect_kind(j, GraphKind::Cycle)?;
    let first = chain
        .first()
        .ok_or_else(|| Error::Precondition("empty chain".into()))?;
    if *first != cut(j)? {
        return Err(Error::Precondition("chain does not start at the cut".into()));
    }
    let mut w = word_of(j)?;
    for pair in chain.windows(2) {
        w = lift_cover(&pair[0], &pair[1], &w)?;
    }
    sew(chain.last().expect("non-empty"), &w)
}

/// Carries a word for the fiber of `y` to one for the fiber of its upper cover `z`.
pub fn lift_cover(y: &Tubing, z: &Tubing, w: &ShuffleWord) -> Result<ShuffleWord> {
    let (v, _) = path_up_moves(y)
        .into_iter()
        .find(|(_, t)| t == z)
        .ok_or_else(|| Error::Precondition("not an upper cover".into()))?;
    Ok(lift_step(y, v, w)?.1)
}

/// Every maximal tubing of `P_n` with its inversion set.
pub struct PathCatalog {
    pub tubings: Vec<Tubing>,
    pub inversions: Vec<PairSet>,
}

/// Shared catalog for `P_n`, built on first use.
pub fn path_catalog(n: usize) -> Arc<PathCatalog> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PathCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let graph = shared_graph(GraphKind::Path, n);
    let tubings = enumerate_maximal_tubings(&graph);
    let inversions = tubings.iter().map(|t| gtree_of(t).inversions()).collect();
    let cat = Arc::new(PathCatalog {
        tubings,
        inversions,
    });
    cache.lock().unwrap().insert(n, cat.clone());
    cat
}

/// Least upper bound in the path order, chosen from the catalog of `P_n`.
pub fn join_path(x: &Tubing, y: &Tubing) -> Result<Tubing> {
    expect_same(x, y, GraphKind::Path)?;
    let need = gtree_of(x).inversions().union(&gtree_of(y).inversions());
    let cat = path_catalog(x.n());
    let best = (0..cat.tubings.len())
        .filter(|&i| need.is_subset(&cat.inversions[i]))
        .min_by_key(|&i| cat.inversions[i].len())
        .expect("the maximum is an upper bound");
    if (0..cat.tubings.len())
        .any(|i| need.is_subset(&cat.inversions[i]) && !cat.inversions[best].is_subset(&cat.inversions[i]))
    {
        return Err(Error::NotALattice(0, 0, "join"));
    }
    Ok(cat.tubings[best].clone())
}

/// Greatest lower bound in the path order.
pub fn meet_path(x: &Tubing, y: &Tubing) -> Result<Tubing> {
    expect_same(x, y, GraphKind::Path)?;
    let allow = gtree_of(x).inversions().intersection(&gtree_of(y).inversions());
    let cat = path_catalog(x.n());
    let best = (0..cat.tubings.len())
        .filter(|&i| cat.inversions[i].is_subset(&allow))
        .max_by_key(|&i| cat.inversions[i].len())
        .expect("the minimum is a lower bound");
    if (0..cat.tubings.len())
        .any(|i| cat.inversions[i].is_subset(&allow) && !cat.inversions[i].is_subset(&cat.inversions[best]))
    {
        return Err(Error::NotALattice(0, 0, "meet"));
    }
    Ok(cat.tubings[best].clone())
}

/// Join in the cycle order: lift both into the fiber of the path join, then join the words.
pub fn join_cycle(j: &Tubing, k: &Tubing) -> Result<Tubing> {
    expect_same(j, k, GraphKind::Cycle)?;
    let x = join_path(&cut(j)?, &cut(k)?)?;
    let wj = word_of(&lift(j, &x)?)?;
    let wk = word_of(&lift(k, &x)?)?;
    sew(&x, &shuffle_join(&x, &wj, &wk)?)
}

/// Meet in the cycle order, through the relabelling `i -> n + 1 - i`.
pub fn meet_cycle(j: &Tubing, k: &Tubing) -> Result<Tubing> {
    expect_same(j, k, GraphKind::Cycle)?;
    join_cycle(&j.relabel_reverse()?, &k.relabel_reverse()?)?.relabel_reverse()
}

/// `inv(j) ⊆ inv(k) ∪ inc(k)` written out with explicit statistics, for cross-checks.
pub fn leq_cycle_by_statistics(j: &Tubing, k: &Tubing) -> Result<bool> {
    expect_same(j, k, GraphKind::Cycle)?;
    let sj = gtree_of(j).pair_statistics();
    let sk = gtree_of(k).pair_statistics();
    Ok(sj.inv.is_subset(&sk.inv.union(&sk.inc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtree::{GTree, TreeKind};
    use std::collections::BTreeMap;

    fn cycle_tree(n: usize, root: usize, edges: &[(usize, usize)]) -> Tubing {
        let map: BTreeMap<usize, usize> = edges.iter().copied().collect();
        let g = GTree::from_parent_map(n, root, &map, TreeKind::Cycle).unwrap();
        tubing_of(&shared_graph(GraphKind::Cycle, n), &g).unwrap()
    }

    fn c9_j() -> Tubing {
        cycle_tree(
            9,
            5,
            &[(7, 5), (6, 7), (3, 7), (4, 3), (1, 3), (2, 1), (9, 1), (8, 9)],
        )
    }

    #[test]
    fn word_parsing() {
        assert_eq!(ShuffleWord::parse("9137").unwrap().letters, vec![9, 1, 3, 7]);
        assert_eq!(ShuffleWord::parse("10,2").unwrap().letters, vec![10, 2]);
        assert!(ShuffleWord::parse("9x").is_err());
        assert_eq!(ShuffleWord::new(vec![1, 3]).to_string(), "1,3");
    }

    #[test]
    fn c9_cut_and_fiber() {
        let j = c9_j();
        let x = cut(&j).unwrap();
        let z = Zippers::of(&x).unwrap();
        assert_eq!(z.left, vec![1, 3]);
        assert_eq!(z.right, vec![9, 7]);
        let words: Vec<String> = fiber(&x).unwrap().iter().map(|(w, _)| w.compact()).collect();
        assert_eq!(words, vec!["1397", "1937", "1973", "9137", "9173", "9713"]);
        assert_eq!(word_of(&j).unwrap().compact(), "9137");
        assert_eq!(sew(&x, &ShuffleWord::parse("9137").unwrap()).unwrap(), j);
        assert!(sew(&x, &ShuffleWord::parse("3197").unwrap()).is_err());
    }

    #[test]
    fn shuffle_join_examples() {
        let x = cut(&c9_j()).unwrap();
        let w = |s: &str| ShuffleWord::parse(s).unwrap();
        assert_eq!(shuffle_join(&x, &w("1937"), &w("9137")).unwrap(), w("9137"));
        assert_eq!(shuffle_join(&x, &w("1973"), &w("9137")).unwrap(), w("9173"));
        assert_eq!(shuffle_meet(&x, &w("1973"), &w("9137")).unwrap(), w("1937"));
        let z = Zippers::of(&x).unwrap();
        let cp = z.cross_precedence(&w("9173")).unwrap();
        assert_eq!(cp.into_iter().collect::<Vec<_>>(), vec![(7, 3), (9, 1), (9, 3)]);
    }

    #[test]
    fn lift_of_own_cut_is_identity() {
        let j = c9_j();
        let x = cut(&j).unwrap();
        assert_eq!(lift(&j, &x).unwrap(), j);
    }

    #[test]
    fn c8_order_comparisons() {
        let j = cycle_tree(8, 4, &[(5, 4), (7, 5), (3, 7), (6, 7), (1, 3), (2, 1), (8, 1)]);
        let k = cycle_tree(8, 5, &[(7, 5), (6, 7), (8, 7), (4, 8), (3, 4), (2, 3), (1, 2)]);
        let l = cycle_tree(8, 7, &[(8, 7), (1, 8), (6, 1), (2, 6), (5, 2), (3, 5), (4, 3)]);
        assert!(leq_cycle(&k, &j).unwrap());
        assert!(!leq_cycle(&j, &k).unwrap());
        for other in [&j, &k] {
            assert!(!leq_cycle(&l, other).unwrap());
            assert!(!leq_cycle(other, &l).unwrap());
        }
        assert_eq!(
            gtree_of(&k).inversions().to_vec(),
            vec![(5, 6), (5, 7), (5, 8), (7, 8)]
        );
    }

    #[test]
    fn kind_mismatch() {
        let p = Tubing::minimum(shared_graph(GraphKind::Path, 4));
        let c = Tubing::minimum(shared_graph(GraphKind::Cycle, 4));
        assert!(leq_cycle(&p, &c).is_err());
        assert!(cut(&p).is_err());
        assert!(join_path(&p, &c).is_err());
        let c5 = Tubing::minimum(shared_graph(GraphKind::Cycle, 5));
        assert_eq!(leq_cycle(&c, &c5), Err(Error::SizeMismatch(4, 5)));
    }

    #[test]
    fn minimum_cuts_to_minimum() {
        for n in 3..8 {
            let c = Tubing::minimum(shared_graph(GraphKind::Cycle, n));
            assert_eq!(cut(&c).unwrap(), Tubing::minimum(shared_graph(GraphKind::Path, n)));
        }
    }
}
