//! The factorization system on the join irreducibles of the cycle lattice, direct forcing,
//! and the lattice of maximal orthogonal pairs.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gtree::tubing_of;
use crate::irreducibles::{all_indices, c_perm, canonical_ji, JiIndex};
use crate::poset::{FinitePoset, TubingPoset};

/// A binary relation on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Relation {
            rows: vec![FixedBitSet::with_capacity(size); size],
        }
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(size);
        for x in 0..size {
            for y in 0..size {
                if f(x, y) {
                    r.rows[x].insert(y);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|x| self.rows[x].ones().map(move |y| (x, y)))
            .collect()
    }

    /// Pairs with `x != y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|(x, y)| x != y).collect()
    }

    /// `x R y R x` forces `x = y`.
    pub fn is_antisymmetric(&self) -> bool {
        self.strict_pairs().iter().all(|&(x, y)| !self.contains(y, x))
    }

    /// A directed cycle through distinct elements (self-loops ignored), if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let size = self.size();
        // 0 = unseen, 1 = on stack, 2 = finished
        let mut state = vec![0u8; size];
        let mut parent = vec![usize::MAX; size];
        for start in 0..size {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, self.succ(start))];
            state[start] = 1;
            while let Some((v, next)) = stack.last_mut() {
                let v = *v;
                if let Some(w) = next.pop() {
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            stack.push((w, self.succ(w)));
                        }
                        1 => {
                            let mut cyc = vec![w];
                            let mut u = v;
                            while u != w {
                                cyc.push(u);
                                u = parent[u];
                            }
                            cyc.reverse();
                            return Some(cyc);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    fn succ(&self, v: usize) -> Vec<usize> {
        self.rows[v].ones().filter(|&w| w != v).collect()
    }
}

/// `x → z` iff `x ↠ y ↪ z` for some `y`.
pub fn mult(onto: &Relation, into: &Relation) -> Relation {
    let size = onto.size();
    let mut r = Relation::empty(size);
    for x in 0..size {
        for y in onto.rows[x].ones() {
            let row = into.rows[y].clone();
            r.rows[x].union_with(&row);
        }
    }
    r
}

/// `(↠, ↪)` determined by `→`.
pub fn fact(to: &Relation) -> (Relation, Relation) {
    let size = to.size();
    let mut cols = vec![FixedBitSet::with_capacity(size); size];
    for (x, y) in to.pairs() {
        cols[y].insert(x);
    }
    let onto = Relation::from_fn(size, |x, y| to.rows[y].is_subset(&to.rows[x]));
    let into = Relation::from_fn(size, |x, y| cols[x].is_subset(&cols[y]));
    (onto, into)
}

#[derive(Clone, Debug)]
pub struct ForcingSystem {
    pub n: usize,
    pub elements: Vec<JiIndex>,
    pub to: Relation,
    pub onto: Relation,
    pub into: Relation,
    /// Direct forcing, without self-loops.
    pub force: Relation,
}

impl ForcingSystem {
    pub fn index(&self, i: usize, k: usize) -> usize {
        (i - 1) * (self.n - 1) + (k - 1)
    }

    fn assemble(n: usize, elements: Vec<JiIndex>, onto: Relation, into: Relation) -> Self {
        let to = mult(&onto, &into);
        let force = direct_forcing(&onto, &into);
        ForcingSystem {
            n,
            elements,
            to,
            onto,
            into,
            force,
        }
    }

    /// `y ↠ x` or `x ↪ y`, for `x != y`.
    pub fn force_simplified(&self) -> Relation {
        Relation::from_fn(self.elements.len(), |x, y| {
            x != y && (self.onto.contains(y, x) || self.into.contains(x, y))
        })
    }

    /// Both relations are partial orders and no `x ↠ y ↪ x` with `x != y`.
    pub fn is_two_acyclic(&self) -> bool {
        self.onto.is_antisymmetric()
            && self.into.is_antisymmetric()
            && self
                .onto
                .strict_pairs()
                .iter()
                .all(|&(x, y)| !self.into.contains(y, x))
    }

    /// A `⇝` edge that does not increase `(i + k, k)` lexicographically.
    pub fn non_increasing_force_edge(&self) -> Option<(JiIndex, JiIndex)> {
        let key = |e: &JiIndex| (e.i + e.k, e.k);
        self.force
            .pairs()
            .into_iter()
            .map(|(x, y)| (self.elements[x], self.elements[y]))
            .find(|(a, b)| key(a) >= key(b))
    }

    pub fn to_json(&self) -> Value {
        let rel = |r: &Relation, strict: bool| -> Value {
            let pairs = if strict { r.strict_pairs() } else { r.pairs() };
            Value::Array(
                pairs
                    .into_iter()
                    .map(|(x, y)| {
                        let (a, b) = (self.elements[x], self.elements[y]);
                        json!([[a.i, a.k], [b.i, b.k]])
                    })
                    .collect(),
            )
        };
        json!({
            "n": self.n,
            "elements": self.elements.iter().map(|e| json!([e.i, e.k])).collect::<Vec<_>>(),
            "to": rel(&self.to, true),
            "onto": rel(&self.onto, true),
            "into": rel(&self.into, true),
            "force": rel(&self.force, true),
        })
    }
}

/// Direct forcing from its definition: `x` is ↠-minimal among the elements ↪-below `y`, or
/// ↪-maximal among the elements `y` ↠-reaches.
pub fn direct_forcing(onto: &Relation, into: &Relation) -> Relation {
    let size = onto.size();
    let mut r = Relation::empty(size);
    for y in 0..size {
        let below: Vec<usize> = (0..size).filter(|&x| into.contains(x, y)).collect();
        for &x in &below {
            if below.iter().all(|&z| z == x || !onto.contains(x, z)) {
                r.insert(x, y);
            }
        }
        let reached: Vec<usize> = (0..size).filter(|&x| onto.contains(y, x)).collect();
        for &x in &reached {
            if reached.iter().all(|&z| z == x || !into.contains(x, z)) {
                r.insert(x, y);
            }
        }
    }
    for x in 0..size {
        r.rows[x].set(x, false);
    }
    r
}

/// The system given by the index formulas for `↠` and `↪`.
pub fn forcing_system(n: usize) -> Result<ForcingSystem> {
    if n < 3 {
        return Err(Error::Precondition("forcing system needs n >= 3".into()));
    }
    let elements = all_indices(n);
    let size = elements.len();
    let onto = Relation::from_fn(size, |x, y| {
        let (a, b) = (elements[x], elements[y]);
        x == y || (a.i == b.i && b.k < a.k)
    });
    let into = Relation::from_fn(size, |x, y| {
        let (a, b) = (elements[x], elements[y]);
        x == y
            || (c_perm(n, a.i, a.k) == c_perm(n, b.i, b.k)
                && (a.i + a.k, a.k) < (b.i + b.k, b.k))
    });
    Ok(ForcingSystem::assemble(n, elements, onto, into))
}

/// Whether direct forcing is acyclic.
pub fn check_congruence_uniform(n: usize) -> Result<bool> {
    Ok(forcing_system(n)?.force.find_cycle().is_none())
}

/// Poset indices of `J_{i,k}`, in the order of [`all_indices`].
pub fn ji_positions(tp: &TubingPoset, n: usize) -> Result<Vec<usize>> {
    let graph = tp
        .tubings
        .first()
        .map(|t| t.graph_arc().clone())
        .ok_or_else(|| Error::Precondition("empty poset".into()))?;
    all_indices(n)
        .into_iter()
        .map(|e| {
            let t = tubing_of(&graph, &canonical_ji(n, e.i, e.k)?)?;
            tp.index_of(&t)
                .ok_or_else(|| Error::Precondition(format!("{e} is not in the poset")))
        })
        .collect()
}

/// The system read off the lattice: `x → y` iff `x ≰ κ(y)`, `x ↠ y` iff `x ≥ y`,
/// `x ↪ y` iff `κ(x) ≥ κ(y)`.
pub fn lattice_forcing(tp: &TubingPoset, n: usize) -> Result<ForcingSystem> {
    let pos = ji_positions(tp, n)?;
    let p = &tp.poset;
    let t = p
        .tables()
        .map_err(|f| Error::NotALattice(f.a, f.b, f.operation))?;
    let kap: Vec<usize> = pos
        .iter()
        .map(|&j| {
            p.kappa(&t, j)
                .ok_or_else(|| Error::Precondition(format!("no kappa for element {j}")))
        })
        .collect::<Result<_>>()?;
    let size = pos.len();
    let onto = Relation::from_fn(size, |x, y| p.le(pos[y], pos[x]));
    let into = Relation::from_fn(size, |x, y| p.le(kap[y], kap[x]));
    let to = Relation::from_fn(size, |x, y| !p.le(pos[x], kap[y]));
    let mut fs = ForcingSystem::assemble(n, all_indices(n), onto, into);
    fs.to = to;
    Ok(fs)
}

/// Maximal orthogonal pairs `(X, X^⊥)` of a relation on at most 64 elements, ordered by
/// containment of `X`.
#[derive(Clone, Debug)]
pub struct PairsLattice {
    /// Left halves `X` as bitmasks, sorted by size then value.
    pub closed: Vec<u64>,
    pub poset: FinitePoset,
}

struct Perp {
    // row[x] = { y : x → y }, col[y] = { x : x → y }
    row: Vec<u64>,
    col: Vec<u64>,
    all: u64,
}

impl Perp {
    fn new(to: &Relation) -> Result<Self> {
        let size = to.size();
        if size > 64 {
            return Err(Error::SizeCap(format!("{size} generators exceed 64")));
        }
        let mut row = vec![0u64; size];
        let mut col = vec![0u64; size];
        for (x, y) in to.pairs() {
            row[x] |= 1 << y;
            col[y] |= 1 << x;
        }
        let all = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        Ok(Perp { row, col, all })
    }

    fn right(&self, x: u64) -> u64 {
        (0..self.col.len())
            .filter(|&y| self.col[y] & x == 0)
            .fold(0, |acc, y| acc | 1 << y)
            & self.all
    }

    fn left(&self, y: u64) -> u64 {
        (0..self.row.len())
            .filter(|&x| self.row[x] & y == 0)
            .fold(0, |acc, x| acc | 1 << x)
            & self.all
    }

    fn closure(&self, x: u64) -> u64 {
        self.left(self.right(x))
    }
}

impl PairsLattice {
    /// Closed sets reached from the closure of the empty set by adding one generator at a time.
    pub fn build(to: &Relation) -> Result<Self> {
        let perp = Perp::new(to)?;
        let size = to.size();
        let start = perp.closure(0);
        let mut seen: HashSet<u64> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in 0..size {
                if x & (1 << g) == 0 {
                    let c = perp.closure(x | 1 << g);
                    if seen.insert(c) {
                        queue.push_back(c);
                    }
                }
            }
        }
        Self::from_closed(seen.into_iter().collect())
    }

    /// Reference construction filtering every subset; only for small relations.
    pub fn build_by_subsets(to: &Relation) -> Result<Self> {
        let size = to.size();
        if size > 20 {
            return Err(Error::SizeCap(format!("2^{size} subsets")));
        }
        let perp = Perp::new(to)?;
        let closed = (0..1u64 << size).filter(|&x| perp.closure(x) == x).collect();
        Self::from_closed(closed)
    }

    fn from_closed(mut closed: Vec<u64>) -> Result<Self> {
        closed.sort_by_key(|&x| (x.count_ones(), x));
        let labels = closed.iter().map(|x| format!("{x:#x}")).collect();
        let poset = FinitePoset::from_order(labels, |a, b| closed[a] & closed[b] == closed[a])?;
        Ok(PairsLattice { closed, poset })
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }
}

/// `Pairs(→)` for the formula-defined system of `C_n`; `max_n` caps the size.
pub fn pairs_lattice(n: usize, max_n: usize) -> Result<PairsLattice> {
    if n > max_n {
        return Err(Error::SizeCap(format!("pairs lattice limited to n <= {max_n}")));
    }
    PairsLattice::build(&forcing_system(n)?.to)
}

/// Checks that `L ↦ { J_{i,k} ≤ L }` is an order isomorphism from the tubing poset onto the
/// pairs lattice.
pub fn pairs_match_poset(pl: &PairsLattice, tp: &TubingPoset, n: usize) -> Result<bool> {
    if pl.len() != tp.len() {
        return Ok(false);
    }
    let pos = ji_positions(tp, n)?;
    let label: Vec<u64> = (0..tp.len())
        .map(|l| {
            pos.iter()
                .enumerate()
                .filter(|(_, &j)| tp.poset.le(j, l))
                .fold(0u64, |acc, (g, _)| acc | 1 << g)
        })
        .collect();
    let where_: HashMap<u64, usize> = pl.closed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let image: Vec<usize> = match label.iter().map(|x| where_.get(x).copied()).collect() {
        Some(v) => v,
        None => return Ok(false),
    };
    if image.iter().collect::<HashSet<_>>().len() != image.len() {
        return Ok(false);
    }
    for a in 0..tp.len() {
        for b in 0..tp.len() {
            if tp.poset.le(a, b) != pl.poset.le(image[a], image[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
