//! Exhaustive verification suites over `MTub(C_n)` and `MTub(P_n)`.
//!
//! Every suite compares a structural computation against a brute-force one and stops at the
//! first counterexample, which is reported as JSON.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycle_lattice::{
    cached_graph, cut, fiber, join_cycle, join_path, leq_cycle, leq_cycle_by_statistics,
    leq_path, lift, lift_cover, meet_cycle, meet_path, path_catalog, sew, shuffle_join,
    shuffle_meet, word_of, Zippers,
};
use crate::error::{Error, Result};
use crate::forcing::{
    fact, forcing_system, lattice_forcing, pairs_lattice, pairs_match_poset, PairsLattice,
};
use crate::graph::{to_vertices, Graph, GraphKind};
use crate::gtree::{gtree_of, tubing_of, Shape};
use crate::irreducibles::{
    all_indices, c_perm, canonical_ji, canonical_mi, ji_inversions, kappa, mi_coinversions,
};
use crate::json::tubing_to_json;
use crate::poset::{cached_poset, LatticeTables, TubingPoset};
use crate::tubing::{covers, enumerate_maximal_tubings, Tubing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Order,
    Quotient,
    Sdl,
    Cu,
    Mobius,
    Ji,
    Selfdual,
    Regular,
    Pairs,
    All,
}

const EVERY: [Suite; 10] = [
    Suite::Lattice,
    Suite::Order,
    Suite::Quotient,
    Suite::Sdl,
    Suite::Cu,
    Suite::Mobius,
    Suite::Ji,
    Suite::Selfdual,
    Suite::Regular,
    Suite::Pairs,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Order => "order",
            Suite::Quotient => "quotient",
            Suite::Sdl => "sdl",
            Suite::Cu => "cu",
            Suite::Mobius => "mobius",
            Suite::Ji => "ji",
            Suite::Selfdual => "selfdual",
            Suite::Regular => "regular",
            Suite::Pairs => "pairs",
            Suite::All => "all",
        }
    }

    /// Largest `n` run without `force`.
    pub fn cap(self) -> usize {
        match self {
            Suite::Lattice | Suite::Sdl | Suite::Order | Suite::Quotient | Suite::Mobius => 6,
            Suite::Pairs => 6,
            Suite::Selfdual => 7,
            Suite::Regular => 9,
            Suite::Cu | Suite::Ji => 12,
            Suite::All => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EVERY
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub facts: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub suite: String,
    pub n: usize,
    pub property: String,
    pub witness: Value,
}

pub type Outcome = std::result::Result<Report, Violation>;

enum Stop {
    Fail(String, Value),
    Err(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Err(e)
    }
}

type Check<T = ()> = std::result::Result<T, Stop>;

fn fail<T>(property: impl Into<String>, witness: Value) -> Check<T> {
    Err(Stop::Fail(property.into(), witness))
}

fn ensure(cond: bool, property: &str, witness: impl FnOnce() -> Value) -> Check {
    if cond {
        Ok(())
    } else {
        fail(property, witness())
    }
}

/// First failure over `0..len` in index order, checked in parallel.
fn each(len: usize, f: impl Fn(usize) -> Check + Sync + Send) -> Check {
    (0..len)
        .into_par_iter()
        .map(f)
        .find_first(|r| r.is_err())
        .unwrap_or(Ok(()))
}

fn tj(t: &Tubing) -> Value {
    tubing_to_json(t)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

fn cycle_poset(n: usize) -> Result<Arc<TubingPoset>> {
    cached_poset(&Graph::cycle(n)?)
}

fn path_poset(n: usize) -> Result<Arc<TubingPoset>> {
    cached_poset(&Graph::path(n)?)
}

fn tables(tp: &TubingPoset) -> Check<LatticeTables> {
    tp.poset.tables().or_else(|f| {
        fail(
            "unique joins and meets",
            json!({
                "a": tj(&tp.tubings[f.a]),
                "b": tj(&tp.tubings[f.b]),
                "operation": f.operation,
                "bounds": f.bounds.iter().map(|&x| tj(&tp.tubings[x])).collect::<Vec<_>>(),
            }),
        )
    })
}

/// Runs one suite. `Err` covers size caps and malformed input; a failed property is
/// `Ok(Err(violation))`.
pub fn run(suite: Suite, n: usize, force: bool) -> Result<Outcome> {
    if n < 3 {
        return Err(Error::Precondition("verification needs n >= 3".into()));
    }
    if n > suite.cap() && !force {
        return Err(Error::SizeCap(format!(
            "suite {suite} is limited to n <= {} without --force",
            suite.cap()
        )));
    }
    let mut facts = Vec::new();
    let suites: Vec<Suite> = if suite == Suite::All {
        EVERY.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        let res = match s {
            Suite::Lattice => lattice(n),
            Suite::Order => order(n),
            Suite::Quotient => quotient(n),
            Suite::Sdl => sdl(n),
            Suite::Cu => cu(n),
            Suite::Mobius => mobius(n),
            Suite::Ji => ji(n),
            Suite::Selfdual => selfdual(n),
            Suite::Regular => regular(n),
            Suite::Pairs => pairs(n),
            Suite::All => unreachable!(),
        };
        match res {
            Ok(mut f) => facts.append(&mut f),
            Err(Stop::Err(e)) => return Err(e),
            Err(Stop::Fail(property, witness)) => {
                return Ok(Err(Violation {
                    suite: s.name().into(),
                    n,
                    property,
                    witness,
                }))
            }
        }
    }
    Ok(Ok(Report {
        suite: suite.name().into(),
        n,
        facts,
    }))
}

fn lattice(n: usize) -> Check<Vec<String>> {
    let tp = cycle_poset(n)?;
    let t = tables(&tp)?;
    let len = tp.len();
    each(len, |a| {
        for b in 0..len {
            let (x, y) = (&tp.tubings[a], &tp.tubings[b]);
            let j = join_cycle(x, y)?;
            ensure(tp.index_of(&j) == Some(t.join(a, b)), "join_cycle is the join", || {
                json!({"a": tj(x), "b": tj(y), "join_cycle": tj(&j), "oracle": tj(&tp.tubings[t.join(a, b)])})
            })?;
            let m = meet_cycle(x, y)?;
            ensure(tp.index_of(&m) == Some(t.meet(a, b)), "meet_cycle is the meet", || {
                json!({"a": tj(x), "b": tj(y), "meet_cycle": tj(&m), "oracle": tj(&tp.tubings[t.meet(a, b)])})
            })?;
        }
        Ok(())
    })?;
    let pp = path_poset(n)?;
    let pt = tables(&pp)?;
    each(pp.len(), |a| {
        for b in 0..pp.len() {
            let (x, y) = (&pp.tubings[a], &pp.tubings[b]);
            ensure(pp.index_of(&join_path(x, y)?) == Some(pt.join(a, b)), "join_path is the join", || {
                json!({"a": tj(x), "b": tj(y)})
            })?;
            ensure(pp.index_of(&meet_path(x, y)?) == Some(pt.meet(a, b)), "meet_path is the meet", || {
                json!({"a": tj(x), "b": tj(y)})
            })?;
        }
        Ok(())
    })?;
    Ok(vec![format!(
        "lattice: C_{n} has {len} elements, every pair has a unique join and meet, join_cycle and meet_cycle agree with the oracle on {} pairs; P_{n} joins and meets agree on {} pairs",
        len * len,
        pp.len() * pp.len()
    )])
}

fn order(n: usize) -> Check<Vec<String>> {
    let tp = cycle_poset(n)?;
    let len = tp.len();
    each(len, |a| {
        let x = &tp.tubings[a];
        let cx = cut(x)?;
        for b in 0..len {
            let y = &tp.tubings[b];
            let le = tp.poset.le(a, b);
            ensure(leq_cycle(x, y)? == le, "inversion test equals the cover closure", || {
                json!({"a": tj(x), "b": tj(y), "closure": le})
            })?;
            ensure(leq_cycle_by_statistics(x, y)? == le, "inv(a) within inv(b) plus inc(b)", || {
                json!({"a": tj(x), "b": tj(y), "closure": le})
            })?;
            if le {
                ensure(leq_path(&cx, &cut(y)?)?, "cut is order preserving", || {
                    json!({"a": tj(x), "b": tj(y)})
                })?;
            }
        }
        Ok(())
    })?;
    let invs: HashSet<Vec<(usize, usize)>> = tp
        .tubings
        .iter()
        .map(|t| gtree_of(t).inversions().to_vec())
        .collect();
    if invs.len() != len {
        return fail("inversion sets determine the tubing", json!({"distinct": invs.len(), "elements": len}));
    }
    let pp = path_poset(n)?;
    each(pp.len(), |a| {
        for b in 0..pp.len() {
            let (x, y) = (&pp.tubings[a], &pp.tubings[b]);
            let le = pp.poset.le(a, b);
            ensure(leq_path(x, y)? == le, "path inversion containment equals the cover closure", || {
                json!({"a": tj(x), "b": tj(y), "closure": le})
            })?;
        }
        Ok(())
    })?;
    Ok(vec![format!(
        "order: leq_cycle matches the cover closure on {} pairs of C_{n}, leq_path on {} pairs of P_{n}; cut is monotone; {len} distinct inversion sets",
        len * len,
        pp.len() * pp.len()
    )])
}

fn quotient(n: usize) -> Check<Vec<String>> {
    let cat = path_catalog(n);
    let mut total = 0u64;
    for x in &cat.tubings {
        let z = Zippers::of(x)?;
        let f = fiber(x)?;
        let expect = binomial((z.left.len() + z.right.len()) as u64, z.left.len() as u64);
        ensure(f.len() as u64 == expect, "fiber size is a binomial coefficient", || {
            json!({"base": tj(x), "size": f.len(), "expected": expect})
        })?;
        total += f.len() as u64;
        for (w, t) in &f {
            ensure(cut(t)? == *x, "cut after sew is the identity", || {
                json!({"base": tj(x), "word": w.to_string()})
            })?;
            ensure(word_of(t)? == *w, "word_of recovers the shuffle", || {
                json!({"base": tj(x), "word": w.to_string()})
            })?;
        }
        // the fiber order is the componentwise order of shuffle profiles
        for (w1, t1) in &f {
            for (w2, t2) in &f {
                let p1 = z.profile(w1).expect("valid");
                let p2 = z.profile(w2).expect("valid");
                let by_profile = p1.iter().zip(&p2).all(|(a, b)| a <= b);
                ensure(leq_cycle(t1, t2)? == by_profile, "fiber order is the shuffle order", || {
                    json!({"base": tj(x), "w1": w1.to_string(), "w2": w2.to_string()})
                })?;
                let jw = shuffle_join(x, w1, w2)?;
                ensure(sew(x, &jw)? == join_cycle(t1, t2)?, "shuffle_join is the join in the fiber", || {
                    json!({"base": tj(x), "w1": w1.to_string(), "w2": w2.to_string()})
                })?;
                let mw = shuffle_meet(x, w1, w2)?;
                ensure(sew(x, &mw)? == meet_cycle(t1, t2)?, "shuffle_meet is the meet in the fiber", || {
                    json!({"base": tj(x), "w1": w1.to_string(), "w2": w2.to_string()})
                })?;
            }
        }
    }
    let expect = binomial(2 * n as u64 - 2, n as u64 - 1);
    ensure(total == expect, "fibers partition the cycle tubings", || {
        json!({"sum": total, "expected": expect})
    })?;

    let tp = cycle_poset(n)?;
    let len = tp.len();
    each(len, |a| {
        let x = &tp.tubings[a];
        ensure(cut(&x.relabel_reverse()?)? == cut(x)?.relabel_reverse()?, "cut commutes with w0", || {
            json!({"a": tj(x)})
        })?;
        for b in a..len {
            let y = &tp.tubings[b];
            let (cx, cy) = (cut(x)?, cut(y)?);
            ensure(cut(&join_cycle(x, y)?)? == join_path(&cx, &cy)?, "cut preserves joins", || {
                json!({"a": tj(x), "b": tj(y)})
            })?;
            ensure(cut(&meet_cycle(x, y)?)? == meet_path(&cx, &cy)?, "cut preserves meets", || {
                json!({"a": tj(x), "b": tj(y)})
            })?;
        }
        Ok(())
    })?;
    let lifts = check_lifts(n, &tp)?;
    Ok(vec![
        format!(
            "quotient: {} path tubings of P_{n}, fiber sizes are binomial and sum to {total}; cut(sew(x, w)) = x for every word; fiber order, shuffle_join and shuffle_meet match the cycle lattice",
            cat.tubings.len()
        ),
        format!("quotient: cut preserves joins and meets on {} unordered pairs and commutes with w0", len * (len + 1) / 2),
        lifts,
    ])
}

/// For each `j`, walks every saturated chain upward from `cut(j)` at once: the lifted word at
/// each path tubing must not depend on the chain, and must name the least element of its fiber
/// above `j`.
fn check_lifts(n: usize, tp: &TubingPoset) -> Check<String> {
    let pp = path_poset(n)?;
    let count = std::sync::atomic::AtomicUsize::new(0);
    each(tp.len(), |a| {
        let j = &tp.tubings[a];
        let start = pp.index_of(&cut(j)?).expect("cut is a path tubing");
        let mut word = HashMap::from([(start, word_of(j)?)]);
        let mut queue = VecDeque::from([start]);
        while let Some(y) = queue.pop_front() {
            let w = word[&y].clone();
            for &z in pp.poset.upper_covers(y) {
                let nw = lift_cover(&pp.tubings[y], &pp.tubings[z], &w)?;
                match word.get(&z) {
                    Some(old) => ensure(*old == nw, "the lift does not depend on the chain", || {
                        json!({"j": tj(j), "x": tj(&pp.tubings[z]), "words": [old.to_string(), nw.to_string()]})
                    })?,
                    None => {
                        word.insert(z, nw);
                        queue.push_back(z);
                    }
                }
            }
        }
        for (&xi, w) in &word {
            let x = &pp.tubings[xi];
            let lifted = sew(x, w)?;
            ensure(lift(j, x)? == lifted, "lift follows any chain", || json!({"j": tj(j), "x": tj(x)}))?;
            let above: Vec<Tubing> = fiber(x)?
                .into_iter()
                .map(|(_, t)| t)
                .filter(|k| leq_cycle(j, k).unwrap_or(false))
                .collect();
            let least = above
                .iter()
                .find(|k| above.iter().all(|o| leq_cycle(k, o).unwrap_or(false)));
            ensure(least == Some(&lifted), "lift is the least fiber element above j", || {
                json!({"j": tj(j), "x": tj(x), "lift": tj(&lifted)})
            })?;
            if n <= 5 {
                // j <= K iff lift <= K whenever cut(K) >= x
                for k in &tp.tubings {
                    if leq_path(x, &cut(k)?)? {
                        ensure(leq_cycle(j, k)? == leq_cycle(&lifted, k)?, "lift has the same upper bounds above x", || {
                            json!({"j": tj(j), "x": tj(x), "k": tj(k)})
                        })?;
                    }
                }
            }
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(())
    })?;
    Ok(format!(
        "quotient: {} lifts (j, x >= cut(j)) are chain independent and equal the brute-force fiber minimum",
        count.into_inner()
    ))
}

fn sdl(n: usize) -> Check<Vec<String>> {
    let tp = cycle_poset(n)?;
    let t = tables(&tp)?;
    if let Some(f) = tp.poset.semidistributive_with(&t) {
        return fail(
            format!("semidistributive ({} law)", f.law),
            json!({"x": tj(&tp.tubings[f.x]), "y": tj(&tp.tubings[f.y]), "z": tj(&tp.tubings[f.z])}),
        );
    }
    let ji = tp.poset.join_irreducibles();
    for &j in &ji {
        ensure(tp.poset.kappa(&t, j).is_some(), "kappa exists for every join irreducible", || {
            json!({"j": tj(&tp.tubings[j])})
        })?;
    }
    let len = tp.len();
    Ok(vec![format!(
        "sdl: both semidistributive laws hold on all {} triples of C_{n}; kappa exists for all {} join irreducibles",
        len * len * (len + 1) / 2,
        ji.len()
    )])
}

fn cu(n: usize) -> Check<Vec<String>> {
    let fs = forcing_system(n)?;
    let ix = |x: usize| json!([fs.elements[x].i, fs.elements[x].k]);
    ensure(fs.is_two_acyclic(), "the factorization system is two-acyclic", || json!({}))?;
    let (onto, into) = fact(&fs.to);
    ensure(onto == fs.onto && into == fs.into, "the arrows determine both factors", || json!({}))?;
    let simple = fs.force_simplified();
    if simple != fs.force {
        let (x, y) = (0..fs.elements.len())
            .flat_map(|x| (0..fs.elements.len()).map(move |y| (x, y)))
            .find(|&(x, y)| simple.contains(x, y) != fs.force.contains(x, y))
            .expect("relations differ");
        return fail("both forms of direct forcing agree", json!({"x": ix(x), "y": ix(y)}));
    }
    if let Some(cycle) = fs.force.find_cycle() {
        return fail(
            "direct forcing is acyclic",
            Value::Array(cycle.into_iter().map(ix).collect()),
        );
    }
    if let Some((a, b)) = fs.non_increasing_force_edge() {
        return fail("forcing increases (i+k, k)", json!({"x": [a.i, a.k], "y": [b.i, b.k]}));
    }
    let mut facts = vec![format!(
        "cu: {} join irreducibles, {} forcing edges, acyclic and increasing in (i+k, k); arrows factor as onto then into",
        fs.elements.len(),
        fs.force.strict_pairs().len()
    )];
    if n <= 5 {
        let lf = lattice_forcing(&*cycle_poset(n)?, n)?;
        ensure(lf.to == fs.to, "arrows read off the lattice agree", || json!({}))?;
        ensure(lf.onto == fs.onto && lf.into == fs.into, "factors read off the lattice agree", || json!({}))?;
        ensure(lf.force == fs.force, "forcing read off the lattice agrees", || json!({}))?;
        facts.push(format!("cu: the relations read off the lattice of C_{n} equal the index formulas"));
    }
    Ok(facts)
}

fn mobius(n: usize) -> Check<Vec<String>> {
    let tp = cycle_poset(n)?;
    let mu = tp.poset.mobius();
    let mut zeros = 0usize;
    for (a, row) in mu.iter().enumerate() {
        ensure(row[a] == 1, "mu(a, a) = 1", || json!({"a": tj(&tp.tubings[a])}))?;
        for &b in tp.poset.upper_covers(a) {
            ensure(row[b] == -1, "mu is -1 on covers", || json!({"a": tj(&tp.tubings[a]), "b": tj(&tp.tubings[b])}))?;
        }
        for (b, &v) in row.iter().enumerate() {
            ensure((-1..=1).contains(&v), "mu takes values in {-1, 0, 1}", || {
                json!({"a": tj(&tp.tubings[a]), "b": tj(&tp.tubings[b]), "mu": v})
            })?;
            if v == 0 && tp.poset.le(a, b) {
                zeros += 1;
            }
        }
    }
    Ok(vec![format!(
        "mobius: all values on C_{n} lie in {{-1, 0, 1}} ({zeros} comparable pairs with value 0)"
    )])
}

fn ji_tubing(n: usize, i: usize, k: usize) -> Result<Tubing> {
    tubing_of(&cached_graph(GraphKind::Cycle, n)?, &canonical_ji(n, i, k)?)
}

fn ji(n: usize) -> Check<Vec<String>> {
    let mut facts = Vec::new();
    let expected: Vec<Tubing> = all_indices(n)
        .into_iter()
        .map(|e| ji_tubing(n, e.i, e.k))
        .collect::<Result<_>>()?;
    for e in all_indices(n) {
        let g = canonical_ji(n, e.i, e.k)?;
        ensure(g.validate(Shape::CycleCbt), "j_{i,k} is a cyclic binary tree", || json!([e.i, e.k]))?;
        let s = g.pair_statistics();
        ensure(s.desc.len() == 1, "j_{i,k} has one descent", || json!([e.i, e.k]))?;
        ensure(s.inv == ji_inversions(n, e.i, e.k)?, "inv(J_{i,k}) closed form", || json!([e.i, e.k]))?;
        let m = canonical_mi(n, e.i, e.k)?;
        ensure(m.pair_statistics().coinv == mi_coinversions(n, e.i, e.k)?, "coinv(M_{i,k}) closed form", || {
            json!([e.i, e.k])
        })?;
    }
    let found: HashSet<Tubing> = if n <= 7 {
        let tp = cycle_poset(n)?;
        facts.extend(ji_structure(n, &tp)?);
        tp.poset
            .join_irreducibles()
            .into_iter()
            .map(|j| tp.tubings[j].clone())
            .collect()
    } else {
        // one lower cover each, scanned fiber by fiber without building the poset
        let cat = path_catalog(n);
        let parts: Vec<Vec<Tubing>> = cat
            .tubings
            .par_iter()
            .map(|x| {
                fiber(x).map(|f| {
                    f.into_iter()
                        .map(|(_, t)| t)
                        .filter(|t| t.lower_covers().len() == 1)
                        .collect()
                })
            })
            .collect::<Result<_>>()?;
        parts.into_iter().flatten().collect()
    };
    let want: HashSet<Tubing> = expected.iter().cloned().collect();
    ensure(found.len() == (n - 1) * (n - 1), "there are (n-1)^2 join irreducibles", || {
        json!({"found": found.len(), "expected": (n - 1) * (n - 1)})
    })?;
    if found != want {
        let extra = found.difference(&want).next().or(want.difference(&found).next()).expect("differ");
        return fail("join irreducibles are the trees j_{i,k}", json!({"tubing": tj(extra)}));
    }
    facts.insert(
        0,
        format!(
            "ji: C_{n} has {} join irreducibles, exactly the tubings of j_(i,k); closed forms for inv(J) and coinv(M) hold",
            found.len()
        ),
    );
    Ok(facts)
}

fn ji_structure(n: usize, tp: &TubingPoset) -> Check<Vec<String>> {
    let p = &tp.poset;
    let idx = |i: usize, k: usize| -> Result<usize> {
        tp.index_of(&ji_tubing(n, i, k)?)
            .ok_or_else(|| Error::Precondition(format!("J({i},{k}) not in poset")))
    };
    let at = |i: usize, k: usize| json!([i, k]);
    // chains are saturated; different chains are incomparable
    for a in all_indices(n) {
        let x = idx(a.i, a.k)?;
        if a.k + 1 < n {
            let y = idx(a.i, a.k + 1)?;
            ensure(p.upper_covers(x).contains(&y), "J_{i,k} is covered by J_{i,k+1}", || at(a.i, a.k))?;
        }
        for b in all_indices(n) {
            let y = idx(b.i, b.k)?;
            let expect = a.i == b.i && a.k <= b.k;
            ensure(p.le(x, y) == expect, "join irreducibles form n-1 disjoint chains", || {
                json!({"x": [a.i, a.k], "y": [b.i, b.k]})
            })?;
        }
    }
    let bottom = p.bottom().expect("bounded");
    let atoms: HashSet<usize> = p.upper_covers(bottom).iter().copied().collect();
    let ji_atoms: HashSet<usize> = (1..n).map(|i| idx(i, 1)).collect::<Result<_>>()?;
    ensure(atoms == ji_atoms, "atoms are the J_{i,1}", || json!({}))?;

    // meet irreducibles are the w0 images and the trees of M_{i,k}
    let mi: HashSet<Tubing> = p.meet_irreducibles().into_iter().map(|m| tp.tubings[m].clone()).collect();
    let images: HashSet<Tubing> = p
        .join_irreducibles()
        .into_iter()
        .map(|j| tp.tubings[j].relabel_reverse())
        .collect::<Result<_>>()?;
    ensure(mi == images, "meet irreducibles are the w0 images of join irreducibles", || json!({}))?;
    let graph = cached_graph(GraphKind::Cycle, n)?;
    let mtrees: HashSet<Tubing> = all_indices(n)
        .into_iter()
        .map(|e| tubing_of(&graph, &canonical_mi(n, e.i, e.k)?))
        .collect::<Result<_>>()?;
    ensure(mi == mtrees, "meet irreducibles are the trees of M_{i,k}", || json!({}))?;
    let midx = |i: usize, k: usize| -> Result<usize> {
        tp.index_of(&tubing_of(&graph, &canonical_mi(n, i, k)?)?)
            .ok_or_else(|| Error::Precondition(format!("M({i},{k}) not in poset")))
    };

    let mut facts = vec![format!(
        "ji: each J_(i,1) < ... < J_(i,{}) is saturated, distinct chains are incomparable, atoms are the J_(i,1); meet irreducibles are their w0 images",
        n - 1
    )];
    if n <= 6 {
        let t = tables(tp)?;
        let mut seen = HashSet::new();
        for a in all_indices(n) {
            let j = idx(a.i, a.k)?;
            let brute = p.kappa(&t, j);
            let m = kappa(n, a.i, a.k)?;
            let formula = midx(m.i, m.k)?;
            ensure(brute == Some(formula), "kappa formula equals the brute-force kappa", || {
                json!({"j": [a.i, a.k], "formula": [m.i, m.k], "brute": brute.map(|b| tj(&tp.tubings[b]))})
            })?;
            seen.insert(formula);
        }
        ensure(seen == p.meet_irreducibles().into_iter().collect(), "kappa is a bijection onto Mi", || json!({}))?;
        // order between the chains j_i and m_{c_i(l)}
        for a in all_indices(n) {
            let j = idx(a.i, a.k)?;
            for l in 1..n {
                let c = c_perm(n, a.i, l);
                let threshold = if l > a.k {
                    0
                } else if l <= n - a.i {
                    n - l
                } else {
                    n - a.i
                };
                for h in 1..n {
                    let m = midx(c, h)?;
                    ensure(p.le(j, m) == (h > threshold), "J_{i,k} against the chain m_{c_i(l)}", || {
                        json!({"j": at(a.i, a.k), "m": at(c, h), "l": l})
                    })?;
                }
            }
        }
        facts.push(format!(
            "ji: kappa formula matches the brute-force kappa and is a bijection; J_(i,k) sits below M_(c_i(l),h) exactly above the stated thresholds"
        ));
    }
    Ok(facts)
}

fn selfdual(n: usize) -> Check<Vec<String>> {
    let mut facts = Vec::new();
    for tp in [cycle_poset(n)?, path_poset(n)?] {
        let len = tp.len();
        let image: Vec<usize> = tp
            .tubings
            .iter()
            .map(|t| Ok(tp.index_of(&t.relabel_reverse()?).expect("w0 preserves the graph")))
            .collect::<Result<_>>()?;
        for a in 0..len {
            ensure(image[image[a]] == a, "w0 is an involution", || json!({"a": tj(&tp.tubings[a])}))?;
        }
        each(len, |a| {
            for b in 0..len {
                ensure(tp.poset.le(a, b) == tp.poset.le(image[b], image[a]), "w0 reverses the order", || {
                    json!({"a": tj(&tp.tubings[a]), "b": tj(&tp.tubings[b])})
                })?;
            }
            Ok(())
        })?;
        facts.push(format!(
            "selfdual: w0 is an order-reversing involution on the {len} tubings of {}_{n}",
            if tp.tubings[0].graph().kind() == GraphKind::Cycle { "C" } else { "P" }
        ));
    }
    Ok(facts)
}

fn regular(n: usize) -> Check<Vec<String>> {
    let graph = Graph::cycle(n)?;
    let all = enumerate_maximal_tubings(&graph);
    let expect = binomial(2 * n as u64 - 2, n as u64 - 1);
    ensure(all.len() as u64 == expect, "|MTub(C_n)| = C(2n-2, n-1)", || {
        json!({"found": all.len(), "expected": expect})
    })?;
    let desc_excess = std::sync::atomic::AtomicUsize::new(0);
    each(all.len(), |a| {
        let t = &all[a];
        let flips = t.flips();
        ensure(flips.len() == n - 1, "n-1 flips per tubing", || json!({"t": tj(t)}))?;
        let up = t.upper_covers().len();
        let down = t.lower_covers().len();
        ensure(up + down == n - 1, "every flip is a cover one way", || json!({"t": tj(t)}))?;
        for (removed, res, added) in &flips {
            ensure(res.flip(*added)?.0 == *t, "flip is an involution", || json!({"t": tj(t), "tube": to_vertices(*removed)}))?;
            ensure(&t.flip_brute(*removed)?.0 == res, "flip agrees with brute-force replacement", || {
                json!({"t": tj(t), "tube": to_vertices(*removed)})
            })?;
            ensure(covers(t, res)? || covers(res, t)?, "flips are covers", || json!({"t": tj(t), "tube": to_vertices(*removed)}))?;
        }
        let g = gtree_of(t);
        ensure(g.validate(Shape::CycleCbt), "G-trees are cyclic binary trees", || json!({"t": tj(t)}))?;
        ensure(tubing_of(t.graph_arc(), &g)? == *t, "tubing_of inverts gtree_of", || json!({"t": tj(t)}))?;
        for v in 1..=n {
            if v == g.root() {
                continue;
            }
            let moved = tubing_of(t.graph_arc(), &g.tree_move(v)?)?;
            ensure(moved == t.flip(t.down(v))?.0, "tree moves are flips", || json!({"t": tj(t), "vertex": v}))?;
        }
        let s = g.pair_statistics();
        ensure(s.desc.len() >= g.right_edges(), "descents bound right edges", || json!({"t": tj(t)}))?;
        if s.desc.len() > g.right_edges() {
            desc_excess.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(())
    })?;
    let paths = enumerate_maximal_tubings(&Graph::path(n)?);
    let cat = catalan(n as u64);
    ensure(paths.len() as u64 == cat, "|MTub(P_n)| is Catalan", || json!({"found": paths.len(), "expected": cat}))?;
    for t in &paths {
        let g = gtree_of(t);
        ensure(g.validate(Shape::PathBst), "path G-trees are binary search trees", || json!({"t": tj(t)}))?;
        ensure(tubing_of(t.graph_arc(), &g)? == *t, "tubing_of inverts gtree_of", || json!({"t": tj(t)}))?;
    }
    Ok(vec![format!(
        "regular: the {} tubings of C_{n} each have {} flips, tree moves match flips, descents never fall below right edges; P_{n} has {} binary search trees",
        all.len(),
        n - 1,
        paths.len()
    )])
}

fn pairs(n: usize) -> Check<Vec<String>> {
    let pl: PairsLattice = pairs_lattice(n, Suite::Pairs.cap().max(n))?;
    let expect = binomial(2 * n as u64 - 2, n as u64 - 1);
    ensure(pl.len() as u64 == expect, "Pairs(->) has C(2n-2, n-1) elements", || {
        json!({"found": pl.len(), "expected": expect})
    })?;
    ensure(pl.closed[0] == 0, "the empty set is the least closed set", || json!({}))?;
    let tp = cycle_poset(n)?;
    ensure(pairs_match_poset(&pl, &tp, n)?, "Pairs(->) is isomorphic to the tubing lattice", || json!({}))?;
    Ok(vec![format!(
        "pairs: {} maximal orthogonal pairs, isomorphic to MTub(C_{n}) by join irreducibles below",
        pl.len()
    )])
}
