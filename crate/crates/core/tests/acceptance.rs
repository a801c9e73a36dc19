//! One line per acceptance criterion; exits nonzero if any fails.
//!
//! Set `TUBELAT_ACCEPT_SD6=1` to extend the semidistributivity sweep to n = 6.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::time::Instant;

use tubelat::cycle_lattice::{cached_graph, cut, fiber, leq_cycle, sew, word_of, ShuffleWord, Zippers};
use tubelat::forcing::{pairs_lattice, pairs_match_poset};
use tubelat::irreducibles::{all_indices, canonical_ji, canonical_mi, kappa};
use tubelat::json::{gtree_from_json, gtree_to_json, parse, tubing_to_json};
use tubelat::poset::cached_poset;
use tubelat::tubing::enumerate_maximal_tubings;
use tubelat::verify::{self, binomial, catalan, Suite};
use tubelat::{covers, gtree_of, tubing_of, Graph, GraphKind, TreeKind, Tubing};

type Outcome = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn suite(s: Suite, ns: impl IntoIterator<Item = usize>) -> Outcome {
    let mut last = String::new();
    for n in ns {
        match verify::run(s, n, true).map_err(err)? {
            Ok(r) => last = r.facts.join("; "),
            Err(v) => return Err(serde_json::to_string(&v).map_err(err)?),
        }
    }
    Ok(last)
}

fn counting() -> Outcome {
    let mut cyc = Vec::new();
    for n in 3..=8 {
        let got = enumerate_maximal_tubings(&Graph::cycle(n).map_err(err)?).len() as u64;
        let want = binomial(2 * n as u64 - 2, n as u64 - 1);
        if got != want {
            return Err(format!("C_{n}: {got} tubings, expected {want}"));
        }
        cyc.push(got.to_string());
    }
    let mut path = Vec::new();
    for n in 1..=10 {
        let got = enumerate_maximal_tubings(&Graph::path(n).map_err(err)?).len() as u64;
        if got != catalan(n as u64) {
            return Err(format!("P_{n}: {got} tubings, expected {}", catalan(n as u64)));
        }
        path.push(got.to_string());
    }
    Ok(format!("C_3..C_8: {}; P_1..P_10: {}", cyc.join(", "), path.join(", ")))
}

fn fibers() -> Outcome {
    for n in 3..=7 {
        let graph = Graph::path(n).map_err(err)?;
        let mut total = 0u64;
        for x in enumerate_maximal_tubings(&graph) {
            let z = Zippers::of(&x).map_err(err)?;
            let f = fiber(&x).map_err(err)?;
            let (l, r) = (z.left.len() as u64, z.right.len() as u64);
            if f.len() as u64 != binomial(l + r, l) {
                return Err(format!("fiber of {x} has {} elements", f.len()));
            }
            if n <= 6 {
                for (w, t) in &f {
                    if cut(t).map_err(err)? != x {
                        return Err(format!("cut(sew({x}, {w})) differs from the base"));
                    }
                }
            }
            total += f.len() as u64;
        }
        if total != binomial(2 * n as u64 - 2, n as u64 - 1) {
            return Err(format!("fibers over P_{n} sum to {total}"));
        }
    }
    let base = read_tree("c9_cut.json", TreeKind::Path)?;
    let base = tubing_of(&cached_graph(GraphKind::Path, 9).map_err(err)?, &base).map_err(err)?;
    let words: Vec<String> = fiber(&base).map_err(err)?.iter().map(|(w, _)| w.compact()).collect();
    let want = ["1397", "1937", "1973", "9137", "9173", "9713"];
    if words != want {
        return Err(format!("fiber words {words:?}"));
    }
    Ok("fiber sizes binomial and summing to C(2n-2,n-1) for n = 3..7; cut(sew) = id for n <= 6; the C_9 fiber has words 1397 1937 1973 9137 9173 9713".into())
}

fn kappa_check() -> Outcome {
    for n in 4..=5 {
        let tp = cached_poset(&Graph::cycle(n).map_err(err)?).map_err(err)?;
        let t = tp.poset.tables().map_err(|f| format!("{f:?}"))?;
        let graph = cached_graph(GraphKind::Cycle, n).map_err(err)?;
        let mut images = BTreeSet::new();
        for e in all_indices(n) {
            let j = tp
                .index_of(&tubing_of(&graph, &canonical_ji(n, e.i, e.k).map_err(err)?).map_err(err)?)
                .ok_or("missing join irreducible")?;
            let m = kappa(n, e.i, e.k).map_err(err)?;
            let mt = tubing_of(&graph, &canonical_mi(n, m.i, m.k).map_err(err)?).map_err(err)?;
            let formula = tp.index_of(&mt).ok_or("missing meet irreducible")?;
            if tp.poset.kappa(&t, j) != Some(formula) {
                return Err(format!("n = {n}: kappa({e}) disagrees with {m}"));
            }
            images.insert(formula);
        }
        let mi: BTreeSet<usize> = tp.poset.meet_irreducibles().into_iter().collect();
        if images != mi {
            return Err(format!("n = {n}: kappa is not a bijection onto the meet irreducibles"));
        }
    }
    Ok("formula equals brute-force max{L : L meet J = J_*} and is a bijection Ji -> Mi for n = 4, 5".into())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn read_fixture(name: &str) -> Result<String, String> {
    std::fs::read_to_string(fixture(name)).map_err(|e| format!("{name}: {e}"))
}

fn read_tree(name: &str, kind: TreeKind) -> Result<tubelat::GTree, String> {
    gtree_from_json(&parse(&read_fixture(name)?).map_err(err)?, kind).map_err(err)
}

fn cycle_tubing(name: &str) -> Result<Tubing, String> {
    let g = read_tree(name, TreeKind::Cycle)?;
    tubing_of(&cached_graph(GraphKind::Cycle, g.n()).map_err(err)?, &g).map_err(err)
}

fn worked_examples() -> Outcome {
    // comparabilities on C_8
    let (j, k, l) = (cycle_tubing("c8_order_j.json")?, cycle_tubing("c8_order_k.json")?, cycle_tubing("c8_order_l.json")?);
    let expected = parse(&read_fixture("c8_order_expected.json")?).map_err(err)?;
    let cmp = |a: &Tubing, b: &Tubing| -> Result<serde_json::Value, String> {
        Ok(serde_json::json!({"leq": leq_cycle(a, b).map_err(err)?, "geq": leq_cycle(b, a).map_err(err)?}))
    };
    for (key, a, b) in [("k_vs_j", &k, &j), ("l_vs_j", &l, &j), ("l_vs_k", &l, &k)] {
        if cmp(a, b)?.to_string() != expected[key].to_string() {
            return Err(format!("{key}: got {}", cmp(a, b)?));
        }
    }
    let inv_k: Vec<[usize; 2]> = gtree_of(&k).inversions().to_vec().into_iter().map(|(a, b)| [a, b]).collect();
    if serde_json::json!(inv_k).to_string() != expected["inv_k"].to_string() {
        return Err(format!("inv(K) = {inv_k:?}"));
    }

    // all binary search trees on [3] and their tubings
    let p3 = cached_graph(GraphKind::Path, 3).map_err(err)?;
    let mut seen = HashSet::new();
    for row in read_fixture("p3_catalog.jsonl")?.lines() {
        let v = parse(row).map_err(err)?;
        let g = gtree_from_json(&v["tree"], TreeKind::Path).map_err(err)?;
        let t = tubing_of(&p3, &g).map_err(err)?;
        if tubing_to_json(&t).to_string() != v["tubing"].to_string() {
            return Err(format!("tree {} gives {}", v["tree"], tubing_to_json(&t)));
        }
        if gtree_to_json(&gtree_of(&t)).to_string() != v["tree"].to_string() {
            return Err(format!("tubing {} gives a different tree", v["tubing"]));
        }
        seen.insert(t);
    }
    let all: HashSet<Tubing> = enumerate_maximal_tubings(&p3).into_iter().collect();
    if seen != all {
        return Err("the P_3 catalog is not MTub(P_3)".into());
    }

    // all twenty cyclic binary trees on [4]
    let listed: BTreeSet<String> = read_fixture("c4_catalog.jsonl")?.lines().map(str::to_string).collect();
    let c4 = cached_graph(GraphKind::Cycle, 4).map_err(err)?;
    let computed: BTreeSet<String> = enumerate_maximal_tubings(&c4)
        .iter()
        .map(|t| gtree_to_json(&gtree_of(t)).to_string())
        .collect();
    if listed.len() != 20 || listed != computed {
        return Err(format!("C_4 catalog: {} listed, {} computed", listed.len(), computed.len()));
    }

    // cut and sew on C_9
    let j9 = cycle_tubing("c9_j.json")?;
    let cut_text = read_fixture("c9_cut.json")?;
    let c = cut(&j9).map_err(err)?;
    if gtree_to_json(&gtree_of(&c)).to_string() != cut_text.trim() {
        return Err(format!("cut(J) = {}", gtree_to_json(&gtree_of(&c))));
    }
    let fib = parse(&read_fixture("c9_fiber.json")?).map_err(err)?;
    let w = ShuffleWord::parse(fib["sew_word"].as_str().ok_or("sew_word")?).map_err(err)?;
    let sewn = sew(&c, &w).map_err(err)?;
    if gtree_to_json(&gtree_of(&sewn)).to_string() != read_fixture("c9_j.json")?.trim() || word_of(&j9).map_err(err)? != w {
        return Err("sew(cut(J), 9137) differs from J".into());
    }

    // tree moves on C_5
    let mv = parse(&read_fixture("c5_moves.json")?).map_err(err)?;
    let base = gtree_from_json(&mv["base"], TreeKind::Cycle).map_err(err)?;
    let c5 = cached_graph(GraphKind::Cycle, 5).map_err(err)?;
    let bt = tubing_of(&c5, &base).map_err(err)?;
    for m in mv["moves"].as_array().ok_or("moves")? {
        let v = m["vertex"].as_u64().ok_or("vertex")? as usize;
        let moved = base.tree_move(v).map_err(err)?;
        if gtree_to_json(&moved).to_string() != m["result"].to_string() {
            return Err(format!("move at {v} gives {}", gtree_to_json(&moved)));
        }
        let mt = tubing_of(&c5, &moved).map_err(err)?;
        let below = covers(&mt, &bt).map_err(err)?;
        let above = covers(&bt, &mt).map_err(err)?;
        let rel = if below { "below" } else if above { "above" } else { "neither" };
        if rel != m["relation"] {
            return Err(format!("move at {v} lands {rel}"));
        }
    }
    Ok("C_8 comparabilities and inv(K), the P_3 and C_4 catalogs, the C_9 cut/sew round trip and the C_5 tree moves match the fixtures byte for byte".into())
}

fn pairs_check() -> Outcome {
    let mut sizes = Vec::new();
    for n in 3..=5 {
        let pl = pairs_lattice(n, 5).map_err(err)?;
        let tp = cached_poset(&Graph::cycle(n).map_err(err)?).map_err(err)?;
        if pl.len() as u64 != binomial(2 * n as u64 - 2, n as u64 - 1) {
            return Err(format!("n = {n}: {} pairs", pl.len()));
        }
        if !pairs_match_poset(&pl, &tp, n).map_err(err)? {
            return Err(format!("n = {n}: no isomorphism through join irreducibles"));
        }
        sizes.push(pl.len().to_string());
    }
    Ok(format!("Pairs(->) has {} elements for n = 3, 4, 5 and is isomorphic to MTub(C_n)", sizes.join(", ")))
}

fn main() {
    let sd_max = if std::env::var("TUBELAT_ACCEPT_SD6").is_ok_and(|v| v == "1") { 6 } else { 5 };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("counting", Box::new(counting)),
        ("order theorem, n = 3..6", Box::new(|| suite(Suite::Order, 3..=6))),
        ("lattice and constructive join/meet, n = 3..6", Box::new(|| suite(Suite::Lattice, 3..=6))),
        ("cut is a lattice quotient, n = 3..6", Box::new(|| suite(Suite::Quotient, 3..=6))),
        ("fibers", Box::new(fibers)),
        ("join irreducibles, n = 3..7", Box::new(|| suite(Suite::Ji, 3..=7))),
        ("kappa", Box::new(kappa_check)),
        ("semidistributivity", Box::new(move || suite(Suite::Sdl, 3..=sd_max))),
        ("congruence uniformity, n = 3..10", Box::new(|| suite(Suite::Cu, 3..=10))),
        ("Mobius values, n = 3..6", Box::new(|| suite(Suite::Mobius, 3..=6))),
        (
            "self-duality and regularity, n = 3..7",
            Box::new(|| {
                let a = suite(Suite::Selfdual, 3..=7)?;
                let b = suite(Suite::Regular, 3..=7)?;
                Ok(format!("{a}; {b}"))
            }),
        ),
        ("Pairs(->) reconstruction", Box::new(pairs_check)),
        ("worked examples from fixtures", Box::new(worked_examples)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
