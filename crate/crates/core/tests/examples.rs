//! Worked examples for each operation, small enough to check by hand.

use std::collections::BTreeMap;
use std::sync::Arc;

use tubelat::cycle_lattice::{
    cached_graph, cut, fiber, join_cycle, join_path, leq_cycle, leq_path, lift, meet_path, sew,
    shuffle_join, ShuffleWord, Zippers,
};
use tubelat::forcing::{check_congruence_uniform, forcing_system, pairs_lattice, Relation};
use tubelat::graph::from_vertices;
use tubelat::irreducibles::{c_perm, canonical_ji, ji_inversions, kappa, MiIndex};
use tubelat::poset::{build_poset, FinitePoset};
use tubelat::{
    covers, enumerate_maximal_tubings, gtree_of, is_maximal_tubing, tubing_of, GTree, Graph,
    GraphKind, Shape, TreeKind, Tubing,
};

fn set(n: usize, vs: &[usize]) -> u64 {
    from_vertices(n, vs).unwrap()
}

fn tubing(kind: GraphKind, n: usize, lists: &[&[usize]]) -> Tubing {
    let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
    Tubing::from_lists(cached_graph(kind, n).unwrap(), &lists).unwrap()
}

fn tree(n: usize, root: usize, edges: &[(usize, usize)], kind: TreeKind) -> GTree {
    let map: BTreeMap<usize, usize> = edges.iter().copied().collect();
    GTree::from_parent_map(n, root, &map, kind).unwrap()
}

// a tubing of C_9 and its cut, as child -> parent edges
const J_EDGES: [(usize, usize); 8] = [(7, 5), (6, 7), (3, 7), (4, 3), (1, 3), (2, 1), (9, 1), (8, 9)];
const CUT_EDGES: [(usize, usize); 8] = [(3, 5), (7, 5), (1, 3), (4, 3), (2, 1), (6, 7), (9, 7), (8, 9)];

fn c9_example() -> (Tubing, Tubing) {
    let g = cached_graph(GraphKind::Cycle, 9).unwrap();
    let p = cached_graph(GraphKind::Path, 9).unwrap();
    let j = tubing_of(&g, &tree(9, 5, &J_EDGES, TreeKind::Cycle)).unwrap();
    let x = tubing_of(&p, &tree(9, 5, &CUT_EDGES, TreeKind::Path)).unwrap();
    (j, x)
}

#[test]
fn graphs_have_the_expected_edges() {
    assert_eq!(Graph::path(3).unwrap().edges(), vec![(1, 2), (2, 3)]);
    assert_eq!(Graph::cycle(4).unwrap().edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
    assert_eq!(Graph::complete(3).unwrap().edges(), vec![(1, 2), (1, 3), (2, 3)]);
    assert!(Graph::cycle(2).is_err());
    assert!(Graph::path(0).is_err());
}

#[test]
fn tubes_and_compatibility() {
    let c9 = Graph::cycle(9).unwrap();
    let p4 = Graph::path(4).unwrap();
    let p3 = Graph::path(3).unwrap();
    assert!(c9.is_tube(set(9, &[1, 2, 8, 9])).unwrap());
    assert!(!p4.is_tube(set(4, &[1, 3])).unwrap());
    assert!(Graph::cycle(4).unwrap().is_tube(set(4, &[1, 2, 3, 4])).unwrap());
    assert!(p4.is_tube(0).is_err());

    assert!(p3.compatible(set(3, &[1]), set(3, &[3])).unwrap());
    assert!(p3.compatible(set(3, &[2]), set(3, &[2, 3])).unwrap());
    assert!(!p3.compatible(set(3, &[2]), set(3, &[3])).unwrap());
    assert!(p3.compatible(set(3, &[1, 3]), set(3, &[2])).is_err());
}

#[test]
fn maximal_tubings() {
    let p3 = Graph::path(3).unwrap();
    let c4 = Graph::cycle(4).unwrap();
    assert!(is_maximal_tubing(&p3, &[set(3, &[3]), set(3, &[2, 3]), set(3, &[1, 2, 3])]).unwrap());
    assert!(!is_maximal_tubing(&p3, &[set(3, &[2, 3]), set(3, &[1, 2, 3])]).unwrap());
    let t = [set(4, &[3]), set(4, &[2, 3]), set(4, &[1, 2, 3]), set(4, &[1, 2, 3, 4])];
    assert!(is_maximal_tubing(&c4, &t).unwrap());
}

#[test]
fn tops() {
    let t = tubing(GraphKind::Path, 3, &[&[3], &[2, 3], &[1, 2, 3]]);
    assert_eq!(t.top(set(3, &[2, 3])).unwrap(), 2);
    let min = Tubing::minimum(cached_graph(GraphKind::Cycle, 4).unwrap());
    assert_eq!(min.top(set(4, &[1, 2, 3, 4])).unwrap(), 4);
    let (j, _) = c9_example();
    assert_eq!(j.top(set(9, &[1, 2, 8, 9])).unwrap(), 1);
    assert!(j.top(set(9, &[2, 3])).is_err());
}

#[test]
fn flips() {
    let t = tubing(GraphKind::Path, 3, &[&[3], &[2, 3], &[1, 2, 3]]);
    let (s, added) = t.flip(set(3, &[3])).unwrap();
    assert_eq!(added, set(3, &[2]));
    assert_eq!(s.flip(added).unwrap().0, t);

    let c = tubing(GraphKind::Cycle, 4, &[&[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4]]);
    let (d, added) = c.flip(set(4, &[1, 2, 3])).unwrap();
    assert_eq!(added, set(4, &[1, 2, 4]));
    assert!(covers(&c, &d).unwrap());
    assert!(!covers(&c, &c).unwrap());
    assert!(c.flip(set(4, &[1, 2, 3, 4])).is_err());
    assert!(c.flip(set(4, &[2])).is_err());

    let g = cached_graph(GraphKind::Cycle, 4).unwrap();
    assert!(!covers(&Tubing::minimum(g.clone()), &Tubing::maximum(g)).unwrap());
}

#[test]
fn reversal() {
    for n in 3..=6 {
        let g = cached_graph(GraphKind::Cycle, n).unwrap();
        let min = Tubing::minimum(g.clone());
        assert_eq!(min.relabel_reverse().unwrap(), Tubing::maximum(g));
        assert_eq!(min.relabel_reverse().unwrap().relabel_reverse().unwrap(), min);
    }
    let star = Arc::new(Graph::custom(3, &[(1, 2), (1, 3)]).unwrap());
    let t = Tubing::minimum(star);
    // 1 is the centre, so reversal does not preserve the graph
    assert!(t.relabel_reverse().is_err());
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_maximal_tubings(&Graph::path(3).unwrap()).len(), 5);
    assert_eq!(enumerate_maximal_tubings(&Graph::cycle(4).unwrap()).len(), 20);
    assert_eq!(enumerate_maximal_tubings(&Graph::complete(3).unwrap()).len(), 6);
}

#[test]
fn trees_of_tubings() {
    let p3 = cached_graph(GraphKind::Path, 3).unwrap();
    let t = tubing(GraphKind::Path, 3, &[&[3], &[2, 3], &[1, 2, 3]]);
    assert_eq!(gtree_of(&t), GTree::chain(3, &[1, 2, 3], TreeKind::Path).unwrap());

    let c = tubing(GraphKind::Cycle, 4, &[&[3], &[2, 3], &[1, 2, 3], &[1, 2, 3, 4]]);
    assert_eq!(gtree_of(&c), GTree::chain(4, &[4, 1, 2, 3], TreeKind::Cycle).unwrap());

    let (j, _) = c9_example();
    assert_eq!(gtree_of(&j), tree(9, 5, &J_EDGES, TreeKind::Cycle));

    let c4 = cached_graph(GraphKind::Cycle, 4).unwrap();
    let chain = GTree::chain(4, &[4, 3, 2, 1], TreeKind::Cycle).unwrap();
    assert_eq!(tubing_of(&c4, &chain).unwrap(), Tubing::minimum(c4.clone()));
    let vee = tree(3, 2, &[(1, 2), (3, 2)], TreeKind::Path);
    assert_eq!(tubing_of(&p3, &vee).unwrap(), tubing(GraphKind::Path, 3, &[&[1], &[3], &[1, 2, 3]]));
}

#[test]
fn pair_statistics() {
    let chain = GTree::chain(6, &[6, 5, 4, 3, 2, 1], TreeKind::Path).unwrap();
    let s = chain.pair_statistics();
    assert!(s.inv.is_empty() && s.inc.is_empty());

    let k = tree(8, 5, &[(7, 5), (6, 7), (8, 7), (4, 8), (3, 4), (2, 3), (1, 2)], TreeKind::Cycle);
    assert_eq!(k.pair_statistics().inv.to_vec(), vec![(5, 6), (5, 7), (5, 8), (7, 8)]);

    assert_eq!(canonical_ji(7, 3, 1).unwrap().pair_statistics().inv.to_vec(), vec![(3, 4)]);
}

#[test]
fn validation() {
    for n in 3..=6 {
        let chain: Vec<usize> = (1..=n).rev().collect();
        assert!(GTree::chain(n, &chain, TreeKind::Path).unwrap().validate(Shape::PathBst));
        assert!(GTree::chain(n, &chain, TreeKind::Cycle).unwrap().validate(Shape::CycleCbt));
    }
    let good = tree(4, 4, &[(2, 4), (1, 2), (3, 2)], TreeKind::Cycle);
    assert!(good.validate(Shape::CycleCbt));
    // 2 and 3 both follow 1, so they cannot both hang directly below it
    let wide = tree(4, 4, &[(1, 4), (2, 1), (3, 1)], TreeKind::Cycle);
    assert!(!wide.validate(Shape::CycleCbt));
    let lopsided = tree(4, 4, &[(1, 4), (3, 1), (2, 3)], TreeKind::Cycle);
    assert!(lopsided.validate(Shape::CycleCbt));
    // 3 follows 2 in the cyclic order from 4, so it cannot hang below 1 < 2
    let crossed = tree(4, 4, &[(2, 4), (1, 2), (3, 1)], TreeKind::Cycle);
    assert!(!crossed.validate(Shape::CycleCbt));
}

#[test]
fn tree_moves() {
    let base = tree(5, 3, &[(5, 3), (4, 5), (2, 5), (1, 2)], TreeKind::Cycle);
    let below = base.tree_move(5).unwrap();
    assert_eq!(below, tree(5, 5, &[(3, 5), (2, 3), (4, 3), (1, 2)], TreeKind::Cycle));
    let above = base.tree_move(2).unwrap();
    assert_eq!(above, tree(5, 3, &[(2, 3), (5, 2), (4, 5), (1, 5)], TreeKind::Cycle));
    assert_eq!(below.tree_move(3).unwrap(), base);
    assert_eq!(above.tree_move(5).unwrap(), base);
    assert!(base.tree_move(3).is_err());
}

#[test]
fn zipper_examples() {
    let (_, x) = c9_example();
    assert_eq!(gtree_of(&x).zippers().unwrap(), (vec![1, 3], vec![9, 7]));
    let chain = GTree::chain(5, &[5, 4, 3, 2, 1], TreeKind::Path).unwrap();
    assert_eq!(chain.zippers().unwrap(), (vec![1, 2, 3, 4], vec![]));
    let rev = GTree::chain(5, &[1, 2, 3, 4, 5], TreeKind::Path).unwrap();
    assert_eq!(rev.zippers().unwrap(), (vec![], vec![5, 4, 3, 2]));
}

#[test]
fn c8_order_order() {
    let g = cached_graph(GraphKind::Cycle, 8).unwrap();
    let k = tree(8, 5, &[(7, 5), (6, 7), (8, 7), (4, 8), (3, 4), (2, 3), (1, 2)], TreeKind::Cycle);
    let k = tubing_of(&g, &k).unwrap();
    assert!(leq_cycle(&k, &k).unwrap());
    let min = Tubing::minimum(g);
    assert!(leq_cycle(&min, &k).unwrap());
}

#[test]
fn path_order_examples() {
    let a = tubing(GraphKind::Path, 3, &[&[3], &[2, 3], &[1, 2, 3]]);
    let b = tubing(GraphKind::Path, 3, &[&[2], &[2, 3], &[1, 2, 3]]);
    // exchanging {3} for {2} lowers the top from 3 to 2, so b sits below a
    assert!(leq_path(&b, &a).unwrap());
    assert!(!leq_path(&a, &b).unwrap());
    assert!(covers(&b, &a).unwrap());
    let min = Tubing::minimum(cached_graph(GraphKind::Path, 3).unwrap());
    for t in enumerate_maximal_tubings(&Graph::path(3).unwrap()) {
        assert!(leq_path(&min, &t).unwrap());
        assert_eq!(join_path(&min, &t).unwrap(), t);
        assert_eq!(meet_path(&min, &t).unwrap(), min);
    }
}

#[test]
fn cut_sew_and_fiber() {
    let (j, x) = c9_example();
    assert_eq!(cut(&j).unwrap(), x);
    assert_eq!(sew(&x, &ShuffleWord::parse("9137").unwrap()).unwrap(), j);
    let words: Vec<String> = fiber(&x).unwrap().iter().map(|(w, _)| w.compact()).collect();
    assert_eq!(words, ["1397", "1937", "1973", "9137", "9173", "9713"]);
    assert!(sew(&x, &ShuffleWord::parse("3197").unwrap()).is_err());

    let join = |a: &str, b: &str| {
        let (a, b) = (ShuffleWord::parse(a).unwrap(), ShuffleWord::parse(b).unwrap());
        shuffle_join(&x, &a, &b).unwrap().compact()
    };
    assert_eq!(join("1937", "9137"), "9137");
    assert_eq!(join("1973", "9137"), "9173");
    assert_eq!(join("1397", "1397"), "1397");

    for n in 3..=6 {
        let c = cached_graph(GraphKind::Cycle, n).unwrap();
        let p = cached_graph(GraphKind::Path, n).unwrap();
        assert_eq!(cut(&Tubing::minimum(c)).unwrap(), Tubing::minimum(p));
    }

    let z = Zippers::of(&x).unwrap();
    assert_eq!((z.left.clone(), z.right.clone()), (vec![1, 3], vec![9, 7]));
}

#[test]
fn lift_and_join_identities() {
    let (j, x) = c9_example();
    assert_eq!(lift(&j, &x).unwrap(), j);
    let g = j.graph_arc().clone();
    let min = Tubing::minimum(g);
    assert_eq!(join_cycle(&min, &j).unwrap(), j);
    assert_eq!(join_cycle(&j, &j).unwrap(), j);
    // the precondition cut(j) <= x fails against the minimum path tubing
    let pmin = Tubing::minimum(cached_graph(GraphKind::Path, 9).unwrap());
    assert!(lift(&j, &pmin).is_err());
}

#[test]
fn small_posets() {
    let c4 = build_poset(&Graph::cycle(4).unwrap()).unwrap();
    assert_eq!(c4.len(), 20);
    for a in 0..20 {
        let p = &c4.poset;
        assert_eq!(p.upper_covers(a).len() + p.lower_covers(a).len(), 3);
    }
    let p3 = build_poset(&Graph::path(3).unwrap()).unwrap();
    assert_eq!(p3.poset.cover_pairs().len(), 5);
    let c3 = build_poset(&Graph::cycle(3).unwrap()).unwrap();
    assert_eq!(c3.poset.cover_pairs().len(), 6);
    assert_eq!(c3.poset.join_irreducibles().len(), 4);
}

#[test]
fn mobius_small_values() {
    let p = build_poset(&Graph::cycle(4).unwrap()).unwrap().poset;
    let mu = p.mobius();
    for a in 0..p.len() {
        assert_eq!(mu[a][a], 1);
        for &b in p.upper_covers(a) {
            assert_eq!(mu[a][b], -1);
        }
    }
}

#[test]
fn semidistributive_examples() {
    let labels = |k: usize| (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
    let diamond =
        FinitePoset::from_covers(labels(5), &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
    assert!(diamond.check_semidistributive().unwrap().is_some());
    let square = FinitePoset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    assert!(square.check_semidistributive().unwrap().is_none());
    let c4 = build_poset(&Graph::cycle(4).unwrap()).unwrap().poset;
    assert!(c4.check_semidistributive().unwrap().is_none());
}

#[test]
fn irreducible_examples() {
    let j31 = tree(7, 7, &[(6, 7), (5, 6), (3, 5), (2, 3), (4, 3), (1, 2)], TreeKind::Cycle);
    assert_eq!(canonical_ji(7, 3, 1).unwrap(), j31);
    for n in 3..=8 {
        for i in 1..n {
            for k in 1..n {
                let inv = canonical_ji(n, i, k).unwrap().pair_statistics().inv;
                assert_eq!(inv, ji_inversions(n, i, k).unwrap());
            }
        }
    }
    assert!(canonical_ji(5, 0, 1).is_err());
    assert!(canonical_ji(5, 1, 5).is_err());

    assert_eq!(kappa(5, 1, 1).unwrap(), MiIndex { i: 4, k: 4 });
    assert_eq!(kappa(5, 4, 4).unwrap(), MiIndex { i: 4, k: 1 });
    let c2: Vec<usize> = (1..=4).map(|k| c_perm(5, 2, k)).collect();
    assert_eq!(c2, [3, 2, 1, 4]);
}

#[test]
fn forcing_examples() {
    let fs = forcing_system(3).unwrap();
    let name = |x: usize| (fs.elements[x].i, fs.elements[x].k);
    let mut into: Vec<_> = fs.into.strict_pairs().into_iter().map(|(a, b)| (name(a), name(b))).collect();
    into.sort();
    assert_eq!(into, [((1, 1), (2, 2)), ((2, 1), (1, 2))]);
    assert_eq!(fs.to.strict_pairs().len(), 6);

    let fs5 = forcing_system(5).unwrap();
    let chain = [(4, 1), (3, 2), (2, 3), (1, 4)];
    for w in chain.windows(2) {
        assert!(fs5.into.contains(fs5.index(w[0].0, w[0].1), fs5.index(w[1].0, w[1].1)));
    }

    for n in 3..=10 {
        assert!(check_congruence_uniform(n).unwrap());
    }
    let mut cyclic = Relation::empty(3);
    cyclic.insert(0, 1);
    cyclic.insert(1, 2);
    cyclic.insert(2, 0);
    assert!(cyclic.find_cycle().is_some());
}

#[test]
fn pairs_examples() {
    let pl = pairs_lattice(3, 6).unwrap();
    assert_eq!(pl.len(), 6);
    assert_eq!(pl.closed[0], 0);
    assert_eq!(pairs_lattice(4, 6).unwrap().len(), 20);
    assert!(pairs_lattice(7, 6).is_err());
}
