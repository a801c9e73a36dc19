//! G-trees: the tree posets whose principal down-sets are the tubes of a maximal tubing.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, GraphKind};
use crate::pairs::{PairSet, PairStats};
use crate::tubing::Tubing;

/// Which left/right convention the tree follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// Binary search tree in integer order.
    Path,
    /// Cyclic binary tree: below the root `m` the order is `m+1 < ... < n < 1 < ... < m-1`.
    Cycle,
    /// No left/right structure; tree moves are unavailable.
    General,
}

impl TreeKind {
    pub fn of_graph(kind: GraphKind) -> TreeKind {
        match kind {
            GraphKind::Path => TreeKind::Path,
            GraphKind::Cycle => TreeKind::Cycle,
            _ => TreeKind::General,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    PathBst,
    CycleCbt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GTree {
    n: usize,
    root: usize,
    // parent[root] == 0; parent[0] is unused
    parent: Vec<usize>,
    kind: TreeKind,
    down: Vec<u64>,
}

impl GTree {
    pub fn new(n: usize, root: usize, parent: Vec<usize>, kind: TreeKind) -> Result<Self> {
        if n == 0 || n > crate::graph::MAX_VERTICES {
            return Err(Error::InvalidTree(format!("unsupported size {n}")));
        }
        if parent.len() != n + 1 {
            return Err(Error::InvalidTree("parent table has the wrong length".into()));
        }
        if root == 0 || root > n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if parent[root] != 0 {
            return Err(Error::InvalidTree(format!("root {root} has a parent")));
        }
        for v in 1..=n {
            if v != root && (parent[v] == 0 || parent[v] > n || parent[v] == v) {
                return Err(Error::InvalidTree(format!("vertex {v} has no valid parent")));
            }
        }
        let mut down = vec![0u64; n + 1];
        for v in 1..=n {
            let mut u = v;
            let mut steps = 0;
            loop {
                down[u] |= bit(v);
                if u == root {
                    break;
                }
                u = parent[u];
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree("parent map has a cycle".into()));
                }
            }
        }
        Ok(GTree {
            n,
            root,
            parent,
            kind,
            down,
        })
    }

    /// From a `child -> parent` map covering every non-root vertex.
    pub fn from_parent_map(
        n: usize,
        root: usize,
        map: &BTreeMap<usize, usize>,
        kind: TreeKind,
    ) -> Result<Self> {
        let mut parent = vec![0usize; n + 1];
        for (&c, &p) in map {
            if c == 0 || c > n {
                return Err(Error::VertexOutOfRange { vertex: c, n });
            }
            if c == root {
                return Err(Error::InvalidTree(format!("root {root} has a parent")));
            }
            parent[c] = p;
        }
        if map.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} parent entries, got {}",
                n - 1,
                map.len()
            )));
        }
        Self::new(n, root, parent, kind)
    }

    /// A chain `bottom < ... < top` listed from the top down.
    pub fn chain(n: usize, top_down: &[usize], kind: TreeKind) -> Result<Self> {
        if top_down.len() != n {
            return Err(Error::InvalidTree("chain must list every vertex".into()));
        }
        let mut parent = vec![0usize; n + 1];
        for w in top_down.windows(2) {
            parent[w[1]] = w[0];
        }
        Self::new(n, top_down[0], parent, kind)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: TreeKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            0 => None,
            p => Some(p),
        }
    }

    pub fn parent_map(&self) -> BTreeMap<usize, usize> {
        (1..=self.n)
            .filter(|&v| v != self.root)
            .map(|v| (v, self.parent[v]))
            .collect()
    }

    /// Vertices weakly below `v`.
    pub fn down(&self, v: usize) -> u64 {
        self.down[v]
    }

    /// `x <= y` in the tree order.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.down[y] & bit(x) != 0
    }

    /// Position of `v` in the left-to-right order used by this tree.
    pub fn key(&self, v: usize) -> usize {
        match self.kind {
            TreeKind::Cycle => (v + 2 * self.n - self.root - 1) % self.n,
            _ => v,
        }
    }

    /// Children sorted left to right.
    pub fn children(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=self.n).filter(|&c| self.parent[c] == v).collect();
        out.sort_by_key(|&c| self.key(c));
        out
    }

    fn is_left_of(&self, a: usize, b: usize) -> bool {
        self.key(a) < self.key(b)
    }

    pub fn pair_statistics(&self) -> PairStats {
        let n = self.n;
        let mut s = PairStats {
            inv: PairSet::new(n),
            coinv: PairSet::new(n),
            inc: PairSet::new(n),
            asc: PairSet::new(n),
            desc: PairSet::new(n),
        };
        for i in 1..=n {
            for j in i + 1..=n {
                if self.le(j, i) {
                    s.inv.insert(i, j);
                } else if self.le(i, j) {
                    s.coinv.insert(i, j);
                } else {
                    s.inc.insert(i, j);
                }
                if self.parent[j] == i {
                    s.desc.insert(i, j);
                }
                if self.parent[i] == j {
                    s.asc.insert(i, j);
                }
            }
        }
        s
    }

    /// Inversion set only, without building the other statistics.
    pub fn inversions(&self) -> PairSet {
        let mut inv = PairSet::new(self.n);
        for i in 1..=self.n {
            let mut below = self.down[i] >> i;
            while below != 0 {
                let j = i + 1 + below.trailing_zeros() as usize;
                inv.insert(i, j);
                below &= below - 1;
            }
        }
        inv
    }

    /// Coinversion set only.
    pub fn coinversions(&self) -> PairSet {
        let mut co = PairSet::new(self.n);
        for j in 1..=self.n {
            let mut below = self.down[j] & (bit(j) - 1);
            while below != 0 {
                co.insert(below.trailing_zeros() as usize + 1, j);
                below &= below - 1;
            }
        }
        co
    }

    /// Binary-search condition (relative to `key`) at every vertex except possibly the root.
    fn search_condition(&self, skip_root: bool) -> bool {
        for v in 1..=self.n {
            if skip_root && v == self.root {
                continue;
            }
            let mut left = 0;
            let mut right = 0;
            for c in self.children(v) {
                let side_left = self.is_left_of(c, v);
                if side_left {
                    left += 1;
                } else {
                    right += 1;
                }
                let mut sub = self.down[c];
                while sub != 0 {
                    let u = sub.trailing_zeros() as usize + 1;
                    if self.is_left_of(u, v) != side_left {
                        return false;
                    }
                    sub &= sub - 1;
                }
            }
            if left > 1 || right > 1 {
                return false;
            }
        }
        true
    }

    pub fn validate(&self, shape: Shape) -> bool {
        match shape {
            Shape::PathBst => self.clone().with_kind(TreeKind::Path).search_condition(false),
            Shape::CycleCbt => {
                let t = self.clone().with_kind(TreeKind::Cycle);
                (self.n < 3 || t.children(t.root).len() == 1) && t.search_condition(true)
            }
        }
    }

    /// The tree move on the edge from `x` to its parent.
    pub fn tree_move(&self, x: usize) -> Result<GTree> {
        if x == 0 || x > self.n {
            return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
        }
        let y = self.parent(x).ok_or(Error::RootVertex(x))?;
        let mut parent = self.parent.clone();
        let mut root = self.root;
        match self.kind {
            TreeKind::General => {
                return Err(Error::InvalidTree(
                    "tree moves need a path or cycle tree".into(),
                ))
            }
            TreeKind::Cycle if y == self.root => {
                // x and the root trade places; both subtrees of x hang from the old root
                for c in self.children(x) {
                    parent[c] = y;
                }
                parent[y] = x;
                parent[x] = 0;
                root = x;
            }
            _ => {
                let toward_y = self.is_left_of(x, y);
                let inner = self
                    .children(x)
                    .into_iter()
                    .find(|&c| self.is_left_of(x, c) == toward_y);
                parent[x] = self.parent[y];
                parent[y] = x;
                if let Some(c) = inner {
                    parent[c] = y;
                }
                if y == self.root {
                    root = x;
                }
            }
        }
        GTree::new(self.n, root, parent, self.kind)
    }

    /// Left and right zippers `(a_1 = 1, ..., a_l)` and `(b_1 = n, ..., b_r)` of a path tree.
    pub fn zippers(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        if !self.validate(Shape::PathBst) {
            return Err(Error::InvalidTree("not a binary search tree".into()));
        }
        let climb = |start: usize| {
            let mut out = Vec::new();
            let mut v = start;
            while v != self.root {
                out.push(v);
                v = self.parent[v];
            }
            out
        };
        Ok((climb(1), climb(self.n)))
    }

    /// Number of edges whose child sits to the right of its parent; the top edge of a cycle
    /// tree is not counted.
    pub fn right_edges(&self) -> usize {
        (1..=self.n)
            .filter(|&v| v != self.root)
            .filter(|&v| !(self.kind == TreeKind::Cycle && self.parent[v] == self.root))
            .filter(|&v| self.is_left_of(self.parent[v], v))
            .count()
    }

    /// Image under `i -> n + 1 - i`.
    pub fn relabel_reverse(&self) -> GTree {
        let n = self.n;
        let mut parent = vec![0usize; n + 1];
        for v in 1..=n {
            if self.parent[v] != 0 {
                parent[n + 1 - v] = n + 1 - self.parent[v];
            }
        }
        GTree::new(n, n + 1 - self.root, parent, self.kind).expect("relabelling keeps validity")
    }

    /// DOT text: one node per vertex, edges child to parent, root doubly circled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gtree {\n  node [shape=circle];\n");
        let _ = writeln!(s, "  {} [shape=doublecircle];", self.root);
        for v in 1..=self.n {
            if v != self.root {
                let _ = writeln!(s, "  {v};");
            }
        }
        for v in 1..=self.n {
            if v != self.root {
                let _ = writeln!(s, "  {} -> {};", v, self.parent[v]);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The G-tree of a maximal tubing: `x <= y` iff `x` lies in `down(y)`.
pub fn gtree_of(t: &Tubing) -> GTree {
    let n = t.n();
    let mut parent = vec![0usize; n + 1];
    for v in 1..=n {
        parent[v] = t.parent_vertex(v).unwrap_or(0);
    }
    GTree {
        n,
        root: t.root(),
        parent,
        kind: TreeKind::of_graph(t.graph().kind()),
        down: t.downs().to_vec(),
    }
}

/// The tubing of principal down-sets; fails if some down-set is not a tube of `graph`.
pub fn tubing_of(graph: &Arc<Graph>, g: &GTree) -> Result<Tubing> {
    if graph.n() != g.n {
        return Err(Error::SizeMismatch(graph.n(), g.n));
    }
    Tubing::new(graph.clone(), g.down[1..].to_vec()).map_err(|e| match e {
        Error::NotATube(v) => Error::NotATube(v),
        other => Error::InvalidTree(other.to_string()),
    })
}
