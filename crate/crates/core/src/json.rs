//! JSON forms of tubings and G-trees.
//!
//! Tubing: `{"graph": {"kind": "cycle", "n": 4}, "tubes": [[3], [2, 3], [1, 2, 3], [1, 2, 3, 4]]}`,
//! with `"edges"` added for custom graphs. Output lists tubes by size, ties broken
//! lexicographically, so the same tubing always serializes to the same bytes.
//!
//! G-tree: `{"n": 9, "root": 5, "parent": {"7": 5, ...}, "kind": "cycle"}`; `"kind"` is optional
//! on input.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cycle_lattice::cached_graph;
use crate::error::{Error, Result};
use crate::graph::{cmp_sets, to_vertices, Graph, GraphKind};
use crate::gtree::{tubing_of, GTree, TreeKind};
use crate::tubing::Tubing;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("`{what}` must be a non-negative integer")))
}

pub fn graph_to_json(g: &Graph) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(g.kind().name()));
    m.insert("n".into(), json!(g.n()));
    if g.kind() == GraphKind::Custom {
        m.insert(
            "edges".into(),
            Value::Array(g.edges().iter().map(|&(a, b)| json!([a, b])).collect()),
        );
    }
    Value::Object(m)
}

pub fn graph_from_json(v: &Value) -> Result<Arc<Graph>> {
    let kind: GraphKind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("graph needs a `kind` string"))?
        .parse()?;
    let n = as_usize(v.get("n").ok_or_else(|| parse_err("graph needs `n`"))?, "n")?;
    if kind != GraphKind::Custom {
        return Ok(Arc::new(Graph::new(kind, n)?));
    }
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("custom graph needs `edges`"))?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((as_usize(a, "edge")?, as_usize(b, "edge")?)),
            _ => Err(parse_err("edges are [a, b] pairs")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(Graph::custom(n, &edges)?))
}

pub fn tubing_to_json(t: &Tubing) -> Value {
    let mut tubes = t.tubes().to_vec();
    tubes.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then(cmp_sets(a, b)));
    json!({
        "graph": graph_to_json(t.graph()),
        "tubes": tubes.iter().map(|&s| json!(to_vertices(s))).collect::<Vec<_>>(),
    })
}

pub fn tubing_from_json(v: &Value) -> Result<Tubing> {
    let graph = graph_from_json(v.get("graph").ok_or_else(|| parse_err("tubing needs `graph`"))?)?;
    let lists = v
        .get("tubes")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("tubing needs a `tubes` array"))?
        .iter()
        .map(|tube| {
            tube.as_array()
                .ok_or_else(|| parse_err("each tube is an array of vertices"))?
                .iter()
                .map(|x| as_usize(x, "vertex"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    // reuse the cached graph so tubings parsed separately share it
    let graph = match graph.kind() {
        GraphKind::Path | GraphKind::Cycle => cached_graph(graph.kind(), graph.n())?,
        _ => graph,
    };
    Tubing::from_lists(graph, &lists)
}

fn tree_kind_name(k: TreeKind) -> &'static str {
    match k {
        TreeKind::Path => "path",
        TreeKind::Cycle => "cycle",
        TreeKind::General => "general",
    }
}

pub fn gtree_to_json(g: &GTree) -> Value {
    let mut parent = Map::new();
    for (c, p) in g.parent_map() {
        parent.insert(c.to_string(), json!(p));
    }
    json!({
        "n": g.n(),
        "root": g.root(),
        "parent": parent,
        "kind": tree_kind_name(g.kind()),
    })
}

/// `default_kind` applies when the document has no `"kind"`.
pub fn gtree_from_json(v: &Value, default_kind: TreeKind) -> Result<GTree> {
    let n = as_usize(v.get("n").ok_or_else(|| parse_err("tree needs `n`"))?, "n")?;
    let root = as_usize(v.get("root").ok_or_else(|| parse_err("tree needs `root`"))?, "root")?;
    let kind = match v.get("kind").and_then(Value::as_str) {
        None => default_kind,
        Some("path") => TreeKind::Path,
        Some("cycle") => TreeKind::Cycle,
        Some("general") => TreeKind::General,
        Some(other) => return Err(parse_err(format!("unknown tree kind `{other}`"))),
    };
    let mut map = BTreeMap::new();
    for (c, p) in v
        .get("parent")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err("tree needs a `parent` object"))?
    {
        let c: usize = c
            .parse()
            .map_err(|_| parse_err(format!("parent key `{c}` is not a vertex")))?;
        map.insert(c, as_usize(p, "parent")?);
    }
    GTree::from_parent_map(n, root, &map, kind)
}

/// Reads either a tubing or a G-tree of a path or cycle. A tree without `"kind"` takes
/// `default_kind`.
pub fn read_tubing(v: &Value, default_kind: GraphKind) -> Result<Tubing> {
    if v.get("tubes").is_some() {
        return tubing_from_json(v);
    }
    if v.get("parent").is_some() {
        let g = gtree_from_json(v, TreeKind::of_graph(default_kind))?;
        let kind = match g.kind() {
            TreeKind::Path => GraphKind::Path,
            TreeKind::Cycle => GraphKind::Cycle,
            TreeKind::General => {
                return Err(parse_err("general trees need an explicit graph"));
            }
        };
        return tubing_of(&cached_graph(kind, g.n())?, &g);
    }
    Err(parse_err("expected a tubing (`tubes`) or a G-tree (`parent`)"))
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}
