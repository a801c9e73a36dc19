//! Maximal tubings of path and cycle graphs as lattices.
//!
//! Tubes are `u64` bitmasks (bit `v - 1` is vertex `v`), so graphs have at most 63 vertices.

pub mod cycle_lattice;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod gtree;
pub mod irreducibles;
pub mod json;
pub mod pairs;
pub mod poset;
pub mod tubing;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind, Tube};
pub use gtree::{gtree_of, tubing_of, GTree, Shape, TreeKind};
pub use pairs::{PairSet, PairStats};
pub use tubing::{covers, enumerate_maximal_tubings, is_maximal_tubing, Tubing};
