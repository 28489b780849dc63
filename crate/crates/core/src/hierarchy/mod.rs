//! Rooted binary hierarchies over a finite label set, NNI moves between
//! them, and counting/sampling/enumeration of the hierarchy space.

mod cluster;
mod nni;
mod sample;
pub(crate) mod topology;
mod tree;

pub(crate) use cluster::merge_sorted;
pub use cluster::{Cluster, IndexSet, Label};
pub use nni::{nni_triplet, Adjacency, NniTriplet};
pub use sample::{
    count_trees, enumerate_trees, random_tree, random_tree_with, TreeEnumerator,
    MAX_ENUMERATION_LEAVES,
};
pub use tree::{BinaryHierarchy, Relations};
