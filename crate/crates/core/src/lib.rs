//! Hierarchical clustering with NNI-based anytime restructuring.
//!
//! A [`BinaryHierarchy`] over a [`Dataset`] is improved by repeatedly
//! finding a grandchild at which local homogeneity fails and swapping the
//! appropriate subtree with its parent's sibling, until every grandchild
//! is closer to its sibling than either is to the parent's sibling. Batch
//! agglomerative clustering ([`hac`]), incremental insertion and cophenetic
//! validation are provided alongside.
//!
//! ```
//! use anyhier::{anytime_cluster, hac, random_tree, Dataset, Dissimilarity, LinkageKind};
//!
//! let data = Dataset::from_values(&[0.0, 1.0, 3.0, 7.0], Dissimilarity::Euclidean).unwrap();
//! let start = random_tree(data.index_set(), 7).unwrap();
//! let trace = anytime_cluster(&data, LinkageKind::Single, &start, 1000).unwrap();
//! assert_eq!(trace.final_tree, hac(&data, LinkageKind::Single).unwrap());
//! ```

pub mod anytime;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod hac;
pub mod hierarchy;
pub mod incremental;
pub mod io;
pub mod linkage;
pub mod validation;

pub use anytime::{
    anytime_cluster, anytime_cluster_with, anytime_step, find_violation, is_homogeneous,
    is_locally_homogeneous, level_profile, objective_h, sorted_profile, AnytimeConfig,
    AnytimeTrace, Snapshot, StepOutcome, StepRecord,
};
pub use error::{Error, Result};
pub use geometry::{merge_stats, Dataset, Dissimilarity, SufficientStats};
pub use hac::{hac, is_monotone, Monotonicity};
pub use hierarchy::{
    count_trees, enumerate_trees, nni_triplet, random_tree, Adjacency, BinaryHierarchy, Cluster,
    IndexSet, Label, NniTriplet,
};
pub use incremental::{delete_point, incremental_cluster, insert_point, insert_point_with_stats};
pub use linkage::{
    check_reducibility_on_triple, fast_average, fast_ward, lance_williams_update, linkage_eval,
    EvalStrategy, Linkage, LinkageKind, ReducibilityReport,
};
pub use validation::{cophenetic_correlation, cophenetic_matrix, CopheneticMatrix};
