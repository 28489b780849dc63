//! JSON cluster-set form: `{"index_set": [...], "clusters": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hierarchy::{BinaryHierarchy, Cluster, IndexSet, Label};

#[derive(Serialize, Deserialize)]
struct TreeJson {
    index_set: Vec<Label>,
    clusters: Vec<Vec<Label>>,
}

/// Clusters are listed in canonical pre-order.
pub fn to_json(tree: &BinaryHierarchy) -> String {
    let doc = TreeJson {
        index_set: tree.index_set().labels().to_vec(),
        clusters: tree.clusters().map(|c| c.labels().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("plain integer arrays serialize")
}

pub fn from_json(text: &str) -> Result<BinaryHierarchy> {
    let doc: TreeJson = serde_json::from_str(text)?;
    let index_set = IndexSet::new(doc.index_set)?;
    let clusters = doc
        .clusters
        .into_iter()
        .map(Cluster::new)
        .collect::<Result<Vec<_>>>()?;
    BinaryHierarchy::from_cluster_set(&index_set, clusters)
}
