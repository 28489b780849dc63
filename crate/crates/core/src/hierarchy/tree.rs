use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use super::cluster::{merge_sorted, Cluster, IndexSet, Label};
use super::topology::Topology;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Node {
    cluster: Cluster,
    parent: Option<usize>,
    children: Option<[usize; 2]>,
    depth: usize,
}

/// A rooted, non-degenerate (binary) hierarchy over a finite index set.
///
/// Nodes are kept in canonical pre-order with the child holding the smaller
/// minimum label first, so two hierarchies are equal exactly when their
/// cluster sets are equal. Values are immutable; restructuring returns a new
/// hierarchy.
#[derive(Clone, Debug)]
pub struct BinaryHierarchy {
    index_set: IndexSet,
    nodes: Vec<Node>,
    lookup: HashMap<Cluster, usize>,
}

/// Relatives of a cluster inside a hierarchy. `depth` counts the clusters
/// containing it, itself included, so the root has depth 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    pub parent: Option<Cluster>,
    pub children: Option<(Cluster, Cluster)>,
    pub sibling: Option<Cluster>,
    pub grandparent: Option<Cluster>,
    pub is_grandchild: bool,
    pub depth: usize,
}

impl PartialEq for BinaryHierarchy {
    fn eq(&self, other: &Self) -> bool {
        self.index_set == other.index_set
            && self.nodes.len() == other.nodes.len()
            && self
                .nodes
                .iter()
                .zip(&other.nodes)
                .all(|(a, b)| a.cluster == b.cluster)
    }
}

impl Eq for BinaryHierarchy {}

impl Hash for BinaryHierarchy {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for n in &self.nodes {
            n.cluster.hash(state);
        }
    }
}

impl BinaryHierarchy {
    pub(crate) fn from_topology(topo: &Topology) -> Self {
        // Post-order pass for clusters, then canonical pre-order emission.
        let order = topo.preorder();
        let mut members: Vec<Option<Vec<Label>>> = vec![None; topo.len()];
        for &v in order.iter().rev() {
            members[v] = Some(match topo.children[v] {
                None => vec![topo.label[v].expect("leaf carries a label")],
                Some([a, b]) => merge_sorted(
                    members[a].as_ref().expect("child visited"),
                    members[b].as_ref().expect("child visited"),
                ),
            });
        }
        let mins: Vec<Option<Label>> = members.iter().map(|m| m.as_ref().map(|m| m[0])).collect();
        let min_of = |v: usize| mins[v].expect("reachable");

        let mut nodes: Vec<Node> = Vec::with_capacity(order.len());
        // (topology node, parent index in `nodes`, slot in parent's children)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(topo.root, None, 0)];
        while let Some((v, parent, slot)) = stack.pop() {
            let idx = nodes.len();
            let depth = parent.map_or(1, |p| nodes[p].depth + 1);
            nodes.push(Node {
                cluster: Cluster::from_sorted(members[v].take().expect("visited once")),
                parent,
                children: None,
                depth,
            });
            if let Some(p) = parent {
                let ch = nodes[p].children.get_or_insert([usize::MAX; 2]);
                ch[slot] = idx;
            }
            if let Some([a, b]) = topo.children[v] {
                let (first, second) = if min_of(a) < min_of(b) {
                    (a, b)
                } else {
                    (b, a)
                };
                stack.push((second, Some(idx), 1));
                stack.push((first, Some(idx), 0));
            }
        }
        let index_set = IndexSet::new(nodes[0].cluster.labels().iter().copied())
            .expect("root cluster is a valid index set");
        let lookup = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.cluster.clone(), i))
            .collect();
        BinaryHierarchy {
            index_set,
            nodes,
            lookup,
        }
    }

    /// Rebuilds the mutable arena. Node `i` of the arena is node `i` of the
    /// canonical pre-order.
    pub(crate) fn to_topology(&self) -> Topology {
        Topology {
            label: self
                .nodes
                .iter()
                .map(|n| n.children.is_none().then(|| n.cluster.min_label()))
                .collect(),
            parent: self.nodes.iter().map(|n| n.parent).collect(),
            children: self.nodes.iter().map(|n| n.children).collect(),
            root: 0,
        }
    }

    /// Inverse of [`cluster_set`](Self::cluster_set): the unique hierarchy
    /// whose cluster set is `clusters`.
    pub fn from_cluster_set<I>(index_set: &IndexSet, clusters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Cluster>,
    {
        let mut clusters: Vec<Cluster> = clusters
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for c in &clusters {
            if let Some(&l) = c.labels().iter().find(|&&l| !index_set.contains(l)) {
                return Err(Error::UnknownLabel(l));
            }
        }
        let root_cluster = index_set.as_cluster();
        if !clusters.contains(&root_cluster) {
            return Err(Error::MissingRootOrLeaf(root_cluster.to_string()));
        }
        // Largest first; ties broken by the set order for determinism.
        clusters.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        let n = index_set.len();
        let pos = |l: Label| index_set.labels().binary_search(&l).expect("checked above");
        let mut owner: Vec<usize> = vec![0; n];
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); clusters.len()];
        for (ci, c) in clusters.iter().enumerate().skip(1) {
            let p = owner[pos(c.min_label())];
            if let Some(&l) = c.labels().iter().find(|&&l| owner[pos(l)] != p) {
                let other = &clusters[owner[pos(l)]];
                let first = if other.is_subset(c) {
                    &clusters[p]
                } else {
                    other
                };
                return Err(Error::NotLaminar(c.to_string(), first.to_string()));
            }
            for &l in c.labels() {
                owner[pos(l)] = ci;
            }
            kids[p].push(ci);
        }

        let mut topo_ids: Vec<usize> = vec![usize::MAX; clusters.len()];
        let mut topo: Option<Topology> = None;
        for ci in (0..clusters.len()).rev() {
            let c = &clusters[ci];
            match kids[ci].as_slice() {
                [] if c.is_singleton() => {
                    let t = topo.get_or_insert_with(|| Topology {
                        label: Vec::new(),
                        parent: Vec::new(),
                        children: Vec::new(),
                        root: 0,
                    });
                    topo_ids[ci] = t.add_leaf(c.min_label());
                }
                &[a, b] if clusters[a].len() + clusters[b].len() == c.len() => {
                    let t = topo.as_mut().expect("children built first");
                    topo_ids[ci] = t.join(topo_ids[a], topo_ids[b]);
                }
                _ => {
                    if let Some(l) = c.labels().iter().find(|&&l| owner[pos(l)] == ci) {
                        return Err(Error::MissingRootOrLeaf(l.to_string()));
                    }
                    return Err(Error::NotBinary(c.to_string()));
                }
            }
        }
        let mut topo = topo.expect("at least one leaf");
        topo.root = topo_ids[0];
        for l in index_set.labels() {
            if clusters[owner[pos(*l)]].len() != 1 {
                return Err(Error::MissingRootOrLeaf(l.to_string()));
            }
        }
        Ok(Self::from_topology(&topo))
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    /// Number of leaves.
    pub fn n_leaves(&self) -> usize {
        self.index_set.len()
    }

    /// Number of clusters (always `2·n_leaves − 1`).
    pub fn n_clusters(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> &Cluster {
        &self.nodes[0].cluster
    }

    /// Clusters in canonical pre-order.
    pub fn clusters(&self) -> impl Iterator<Item = &Cluster> + '_ {
        self.nodes.iter().map(|n| &n.cluster)
    }

    pub fn cluster_set(&self) -> BTreeSet<Cluster> {
        self.clusters().cloned().collect()
    }

    pub fn contains(&self, cluster: &Cluster) -> bool {
        self.lookup.contains_key(cluster)
    }

    /// Grandchildren in canonical pre-order (the anytime scan order).
    pub fn grandchildren(&self) -> impl Iterator<Item = &Cluster> + '_ {
        self.nodes
            .iter()
            .filter(|n| n.depth >= 3)
            .map(|n| &n.cluster)
    }

    /// Interior clusters with their two children, in pre-order.
    pub fn splits(&self) -> impl Iterator<Item = (&Cluster, &Cluster, &Cluster)> + '_ {
        self.nodes.iter().filter_map(move |n| {
            n.children
                .map(|[a, b]| (&n.cluster, &self.nodes[a].cluster, &self.nodes[b].cluster))
        })
    }

    /// `(cluster, depth)` pairs in pre-order, root depth 1.
    pub fn depths(&self) -> impl Iterator<Item = (&Cluster, usize)> + '_ {
        self.nodes.iter().map(|n| (&n.cluster, n.depth))
    }

    pub(crate) fn index_of(&self, cluster: &Cluster) -> Result<usize> {
        self.lookup
            .get(cluster)
            .copied()
            .ok_or_else(|| Error::UnknownCluster(cluster.to_string()))
    }

    pub fn parent(&self, cluster: &Cluster) -> Result<Option<&Cluster>> {
        let i = self.index_of(cluster)?;
        Ok(self.nodes[i].parent.map(|p| &self.nodes[p].cluster))
    }

    pub fn children(&self, cluster: &Cluster) -> Result<Option<(&Cluster, &Cluster)>> {
        let i = self.index_of(cluster)?;
        Ok(self.nodes[i]
            .children
            .map(|[a, b]| (&self.nodes[a].cluster, &self.nodes[b].cluster)))
    }

    pub fn sibling(&self, cluster: &Cluster) -> Result<Option<&Cluster>> {
        let i = self.index_of(cluster)?;
        Ok(self.sibling_index(i).map(|s| &self.nodes[s].cluster))
    }

    fn sibling_index(&self, i: usize) -> Option<usize> {
        let p = self.nodes[i].parent?;
        let [a, b] = self.nodes[p].children.expect("parent is interior");
        Some(if a == i { b } else { a })
    }

    pub fn relations(&self, cluster: &Cluster) -> Result<Relations> {
        let i = self.index_of(cluster)?;
        let node = &self.nodes[i];
        let grandparent = node
            .parent
            .and_then(|p| self.nodes[p].parent)
            .map(|g| self.nodes[g].cluster.clone());
        Ok(Relations {
            parent: node.parent.map(|p| self.nodes[p].cluster.clone()),
            children: node
                .children
                .map(|[a, b]| (self.nodes[a].cluster.clone(), self.nodes[b].cluster.clone())),
            sibling: self.sibling_index(i).map(|s| self.nodes[s].cluster.clone()),
            is_grandchild: grandparent.is_some(),
            grandparent,
            depth: node.depth,
        })
    }

    /// Cluster depth (number of clusters containing it, itself included).
    pub fn depth(&self, cluster: &Cluster) -> Result<usize> {
        Ok(self.nodes[self.index_of(cluster)?].depth)
    }

    /// Swaps grandchild `g` with its parent's sibling. The parent cluster is
    /// replaced by `sibling(g) ∪ sibling(parent(g))`.
    pub fn nni_move(&self, grandchild: &Cluster) -> Result<BinaryHierarchy> {
        let i = self.index_of(grandchild)?;
        if self.nodes[i].depth < 3 {
            return Err(Error::NotAGrandchild(grandchild.to_string()));
        }
        let mut topo = self.to_topology();
        topo.nni_swap(i);
        Ok(Self::from_topology(&topo))
    }

    /// Newick form with canonical child order, e.g. `((1,2),3);`.
    pub fn to_newick(&self) -> String {
        crate::io::newick::write(self)
    }

    pub(crate) fn node_children(&self, i: usize) -> Option<[usize; 2]> {
        self.nodes[i].children
    }

    pub(crate) fn node_cluster(&self, i: usize) -> &Cluster {
        &self.nodes[i].cluster
    }
}

impl std::fmt::Display for BinaryHierarchy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_newick())
    }
}
