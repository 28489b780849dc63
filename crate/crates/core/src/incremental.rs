//! Online updates: insert a point by homogeneity-guided descent, then
//! re-homogenize; deletion splices the leaf out and re-homogenizes.

use crate::anytime::{run, AnytimeConfig, AnytimeTrace};
use crate::error::{Error, Result};
use crate::geometry::{Dataset, SufficientStats};
use crate::hierarchy::{BinaryHierarchy, Cluster, Label};
use crate::linkage::{Evaluator, Linkage, Side};

#[derive(Clone, Debug, PartialEq)]
pub struct InsertOutcome {
    /// Tree over the old labels plus the new one.
    pub tree: BinaryHierarchy,
    /// The input dataset with the new point added.
    pub dataset: Dataset,
    /// Cluster the new leaf became a sibling of.
    pub attached_to: Cluster,
    /// Linkage evaluations spent in the descent.
    pub evaluations: usize,
}

/// Inserts `new_point` under `new_label` into a hierarchy over `data`.
pub fn insert_point(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    new_label: Label,
    new_point: Vec<f64>,
) -> Result<BinaryHierarchy> {
    Ok(insert_point_with_stats(data, linkage, tree, new_label, new_point)?.tree)
}

/// As [`insert_point`], also returning the grown dataset and the number of
/// linkage evaluations.
///
/// At a cluster `K` with children `K_L, K_R` the new leaf `i` stops as `K`'s
/// sibling when `ℓ(K_L, K_R) ≤ min(ℓ(K_L, i), ℓ(K_R, i))` and otherwise
/// descends into the closer child (the smaller-minimum child on ties). A leaf
/// `K` always takes `i` as its sibling.
pub fn insert_point_with_stats(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    new_label: Label,
    new_point: Vec<f64>,
) -> Result<InsertOutcome> {
    if tree.index_set() != data.index_set() {
        return Err(Error::IndexSetMismatch);
    }
    let grown = data.with_point(new_label, new_point)?;
    let ev = Evaluator::new(&grown, linkage.into())?;
    let new_pos = [grown.require_position(new_label)?];

    struct Arg {
        pos: Vec<usize>,
        stats: Option<SufficientStats>,
    }
    fn side(x: &Arg) -> Side<'_> {
        Side {
            pos: &x.pos,
            stats: x.stats.as_ref(),
        }
    }
    let arg = |pos: Vec<usize>| {
        let stats = ev.uses_stats().then(|| ev.stats_of(&pos));
        Arg { pos, stats }
    };
    let link = |a: &Arg, b: &Arg| {
        let (a, b) = if a.pos[0] < b.pos[0] { (a, b) } else { (b, a) };
        ev.eval(side(a), side(b))
    };
    let leaf = arg(new_pos.to_vec());

    let mut evaluations = 0;
    let mut k = 0;
    while let Some([l, r]) = tree.node_children(k) {
        let kl = arg(grown.positions(tree.node_cluster(l))?);
        let kr = arg(grown.positions(tree.node_cluster(r))?);
        let l_lr = link(&kl, &kr);
        let l_li = link(&kl, &leaf);
        let l_ri = link(&kr, &leaf);
        evaluations += 3;
        if l_lr <= l_li.min(l_ri) {
            break;
        }
        k = if l_ri < l_li { r } else { l };
    }

    let mut topo = tree.to_topology();
    topo.attach_sibling(k, new_label);
    Ok(InsertOutcome {
        tree: BinaryHierarchy::from_topology(&topo),
        attached_to: tree.node_cluster(k).clone(),
        dataset: grown,
        evaluations,
    })
}

/// Inserts the point, then runs the anytime loop on the grown dataset. The
/// trace covers only the anytime phase.
pub fn incremental_cluster(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    new_label: Label,
    new_point: Vec<f64>,
    max_iterations: usize,
) -> Result<AnytimeTrace> {
    let config = AnytimeConfig {
        max_iterations: Some(max_iterations),
        ..AnytimeConfig::default()
    };
    Ok(incremental_cluster_with(data, linkage, tree, new_label, new_point, &config)?.1)
}

/// As [`incremental_cluster`], also returning the grown dataset.
pub fn incremental_cluster_with(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    new_label: Label,
    new_point: Vec<f64>,
    config: &AnytimeConfig,
) -> Result<(Dataset, AnytimeTrace)> {
    let linkage = linkage.into();
    let ins = insert_point_with_stats(data, linkage, tree, new_label, new_point)?;
    let ev = crate::anytime::evaluator(&ins.dataset, linkage)?;
    let trace = run(&ev, &ins.tree, config)?;
    Ok((ins.dataset, trace))
}

/// Removes `label`'s leaf (its parent is spliced out), then runs the anytime
/// loop on the reduced dataset.
pub fn delete_point(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    label: Label,
    config: &AnytimeConfig,
) -> Result<(Dataset, AnytimeTrace)> {
    if tree.index_set() != data.index_set() {
        return Err(Error::IndexSetMismatch);
    }
    let shrunk = data.without_point(label)?;
    let mut topo = tree.to_topology();
    let leaf = tree.index_of(&Cluster::singleton(label))?;
    topo.remove_leaf(leaf);
    let reduced = BinaryHierarchy::from_topology(&topo);
    let ev = crate::anytime::evaluator(&shrunk, linkage)?;
    let trace = run(&ev, &reduced, config)?;
    Ok((shrunk, trace))
}
