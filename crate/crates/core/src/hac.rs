//! Batch agglomerative clustering and the monotonicity check.

use crate::anytime::{evaluator, Engine};
use crate::error::Result;
use crate::geometry::Dataset;
use crate::hierarchy::topology::{NodeId, Topology};
use crate::hierarchy::{merge_sorted, BinaryHierarchy, Cluster};
use crate::linkage::{Evaluator, Linkage, LinkageKind};

struct Block {
    node: NodeId,
    members: Vec<usize>,
}

/// Agglomerative clustering: repeatedly merges the two blocks with the
/// smallest linkage. Ties go to the pair whose smaller minimum label is
/// smallest, then whose larger minimum label is smallest. Linkage values are
/// kept in a matrix updated by the Lance–Williams recurrence; minimax rows
/// are re-evaluated directly.
pub fn hac(data: &Dataset, linkage: impl Into<Linkage>) -> Result<BinaryHierarchy> {
    let linkage = linkage.into();
    linkage.resolve(data)?;
    let kind = linkage.kind;
    let direct = Evaluator::new(
        data,
        Linkage::new(kind, crate::linkage::EvalStrategy::Direct),
    )?
    .with_matrix();
    let n = data.len();

    let mut topo = Topology::with_leaf(data.label_at(0));
    let mut blocks: Vec<Option<Block>> = Vec::with_capacity(n);
    blocks.push(Some(Block {
        node: 0,
        members: vec![0],
    }));
    for p in 1..n {
        let node = topo.add_leaf(data.label_at(p));
        blocks.push(Some(Block {
            node,
            members: vec![p],
        }));
    }
    // Slot order equals minimum-label order and merges keep the lower slot,
    // so slot indices stay sorted by minimum label.
    let mut d = vec![0.0; n * n];
    for p in 0..n {
        for q in p + 1..n {
            let v = direct.eval_positions(&[p], &[q]);
            d[p * n + q] = v;
            d[q * n + p] = v;
        }
    }

    for _ in 1..n {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            if blocks[a].is_none() {
                continue;
            }
            for b in a + 1..n {
                if blocks[b].is_none() {
                    continue;
                }
                let v = d[a * n + b];
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, a, b));
                }
            }
        }
        let (l_ab, a, b) = best.expect("at least two blocks remain");
        let block_b = blocks[b].take().expect("active");
        let block_a = blocks[a].take().expect("active");
        let (size_a, size_b) = (block_a.members.len(), block_b.members.len());
        let merged = Block {
            node: topo.join(block_a.node, block_b.node),
            members: merge_sorted(&block_a.members, &block_b.members),
        };
        for c in 0..n {
            let Some(block_c) = &blocks[c] else { continue };
            let v = if kind == LinkageKind::Minimax {
                direct.eval_positions(&merged.members, &block_c.members)
            } else {
                crate::linkage::lance_williams_update(
                    kind,
                    (size_a, size_b, block_c.members.len()),
                    d[a * n + c],
                    d[b * n + c],
                    l_ab,
                )?
            };
            d[a * n + c] = v;
            d[c * n + a] = v;
        }
        blocks[a] = Some(merged);
        topo.root = blocks[a].as_ref().expect("just set").node;
    }
    Ok(BinaryHierarchy::from_topology(&topo))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Monotone,
    /// First grandchild (scan order) more distant from its sibling than its
    /// parent is from the parent's sibling.
    Violated {
        grandchild: Cluster,
    },
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        matches!(self, Monotonicity::Monotone)
    }
}

/// Checks `ℓ(I, I^c) ≤ ℓ(Pr(I), Pr(I)^c)` at every grandchild `I`.
pub fn is_monotone(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<Monotonicity> {
    let ev = evaluator(data, linkage)?;
    let engine = Engine::new(&ev, tree)?;
    Ok(match engine.first_non_monotone() {
        None => Monotonicity::Monotone,
        Some(v) => Monotonicity::Violated {
            grandchild: engine.cluster(v),
        },
    })
}
