//! Local homogeneity, the NNI restructuring step and the anytime loop, plus
//! the objective and profile diagnostics used to certify termination.

mod engine;

pub(crate) use engine::Engine;

use crate::error::{Error, Result};
use crate::geometry::Dataset;
use crate::hierarchy::{BinaryHierarchy, Cluster};
use crate::linkage::{Evaluator, Linkage};

/// Objective value and profiles of one tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub objective_h: f64,
    /// Empty when profile recording is disabled.
    pub level_profile: Vec<f64>,
    /// Empty when profile recording is disabled.
    pub sorted_profile: Vec<f64>,
}

/// One restructuring step; the snapshot describes the tree after the move.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    /// Grandchild at which homogeneity failed.
    pub violating_cluster: Cluster,
    /// Child of the violating cluster's parent that was swapped.
    pub swapped_grandchild: Cluster,
    pub after: Snapshot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnytimeTrace {
    pub initial: Snapshot,
    pub steps: Vec<StepRecord>,
    pub final_tree: BinaryHierarchy,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnytimeConfig {
    /// Step budget; `None` means `10·n²`.
    pub max_iterations: Option<usize>,
    pub record_profiles: bool,
}

impl Default for AnytimeConfig {
    fn default() -> Self {
        AnytimeConfig {
            max_iterations: None,
            record_profiles: true,
        }
    }
}

/// Default step budget for `n` points.
pub fn default_budget(n: usize) -> usize {
    10 * n * n
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub tree: BinaryHierarchy,
    pub moved: bool,
    pub violating: Option<Cluster>,
    pub swapped: Option<Cluster>,
}

pub(crate) fn evaluator(data: &Dataset, linkage: impl Into<Linkage>) -> Result<Evaluator<'_>> {
    Ok(Evaluator::new(data, linkage.into())?.with_matrix())
}

/// True iff `ℓ(I, I^c) ≤ min(ℓ(I, P^c), ℓ(I^c, P^c))` at grandchild `I`.
pub fn is_locally_homogeneous(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
    grandchild: &Cluster,
) -> Result<bool> {
    let i = tree.index_of(grandchild)?;
    if tree.depth(grandchild)? < 3 {
        return Err(Error::NotAGrandchild(grandchild.to_string()));
    }
    let ev = evaluator(data, linkage)?;
    let engine = Engine::new(&ev, tree)?;
    // arena ids of a fresh engine are the tree's pre-order indices
    Ok(!engine.violates(i))
}

/// First grandchild, in pre-order with the smaller-minimum child first, at
/// which local homogeneity fails strictly.
pub fn find_violation(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<Option<Cluster>> {
    let ev = evaluator(data, linkage)?;
    let engine = Engine::new(&ev, tree)?;
    Ok(engine.find_violation().map(|v| engine.cluster(v)))
}

pub fn is_homogeneous(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<bool> {
    Ok(find_violation(data, linkage, tree)?.is_none())
}

/// One step of the anytime procedure.
pub fn anytime_step(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<StepOutcome> {
    let ev = evaluator(data, linkage)?;
    let mut engine = Engine::new(&ev, tree)?;
    Ok(match engine.find_violation() {
        None => StepOutcome {
            tree: tree.clone(),
            moved: false,
            violating: None,
            swapped: None,
        },
        Some(i) => {
            let violating = engine.cluster(i);
            let g = engine.step(i);
            StepOutcome {
                tree: engine.tree(),
                moved: true,
                violating: Some(violating),
                swapped: Some(engine.cluster(g)),
            }
        }
    })
}

fn snapshot(engine: &Engine<'_, '_>, profiles: bool) -> Snapshot {
    Snapshot {
        objective_h: engine.objective_h(),
        level_profile: if profiles {
            engine.level_profile()
        } else {
            Vec::new()
        },
        sorted_profile: if profiles {
            engine.sorted_profile()
        } else {
            Vec::new()
        },
    }
}

/// Repeats [`anytime_step`] from `initial` until the tree is homogeneous.
pub fn anytime_cluster(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    initial: &BinaryHierarchy,
    max_iterations: usize,
) -> Result<AnytimeTrace> {
    let config = AnytimeConfig {
        max_iterations: Some(max_iterations),
        ..AnytimeConfig::default()
    };
    anytime_cluster_with(data, linkage, initial, &config)
}

pub fn anytime_cluster_with(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    initial: &BinaryHierarchy,
    config: &AnytimeConfig,
) -> Result<AnytimeTrace> {
    let ev = evaluator(data, linkage)?;
    run(&ev, initial, config)
}

pub(crate) fn run(
    ev: &Evaluator<'_>,
    initial: &BinaryHierarchy,
    config: &AnytimeConfig,
) -> Result<AnytimeTrace> {
    let budget = config
        .max_iterations
        .unwrap_or_else(|| default_budget(initial.n_leaves()));
    let mut engine = Engine::new(ev, initial)?;
    let initial_snapshot = snapshot(&engine, config.record_profiles);
    let mut steps = Vec::new();
    loop {
        while let Some(i) = engine.find_violation() {
            if steps.len() >= budget {
                let iterations = steps.len();
                return Err(Error::IterationBudgetExceeded {
                    budget,
                    partial: Box::new(AnytimeTrace {
                        initial: initial_snapshot,
                        steps,
                        final_tree: engine.tree(),
                        iterations,
                    }),
                });
            }
            let violating_cluster = engine.cluster(i);
            let g = engine.step(i);
            steps.push(StepRecord {
                violating_cluster,
                swapped_grandchild: engine.cluster(g),
                after: snapshot(&engine, config.record_profiles),
            });
        }
        // Cached statistics may differ from a fresh evaluation in the last
        // bits; accept only a tree that a fresh check also passes.
        let tree = engine.tree();
        let fresh = Engine::new(ev, &tree)?;
        if fresh.find_violation().is_none() {
            let iterations = steps.len();
            return Ok(AnytimeTrace {
                initial: initial_snapshot,
                steps,
                final_tree: tree,
                iterations,
            });
        }
        engine = fresh;
    }
}

/// `H = ½ Σ_I ℓ(I, I^c)` over all clusters, the root contributing 0.
pub fn objective_h(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<f64> {
    let ev = evaluator(data, linkage)?;
    Ok(Engine::new(&ev, tree)?.objective_h())
}

/// Per-level halves of linkage sums; entry `t − 1` covers clusters with `t`
/// proper ancestors. Length `|J| − 1`.
pub fn level_profile(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<Vec<f64>> {
    let ev = evaluator(data, linkage)?;
    Ok(Engine::new(&ev, tree)?.level_profile())
}

/// Every cluster's linkage to its sibling (root as 0), ascending. Length
/// `2|J| − 1`.
pub fn sorted_profile(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<Vec<f64>> {
    let ev = evaluator(data, linkage)?;
    Ok(Engine::new(&ev, tree)?.sorted_profile())
}
