//! Linkage functions: the five kinds, their evaluation strategies, the
//! Lance–Williams recurrence, sufficient-statistics shortcuts and checkers for
//! the reducibility properties.

mod eval;
mod fast;
mod lance_williams;
mod reducibility;

use std::fmt;
use std::str::FromStr;

pub(crate) use eval::{Evaluator, Side};
pub use fast::{fast_average, fast_ward};
pub use lance_williams::{lance_williams_coefficients, lance_williams_update, LwCoefficients};
pub use reducibility::{check_reducibility_on_triple, ReducibilityReport, REDUCIBILITY_TOLERANCE};

use crate::error::{Error, Result};
use crate::geometry::{Dataset, Dissimilarity};
use crate::hierarchy::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkageKind {
    Single,
    Complete,
    Average,
    Minimax,
    Ward,
}

impl LinkageKind {
    pub const ALL: [LinkageKind; 5] = [
        LinkageKind::Single,
        LinkageKind::Complete,
        LinkageKind::Average,
        LinkageKind::Minimax,
        LinkageKind::Ward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LinkageKind::Single => "single",
            LinkageKind::Complete => "complete",
            LinkageKind::Average => "average",
            LinkageKind::Minimax => "minimax",
            LinkageKind::Ward => "ward",
        }
    }

    pub fn is_strongly_reducible(self) -> bool {
        self != LinkageKind::Ward
    }

    pub fn is_nni_reducible(self) -> bool {
        self != LinkageKind::Average
    }

    pub fn has_recurrence(self) -> bool {
        self != LinkageKind::Minimax
    }
}

impl fmt::Display for LinkageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinkageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LinkageKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown linkage {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EvalStrategy {
    /// Sufficient statistics where the kind and dissimilarity allow it,
    /// direct evaluation otherwise.
    #[default]
    Auto,
    Direct,
    Recurrence,
    SufficientStats,
}

impl EvalStrategy {
    pub fn name(self) -> &'static str {
        match self {
            EvalStrategy::Auto => "auto",
            EvalStrategy::Direct => "direct",
            EvalStrategy::Recurrence => "recurrence",
            EvalStrategy::SufficientStats => "stats",
        }
    }
}

impl fmt::Display for EvalStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(EvalStrategy::Auto),
            "direct" => Ok(EvalStrategy::Direct),
            "recurrence" => Ok(EvalStrategy::Recurrence),
            "stats" | "sufficient_stats" | "sufficient-stats" => Ok(EvalStrategy::SufficientStats),
            other => Err(Error::Config(format!(
                "unknown evaluation strategy {other:?}"
            ))),
        }
    }
}

/// Unit-norm tolerance for accepting the cosine shortcut.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-9;

/// A linkage kind paired with the way it is evaluated. All strategies agree
/// up to rounding; they differ in cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Linkage {
    pub kind: LinkageKind,
    pub strategy: EvalStrategy,
}

impl Linkage {
    pub fn new(kind: LinkageKind, strategy: EvalStrategy) -> Self {
        Linkage { kind, strategy }
    }

    /// The concrete strategy used on `data`, or `StrategyUnavailable`.
    pub fn resolve(&self, data: &Dataset) -> Result<EvalStrategy> {
        let stats_ok = |k: LinkageKind| match k {
            LinkageKind::Ward => Ok(()),
            LinkageKind::Average => match data.kind() {
                Dissimilarity::SquaredEuclidean => Ok(()),
                Dissimilarity::Cosine if data.is_unit_norm(UNIT_NORM_TOLERANCE) => Ok(()),
                Dissimilarity::Cosine => Err(Error::StrategyUnavailable(
                    "the cosine shortcut for average linkage needs unit-norm points".into(),
                )),
                Dissimilarity::Euclidean => Err(Error::StrategyUnavailable(
                    "average linkage has no sufficient-statistics form for euclidean".into(),
                )),
            },
            other => Err(Error::StrategyUnavailable(format!(
                "{other} linkage has no sufficient-statistics form"
            ))),
        };
        match self.strategy {
            EvalStrategy::Direct => Ok(EvalStrategy::Direct),
            EvalStrategy::Recurrence if self.kind.has_recurrence() => Ok(EvalStrategy::Recurrence),
            EvalStrategy::Recurrence => Err(Error::StrategyUnavailable(format!(
                "{} linkage has no Lance-Williams recurrence",
                self.kind
            ))),
            EvalStrategy::SufficientStats => {
                stats_ok(self.kind)?;
                Ok(EvalStrategy::SufficientStats)
            }
            EvalStrategy::Auto => {
                let cheap = self.kind == LinkageKind::Ward
                    || (self.kind == LinkageKind::Average
                        && data.kind() == Dissimilarity::SquaredEuclidean);
                Ok(if cheap {
                    EvalStrategy::SufficientStats
                } else {
                    EvalStrategy::Direct
                })
            }
        }
    }
}

impl From<LinkageKind> for Linkage {
    fn from(kind: LinkageKind) -> Self {
        Linkage::new(kind, EvalStrategy::Auto)
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, self.strategy)
    }
}

/// Sorted, deduplicated positions of `labels` in `data`.
pub(crate) fn positions_of(data: &Dataset, labels: &[Label]) -> Result<Vec<usize>> {
    let mut pos = labels
        .iter()
        .map(|&l| data.require_position(l))
        .collect::<Result<Vec<_>>>()?;
    pos.sort_unstable();
    pos.dedup();
    Ok(pos)
}

pub(crate) fn check_disjoint(data: &Dataset, lists: &[&[usize]]) -> Result<()> {
    for (i, a) in lists.iter().enumerate() {
        for b in &lists[i + 1..] {
            let (mut x, mut y) = (0, 0);
            while x < a.len() && y < b.len() {
                match a[x].cmp(&b[y]) {
                    std::cmp::Ordering::Less => x += 1,
                    std::cmp::Ordering::Greater => y += 1,
                    std::cmp::Ordering::Equal => {
                        return Err(Error::OverlappingClusters(data.label_at(a[x])))
                    }
                }
            }
        }
    }
    Ok(())
}

/// Linkage between two disjoint label sets. Either side may be empty, in
/// which case the value is 0.
pub fn linkage_eval<A, B>(data: &Dataset, linkage: impl Into<Linkage>, a: &A, b: &B) -> Result<f64>
where
    A: AsRef<[Label]> + ?Sized,
    B: AsRef<[Label]> + ?Sized,
{
    let linkage = linkage.into();
    let pa = positions_of(data, a.as_ref())?;
    let pb = positions_of(data, b.as_ref())?;
    check_disjoint(data, &[&pa, &pb])?;
    let ev = Evaluator::new(data, linkage)?;
    Ok(ev.eval_positions(&pa, &pb))
}
