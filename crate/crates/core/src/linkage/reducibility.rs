use super::{check_disjoint, positions_of, Evaluator, Linkage};
use crate::error::{Error, Result};
use crate::geometry::Dataset;
use crate::hierarchy::Label;

/// Relative slack used by the property checkers; `x ≤ y` is accepted when
/// `x ≤ y + tol · max(1, |x|, |y|)`.
pub const REDUCIBILITY_TOLERANCE: f64 = 1e-12;

fn le(x: f64, y: f64) -> bool {
    x <= y + REDUCIBILITY_TOLERANCE * 1f64.max(x.abs()).max(y.abs())
}

/// Outcome of the three implication tests on one triple. A flag is true when
/// the triple does not falsify the corresponding property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducibilityReport {
    pub reducible_ok: bool,
    pub strongly_reducible_ok: bool,
    pub nni_reducible_ok: bool,
}

pub fn check_reducibility_on_triple<A, B, C>(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    a: &A,
    b: &B,
    c: &C,
) -> Result<ReducibilityReport>
where
    A: AsRef<[Label]> + ?Sized,
    B: AsRef<[Label]> + ?Sized,
    C: AsRef<[Label]> + ?Sized,
{
    let pa = positions_of(data, a.as_ref())?;
    let pb = positions_of(data, b.as_ref())?;
    let pc = positions_of(data, c.as_ref())?;
    if pa.is_empty() || pb.is_empty() || pc.is_empty() {
        return Err(Error::EmptyCluster);
    }
    check_disjoint(data, &[&pa, &pb, &pc])?;
    let ev = Evaluator::new(data, linkage.into())?;
    let union = |x: &[usize], y: &[usize]| crate::hierarchy::merge_sorted(x, y);
    let l = |x: &[usize], y: &[usize]| ev.eval_positions(x, y);

    let ab = l(&pa, &pb);
    let ac = l(&pa, &pc);
    let bc = l(&pb, &pc);
    let ab_c = l(&union(&pa, &pb), &pc);
    let ac_b = l(&union(&pa, &pc), &pb);
    let bc_a = l(&union(&pb, &pc), &pa);

    let strong = le(ac.min(bc), ab_c);
    let reducible = !le(ab, ac.min(bc)) || strong;
    let nni_premise = le(bc, ab.min(ac));
    let nni = !nni_premise || le(bc + bc_a, (ab + ab_c).min(ac + ac_b));
    Ok(ReducibilityReport {
        reducible_ok: reducible,
        strongly_reducible_ok: strong,
        nni_reducible_ok: nni,
    })
}
