use super::cluster::Cluster;
use super::tree::BinaryHierarchy;
use crate::error::{Error, Result};

/// The ordered triple `(A, B, C)` of clusters shared by two NNI-adjacent
/// hierarchies τ, σ: `A ∪ B` is the only cluster of τ missing from σ and
/// `B ∪ C` the only cluster of σ missing from τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NniTriplet {
    pub a: Cluster,
    pub b: Cluster,
    pub c: Cluster,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Adjacent(NniTriplet),
    /// The trees have the same cluster set (NNI distance zero).
    Equal,
    NotAdjacent,
}

impl Adjacency {
    pub fn triplet(&self) -> Option<&NniTriplet> {
        match self {
            Adjacency::Adjacent(t) => Some(t),
            _ => None,
        }
    }
}

/// Classifies the pair `(tau, sigma)` and, when they differ by one NNI move,
/// returns their triplet.
pub fn nni_triplet(tau: &BinaryHierarchy, sigma: &BinaryHierarchy) -> Result<Adjacency> {
    if tau.index_set() != sigma.index_set() {
        return Err(Error::IndexSetMismatch);
    }
    let only_tau: Vec<&Cluster> = tau.clusters().filter(|c| !sigma.contains(c)).collect();
    let only_sigma: Vec<&Cluster> = sigma.clusters().filter(|c| !tau.contains(c)).collect();
    let (x, y) = match (only_tau.as_slice(), only_sigma.as_slice()) {
        ([], []) => return Ok(Adjacency::Equal),
        ([x], [y]) => (*x, *y),
        _ => return Ok(Adjacency::NotAdjacent),
    };
    let (Some(b), Some(a), Some(c)) = (x.intersection(y), x.difference(y), y.difference(x)) else {
        return Ok(Adjacency::NotAdjacent);
    };
    let shared = |k: &Cluster| tau.contains(k) && sigma.contains(k);
    if shared(&a) && shared(&b) && shared(&c) {
        Ok(Adjacency::Adjacent(NniTriplet { a, b, c }))
    } else {
        Ok(Adjacency::NotAdjacent)
    }
}
