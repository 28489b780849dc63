//! Counting, uniform sampling and exhaustive enumeration of binary hierarchies.
//!
//! Both sampling and enumeration grow a tree one leaf at a time: a tree with
//! `k` leaves has `2k − 1` nodes, and the next leaf may be attached above any
//! of them (the edge above the root being virtual). Every choice sequence
//! yields a distinct tree and every tree arises from exactly one sequence,
//! which gives the `(2n − 3)!!` count.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cluster::IndexSet;
use super::topology::Topology;
use super::tree::BinaryHierarchy;
use crate::error::{Error, Result};

/// Largest index set accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_LEAVES: usize = 10;

/// `(2n − 3)!!`, the number of rooted binary hierarchies on `n` leaves.
/// Returns 1 for `n < 2`.
pub fn count_trees(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut k = 3usize;
    while k + 3 <= 2 * n {
        acc *= BigUint::from(k);
        k += 2;
    }
    acc
}

fn build(index_set: &IndexSet, mut choose: impl FnMut(usize) -> usize) -> BinaryHierarchy {
    let labels = index_set.labels();
    let mut topo = Topology::with_leaf(labels[0]);
    for &l in &labels[1..] {
        let v = choose(topo.len());
        topo.attach_sibling(v, l);
    }
    BinaryHierarchy::from_topology(&topo)
}

/// Samples uniformly from all binary hierarchies over `index_set`;
/// deterministic in `seed`.
pub fn random_tree(index_set: &IndexSet, seed: u64) -> Result<BinaryHierarchy> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(index_set, &mut rng)
}

/// As [`random_tree`], drawing from a caller-owned generator.
pub fn random_tree_with<R: Rng + ?Sized>(
    index_set: &IndexSet,
    rng: &mut R,
) -> Result<BinaryHierarchy> {
    if index_set.len() < 2 {
        return Err(Error::IndexSetTooSmall(index_set.len()));
    }
    Ok(build(index_set, |nodes| rng.gen_range(0..nodes)))
}

/// Lazily yields every binary hierarchy over `index_set` exactly once.
pub fn enumerate_trees(index_set: &IndexSet) -> Result<TreeEnumerator> {
    if index_set.len() > MAX_ENUMERATION_LEAVES {
        return Err(Error::IndexSetTooLarge(index_set.len()));
    }
    Ok(TreeEnumerator {
        index_set: index_set.clone(),
        digits: Some(vec![0; index_set.len() - 1]),
    })
}

/// Iterator returned by [`enumerate_trees`]; a mixed-radix counter over the
/// attachment choices.
pub struct TreeEnumerator {
    index_set: IndexSet,
    digits: Option<Vec<usize>>,
}

impl Iterator for TreeEnumerator {
    type Item = BinaryHierarchy;

    fn next(&mut self) -> Option<BinaryHierarchy> {
        let digits = self.digits.as_mut()?;
        let mut it = digits.iter();
        let tree = build(&self.index_set, |_| *it.next().expect("one digit per leaf"));
        // Digit i attaches leaf i+2 into a tree with 2i+1 nodes.
        let mut i = 0;
        loop {
            if i == digits.len() {
                self.digits = None;
                break;
            }
            digits[i] += 1;
            if digits[i] < 2 * i + 1 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        Some(tree)
    }
}
