use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Dataset, Dissimilarity};
use crate::hierarchy::Label;

/// `n` points drawn uniformly from the unit square, labelled `1..=n`, with all
/// pairwise distances distinct (redrawn on the measure-zero chance of a tie).
pub fn gen_uniform_square(n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen(), rng.gen()]).collect();
        if distances_distinct(&pts) {
            return Dataset::new(
                pts.iter()
                    .enumerate()
                    .map(|(i, p)| (i as Label + 1, p.to_vec())),
                Dissimilarity::Euclidean,
            );
        }
    }
}

fn distances_distinct(pts: &[[f64; 2]]) -> bool {
    let mut d: Vec<f64> = Vec::with_capacity(pts.len() * pts.len() / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d.push(squared_distance(&pts[i], &pts[j]));
        }
    }
    d.sort_by(f64::total_cmp);
    d.windows(2).all(|w| w[0] < w[1]) && d.first().is_none_or(|&v| v > 0.0)
}
