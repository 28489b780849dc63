use crate::error::{Error, Result};
use crate::geometry::{dot, squared_distance, Dissimilarity, SufficientStats};

/// Average linkage from cluster statistics alone. Squared Euclidean uses the
/// bias-variance split; cosine assumes the underlying points have unit norm.
pub fn fast_average(a: &SufficientStats, b: &SufficientStats, kind: Dissimilarity) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    match kind {
        Dissimilarity::Euclidean => Err(Error::UnsupportedDissimilarity(kind.to_string())),
        _ => Ok(fast_average_unchecked(a, b, kind)),
    }
}

pub(crate) fn fast_average_unchecked(
    a: &SufficientStats,
    b: &SufficientStats,
    kind: Dissimilarity,
) -> f64 {
    match kind {
        Dissimilarity::Cosine => 1.0 - dot(&a.centroid, &b.centroid),
        _ => a.variance + b.variance + squared_distance(&a.centroid, &b.centroid),
    }
}

/// Ward linkage `|A||B| / (|A| + |B|) · ‖c_A − c_B‖²`.
pub fn fast_ward(a: &SufficientStats, b: &SufficientStats) -> f64 {
    let (na, nb) = (a.n as f64, b.n as f64);
    na * nb / (na + nb) * squared_distance(&a.centroid, &b.centroid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(n: usize, c: &[f64], v: f64) -> SufficientStats {
        SufficientStats {
            n,
            centroid: c.to_vec(),
            variance: v,
        }
    }

    #[test]
    fn average_examples() {
        // {0,2} against {5}: pair distances 25 and 9
        let a = stats(2, &[1.0], 1.0);
        let b = SufficientStats::singleton(&[5.0]);
        assert_eq!(
            fast_average(&a, &b, Dissimilarity::SquaredEuclidean).unwrap(),
            17.0
        );
        let p = SufficientStats::singleton(&[2.0, 3.0]);
        assert_eq!(
            fast_average(&p, &p, Dissimilarity::SquaredEuclidean).unwrap(),
            0.0
        );
        let x = SufficientStats::singleton(&[1.0, 0.0]);
        let y = SufficientStats::singleton(&[0.0, 1.0]);
        assert_eq!(fast_average(&x, &y, Dissimilarity::Cosine).unwrap(), 1.0);
        assert!(matches!(
            fast_average(&x, &y, Dissimilarity::Euclidean),
            Err(Error::UnsupportedDissimilarity(_))
        ));
    }

    #[test]
    fn ward_examples() {
        let s0 = SufficientStats::singleton(&[0.0]);
        let s1 = SufficientStats::singleton(&[1.0]);
        assert_eq!(fast_ward(&s0, &s1), 0.5);
        assert_eq!(
            fast_ward(&stats(3, &[1.0], 2.0), &stats(4, &[1.0], 0.5)),
            0.0
        );
        let w = fast_ward(&stats(2, &[0.5], 0.25), &SufficientStats::singleton(&[3.0]));
        assert!((w - 25.0 / 6.0).abs() < 1e-12);
    }
}
