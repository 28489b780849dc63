//! Point datasets, the three dissimilarity measures and per-cluster
//! sufficient statistics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hierarchy::{Cluster, IndexSet, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dissimilarity {
    Euclidean,
    SquaredEuclidean,
    Cosine,
}

impl Dissimilarity {
    pub const ALL: [Dissimilarity; 3] = [
        Dissimilarity::Euclidean,
        Dissimilarity::SquaredEuclidean,
        Dissimilarity::Cosine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dissimilarity::Euclidean => "euclidean",
            Dissimilarity::SquaredEuclidean => "sqeuclidean",
            Dissimilarity::Cosine => "cosine",
        }
    }

    /// Evaluates the measure on two raw vectors of equal length.
    pub fn eval(self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            Dissimilarity::Euclidean => squared_distance(x, y).sqrt(),
            Dissimilarity::SquaredEuclidean => squared_distance(x, y),
            Dissimilarity::Cosine => {
                let d = 1.0 - dot(x, y) / (norm(x) * norm(y));
                d.max(0.0)
            }
        }
    }
}

impl fmt::Display for Dissimilarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dissimilarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(Dissimilarity::Euclidean),
            "sqeuclidean" | "squared_euclidean" | "squared-euclidean" => {
                Ok(Dissimilarity::SquaredEuclidean)
            }
            "cosine" => Ok(Dissimilarity::Cosine),
            other => Err(Error::Config(format!("unknown dissimilarity {other:?}"))),
        }
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub(crate) fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Cardinality, centroid and population variance of a cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct SufficientStats {
    pub n: usize,
    pub centroid: Vec<f64>,
    pub variance: f64,
}

impl SufficientStats {
    pub fn singleton(point: &[f64]) -> Self {
        SufficientStats {
            n: 1,
            centroid: point.to_vec(),
            variance: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.centroid.len()
    }

    /// Stats of the disjoint union of the two underlying clusters.
    pub fn merge(&self, other: &SufficientStats) -> Result<SufficientStats> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.merge_unchecked(other))
    }

    pub(crate) fn merge_unchecked(&self, other: &SufficientStats) -> SufficientStats {
        let a = self.n as f64;
        let b = other.n as f64;
        let s = a + b;
        let centroid = self
            .centroid
            .iter()
            .zip(&other.centroid)
            .map(|(x, y)| (a * x + b * y) / s)
            .collect();
        let bias = squared_distance(&self.centroid, &other.centroid);
        let variance = a / s * self.variance + b / s * other.variance + a * b / (s * s) * bias;
        SufficientStats {
            n: self.n + other.n,
            centroid,
            variance,
        }
    }

    /// Sum of squared deviations from the centroid.
    pub fn sse(&self) -> f64 {
        self.n as f64 * self.variance
    }
}

/// Free-function form of [`SufficientStats::merge`].
pub fn merge_stats(a: &SufficientStats, b: &SufficientStats) -> Result<SufficientStats> {
    a.merge(b)
}

/// Labelled points of a common dimension together with a dissimilarity kind.
/// Points are stored in ascending label order; a point's index in that order
/// is its *position*.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    index_set: IndexSet,
    coords: Vec<f64>,
    dim: usize,
    kind: Dissimilarity,
}

impl Dataset {
    pub fn new<I>(points: I, kind: Dissimilarity) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, Vec<f64>)>,
    {
        let mut points: Vec<(Label, Vec<f64>)> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        points.sort_by_key(|(l, _)| *l);
        let index_set = IndexSet::new(points.iter().map(|(l, _)| *l))?;
        let dim = points[0].1.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (label, x) in &points {
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.len(),
                });
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteCoordinate(*label));
            }
            if kind == Dissimilarity::Cosine && norm(x) == 0.0 {
                return Err(Error::ZeroNormVector(*label));
            }
            coords.extend_from_slice(x);
        }
        Ok(Dataset {
            index_set,
            coords,
            dim,
            kind,
        })
    }

    /// 1-D dataset labelled `1..=n` in the given order.
    pub fn from_values(values: &[f64], kind: Dissimilarity) -> Result<Self> {
        Dataset::new(
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as Label + 1, vec![v])),
            kind,
        )
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> Dissimilarity {
        self.kind
    }

    pub fn labels(&self) -> &[Label] {
        self.index_set.labels()
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.labels().binary_search(&label).ok()
    }

    pub(crate) fn require_position(&self, label: Label) -> Result<usize> {
        self.position(label).ok_or(Error::UnknownLabel(label))
    }

    pub fn point(&self, label: Label) -> Result<&[f64]> {
        Ok(self.point_at(self.require_position(label)?))
    }

    pub fn point_at(&self, pos: usize) -> &[f64] {
        &self.coords[pos * self.dim..(pos + 1) * self.dim]
    }

    pub fn label_at(&self, pos: usize) -> Label {
        self.labels()[pos]
    }

    pub fn points(&self) -> impl Iterator<Item = (Label, &[f64])> + '_ {
        self.labels()
            .iter()
            .enumerate()
            .map(move |(p, &l)| (l, self.point_at(p)))
    }

    pub fn dissimilarity(&self, i: Label, j: Label) -> Result<f64> {
        let (p, q) = (self.require_position(i)?, self.require_position(j)?);
        Ok(self.dissimilarity_at(p, q))
    }

    pub(crate) fn dissimilarity_at(&self, p: usize, q: usize) -> f64 {
        if p == q {
            return 0.0;
        }
        self.kind.eval(self.point_at(p), self.point_at(q))
    }

    pub(crate) fn squared_distance_at(&self, p: usize, q: usize) -> f64 {
        squared_distance(self.point_at(p), self.point_at(q))
    }

    /// Positions of the cluster's labels, ascending.
    pub fn positions(&self, cluster: &Cluster) -> Result<Vec<usize>> {
        cluster
            .labels()
            .iter()
            .map(|&l| self.require_position(l))
            .collect()
    }

    /// Same points under another dissimilarity kind.
    pub fn with_kind(&self, kind: Dissimilarity) -> Result<Dataset> {
        Dataset::new(self.owned_points(), kind)
    }

    fn owned_points(&self) -> Vec<(Label, Vec<f64>)> {
        self.points().map(|(l, x)| (l, x.to_vec())).collect()
    }

    /// A copy with one extra point.
    pub fn with_point(&self, label: Label, point: Vec<f64>) -> Result<Dataset> {
        if self.index_set.contains(label) {
            return Err(Error::DuplicateLabel(label));
        }
        let mut pts = self.owned_points();
        pts.push((label, point));
        Dataset::new(pts, self.kind)
    }

    /// A copy with one point removed.
    pub fn without_point(&self, label: Label) -> Result<Dataset> {
        self.require_position(label)?;
        Dataset::new(
            self.owned_points().into_iter().filter(|(l, _)| *l != label),
            self.kind,
        )
    }

    /// A copy with every point scaled to unit Euclidean norm.
    pub fn normalized(&self) -> Result<Dataset> {
        let mut pts = self.owned_points();
        for (label, x) in &mut pts {
            let r = norm(x);
            if r == 0.0 {
                return Err(Error::ZeroNormVector(*label));
            }
            x.iter_mut().for_each(|v| *v /= r);
        }
        Dataset::new(pts, self.kind)
    }

    pub fn is_unit_norm(&self, tol: f64) -> bool {
        self.points().all(|(_, x)| (norm(x) - 1.0).abs() <= tol)
    }

    pub fn stats(&self, cluster: &Cluster) -> Result<SufficientStats> {
        Ok(self.stats_at(&self.positions(cluster)?))
    }

    /// Two-pass centroid and population variance over positions.
    pub(crate) fn stats_at(&self, positions: &[usize]) -> SufficientStats {
        let n = positions.len();
        let mut centroid = vec![0.0; self.dim];
        for &p in positions {
            for (c, x) in centroid.iter_mut().zip(self.point_at(p)) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= n as f64);
        let variance = positions
            .iter()
            .map(|&p| squared_distance(self.point_at(p), &centroid))
            .sum::<f64>()
            / n as f64;
        SufficientStats {
            n,
            centroid,
            variance,
        }
    }

    pub fn sse(&self, cluster: &Cluster) -> Result<f64> {
        Ok(self.stats(cluster)?.sse())
    }
}
