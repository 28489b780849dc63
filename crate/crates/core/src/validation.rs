//! Tree-induced ultrametric and cophenetic correlation.

use std::io::Write;

use crate::anytime::{evaluator, Engine};
use crate::error::{Error, Result};
use crate::geometry::{Dataset, Dissimilarity};
use crate::hierarchy::{BinaryHierarchy, Label};
use crate::linkage::{EvalStrategy, Linkage, LinkageKind};

/// Symmetric matrix indexed by the dataset's labels in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct CopheneticMatrix {
    pub labels: Vec<Label>,
    values: Vec<f64>,
}

impl CopheneticMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Entry at positions `(p, q)` of [`labels`](Self::labels).
    pub fn at(&self, p: usize, q: usize) -> f64 {
        self.values[p * self.len() + q]
    }

    pub fn get(&self, i: Label, j: Label) -> Option<f64> {
        let p = self.labels.binary_search(&i).ok()?;
        let q = self.labels.binary_search(&j).ok()?;
        Some(self.at(p, q))
    }

    /// CSV with a `label` header column followed by one column per label.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["label".to_string()];
        header.extend(self.labels.iter().map(|l| l.to_string()));
        w.write_record(&header)?;
        for (p, l) in self.labels.iter().enumerate() {
            let mut row = vec![l.to_string()];
            row.extend((0..self.len()).map(|q| format!("{:?}", self.at(p, q))));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Linkage used to read heights off a tree; Ward trees are read with average
/// linkage.
fn height_linkage(linkage: Linkage) -> Linkage {
    match linkage.kind {
        LinkageKind::Ward => Linkage::new(LinkageKind::Average, EvalStrategy::Direct),
        _ => linkage,
    }
}

/// `U_ij` is the linkage between the two children of the smallest cluster
/// containing both `i` and `j`; the diagonal is 0.
pub fn cophenetic_matrix(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<CopheneticMatrix> {
    let ev = evaluator(data, height_linkage(linkage.into()))?;
    let engine = Engine::new(&ev, tree)?;
    let n = data.len();
    let mut values = vec![0.0; n * n];
    for (left, right, h) in engine.splits() {
        for &p in left {
            for &q in right {
                values[p * n + q] = h;
                values[q * n + p] = h;
            }
        }
    }
    Ok(CopheneticMatrix {
        labels: data.labels().to_vec(),
        values,
    })
}

/// Pearson correlation over pairs `i < j` between Euclidean point distances
/// and the tree's cophenetic heights.
pub fn cophenetic_correlation(
    data: &Dataset,
    linkage: impl Into<Linkage>,
    tree: &BinaryHierarchy,
) -> Result<f64> {
    let u = cophenetic_matrix(data, linkage, tree)?;
    let n = data.len();
    if n < 3 {
        return Err(Error::DegenerateVariance(format!(
            "{n} points give fewer than 3 distinct pairs"
        )));
    }
    let mut xs = Vec::with_capacity(n * (n - 1) / 2);
    let mut ys = Vec::with_capacity(xs.capacity());
    for p in 0..n {
        for q in p + 1..n {
            xs.push(Dissimilarity::Euclidean.eval(data.point_at(p), data.point_at(q)));
            ys.push(u.at(p, q));
        }
    }
    pearson(&xs, &ys)
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateVariance(
            "point distances are constant".into(),
        ));
    }
    if syy == 0.0 {
        return Err(Error::DegenerateVariance(
            "cophenetic heights are constant".into(),
        ));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
