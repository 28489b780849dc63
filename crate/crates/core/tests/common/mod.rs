//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the library's evaluators.
#![allow(dead_code)]

use std::collections::BTreeSet;

use anyhier::{BinaryHierarchy, Cluster, Dataset, Dissimilarity, Label, LinkageKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dist(kind: Dissimilarity, x: &[f64], y: &[f64]) -> f64 {
    let sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    match kind {
        Dissimilarity::Euclidean => sq.sqrt(),
        Dissimilarity::SquaredEuclidean => sq,
        Dissimilarity::Cosine => {
            let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
            1.0 - dot / (nx * ny)
        }
    }
}

pub fn centroid(pts: &[&[f64]]) -> Vec<f64> {
    let mut c = vec![0.0; pts[0].len()];
    for p in pts {
        for (ci, x) in c.iter_mut().zip(p.iter()) {
            *ci += x;
        }
    }
    c.iter().map(|x| x / pts.len() as f64).collect()
}

pub fn sse_of(pts: &[&[f64]]) -> f64 {
    let c = centroid(pts);
    pts.iter()
        .map(|p| {
            p.iter()
                .zip(&c)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        })
        .sum()
}

/// Pairwise dissimilarities, indexed by label position in the dataset.
pub struct Oracle<'a> {
    pub data: &'a Dataset,
    n: usize,
    d: Vec<f64>,
}

impl<'a> Oracle<'a> {
    pub fn new(data: &'a Dataset) -> Self {
        let n = data.len();
        let mut d = vec![0.0; n * n];
        for p in 0..n {
            for q in 0..n {
                d[p * n + q] = dist(data.kind(), data.point_at(p), data.point_at(q));
            }
        }
        Oracle { data, n, d }
    }

    fn pos(&self, labels: &[Label]) -> Vec<usize> {
        labels
            .iter()
            .map(|&l| self.data.position(l).expect("known label"))
            .collect()
    }

    pub fn link(&self, kind: LinkageKind, a: &[Label], b: &[Label]) -> f64 {
        let (pa, pb) = (self.pos(a), self.pos(b));
        let n = self.n;
        let pairs = || {
            pa.iter()
                .flat_map(|&p| pb.iter().map(move |&q| self.d[p * n + q]))
        };
        match kind {
            LinkageKind::Single => pairs().fold(f64::INFINITY, f64::min),
            LinkageKind::Complete => pairs().fold(f64::NEG_INFINITY, f64::max),
            LinkageKind::Average => pairs().sum::<f64>() / (pa.len() * pb.len()) as f64,
            LinkageKind::Minimax => {
                let all: Vec<usize> = pa.iter().chain(&pb).copied().collect();
                all.iter()
                    .map(|&p| all.iter().map(|&q| self.d[p * n + q]).fold(0.0, f64::max))
                    .fold(f64::INFINITY, f64::min)
            }
            LinkageKind::Ward => {
                let ptsa: Vec<&[f64]> = pa.iter().map(|&p| self.data.point_at(p)).collect();
                let ptsb: Vec<&[f64]> = pb.iter().map(|&p| self.data.point_at(p)).collect();
                let (ca, cb) = (centroid(&ptsa), centroid(&ptsb));
                let sq: f64 = ca.iter().zip(&cb).map(|(x, y)| (x - y) * (x - y)).sum();
                let (na, nb) = (pa.len() as f64, pb.len() as f64);
                na * nb / (na + nb) * sq
            }
        }
    }

    pub fn link_c(&self, kind: LinkageKind, a: &Cluster, b: &Cluster) -> f64 {
        self.link(kind, a.labels(), b.labels())
    }

    /// `(H, level profile, sorted profile)` of a tree.
    pub fn profiles(&self, kind: LinkageKind, tree: &BinaryHierarchy) -> (f64, Vec<f64>, Vec<f64>) {
        let depth: std::collections::HashMap<&Cluster, usize> = tree.depths().collect();
        let mut h = 0.0;
        let mut level = vec![0.0; tree.n_leaves().saturating_sub(1)];
        let mut sorted = vec![0.0];
        for (p, l, r) in tree.splits() {
            let v = self.link_c(kind, l, r);
            h += v;
            // children of a depth-d parent have d proper ancestors
            level[depth[p] - 1] += v;
            sorted.push(v);
            sorted.push(v);
        }
        sorted.sort_by(f64::total_cmp);
        (h, level, sorted)
    }

    /// First grandchild violating local homogeneity by more than `tol`
    /// (relative), in the library's scan order.
    pub fn violation(
        &self,
        kind: LinkageKind,
        tree: &BinaryHierarchy,
        tol: f64,
    ) -> Option<Cluster> {
        for g in tree.grandchildren() {
            let s = tree.sibling(g).unwrap().unwrap();
            let p = tree.parent(g).unwrap().unwrap();
            let u = tree.sibling(p).unwrap().unwrap();
            let lhs = self.link_c(kind, g, s);
            let rhs = self.link_c(kind, g, u).min(self.link_c(kind, s, u));
            if lhs > rhs + tol * lhs.abs().max(1.0) {
                return Some(g.clone());
            }
        }
        None
    }
}

/// Single-linkage cluster set via Kruskal on the complete graph.
pub fn mst_single_linkage(data: &Dataset) -> BTreeSet<Cluster> {
    let n = data.len();
    let mut edges = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            edges.push((dist(data.kind(), data.point_at(p), data.point_at(q)), p, q));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut comp: Vec<Vec<Label>> = (0..n).map(|p| vec![data.label_at(p)]).collect();
    let mut owner: Vec<usize> = (0..n).collect();
    let mut out: BTreeSet<Cluster> = comp
        .iter()
        .map(|c| Cluster::new(c.clone()).unwrap())
        .collect();
    for (_, p, q) in edges {
        let (a, b) = (owner[p], owner[q]);
        if a == b {
            continue;
        }
        let moved = std::mem::take(&mut comp[b]);
        for l in &moved {
            owner[data.position(*l).unwrap()] = a;
        }
        comp[a].extend(moved);
        out.insert(Cluster::new(comp[a].clone()).unwrap());
    }
    out
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Cophenetic correlation by the definition: the height of a pair is the
/// linkage between the two children of their lowest common cluster.
pub fn cophenetic_oracle(data: &Dataset, kind: LinkageKind, tree: &BinaryHierarchy) -> f64 {
    let height_kind = if kind == LinkageKind::Ward {
        LinkageKind::Average
    } else {
        kind
    };
    let o = Oracle::new(data);
    let labels = data.labels();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            let (_, l, r) = tree
                .splits()
                .filter(|(p, _, _)| p.contains(a) && p.contains(b))
                .min_by_key(|(p, _, _)| p.len())
                .unwrap();
            ys.push(o.link_c(height_kind, l, r));
            xs.push(dist(
                Dissimilarity::Euclidean,
                data.point(a).unwrap(),
                data.point(b).unwrap(),
            ));
        }
    }
    pearson(&xs, &ys)
}

/// Uniform points in `[0, 1]^dim` with labels `1..=n`.
pub fn random_dataset(r: &mut impl Rng, n: usize, dim: usize, kind: Dissimilarity) -> Dataset {
    let pts = (1..=n as Label).map(|l| (l, (0..dim).map(|_| r.gen::<f64>()).collect::<Vec<_>>()));
    Dataset::new(pts, kind).unwrap()
}

/// Random points on the unit sphere in `dim` dimensions.
pub fn random_unit_dataset(r: &mut impl Rng, n: usize, dim: usize) -> Dataset {
    let pts = (1..=n as Label).map(|l| {
        let v: Vec<f64> = (0..dim)
            .map(|_| r.gen::<f64>() * 2.0 - 1.0 + 1e-3)
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        (l, v.iter().map(|x| x / norm).collect::<Vec<_>>())
    });
    Dataset::new(pts, Dissimilarity::Cosine).unwrap()
}

/// Lexicographic comparison where entries within `tol` (relative) are equal.
pub fn lex_cmp(a: &[f64], b: &[f64], tol: f64) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol * x.abs().max(y.abs()).max(1.0) {
            return x.total_cmp(y);
        }
    }
    a.len().cmp(&b.len())
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
