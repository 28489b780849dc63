//! Batch comparison of hac, anytime-from-random and incremental clustering
//! over repeated random trials.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;

use crate::anytime::{run, AnytimeConfig};
use crate::error::{Error, Result};
use crate::geometry::{Dataset, Dissimilarity};
use crate::hac::hac;
use crate::hierarchy::random_tree;
use crate::incremental::insert_point_with_stats;
use crate::io::idx::MnistCorpus;
use crate::io::synthetic::gen_uniform_square;
use crate::linkage::{Linkage, LinkageKind};
use crate::validation::cophenetic_correlation;

#[derive(Clone, Debug)]
pub enum DataSource {
    /// Uniform points in the unit square.
    Synthetic,
    /// Balanced digit samples; sizes must be multiples of 10.
    Mnist(Arc<MnistCorpus>),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub kinds: Vec<LinkageKind>,
    pub source: DataSource,
    pub dissimilarity: Dissimilarity,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sizes: vec![10, 20, 30, 40, 50],
            trials: 100,
            kinds: LinkageKind::ALL.to_vec(),
            source: DataSource::Synthetic,
            dissimilarity: Dissimilarity::Euclidean,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.sizes.is_empty() {
            return bad("at least one size is required".into());
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.kinds.is_empty() {
            return bad("at least one linkage kind is required".into());
        }
        for &n in &self.sizes {
            if n < 2 {
                return bad(format!("size {n} is below 2"));
            }
            if matches!(self.source, DataSource::Mnist(_)) && n % 10 != 0 {
                return bad(format!("size {n} is not a multiple of 10"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Hac,
    Anytime,
    Incremental,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Hac, Method::Anytime, Method::Incremental];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hac => "hac",
            Method::Anytime => "anytime",
            Method::Incremental => "incremental",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Iterations,
    Cophenetic,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Iterations => "iterations",
            Metric::Cophenetic => "cophenetic",
        }
    }
}

/// Raw per-trial measurements for one linkage kind. Cophenetic values are
/// `None` where the correlation is undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub n: usize,
    pub trial: usize,
    pub kind: LinkageKind,
    pub hac_rho: Option<f64>,
    pub anytime_iterations: usize,
    pub anytime_rho: Option<f64>,
    /// Steps after inserting the last point into a homogeneous tree on the
    /// other `n − 1` points.
    pub incremental_iterations: usize,
    pub incremental_rho: Option<f64>,
}

impl TrialResult {
    fn value(&self, method: Method, metric: Metric) -> Option<f64> {
        match (method, metric) {
            (Method::Hac, Metric::Iterations) => None,
            (Method::Hac, Metric::Cophenetic) => self.hac_rho,
            (Method::Anytime, Metric::Iterations) => Some(self.anytime_iterations as f64),
            (Method::Anytime, Metric::Cophenetic) => self.anytime_rho,
            (Method::Incremental, Metric::Iterations) => Some(self.incremental_iterations as f64),
            (Method::Incremental, Metric::Cophenetic) => self.incremental_rho,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub kind: LinkageKind,
    pub method: Method,
    pub metric: Metric,
    pub mean: f64,
    /// Sample variance (divisor `count − 1`); 0 for a single value.
    pub variance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
    pub trials: Vec<TrialResult>,
}

pub const REPORT_HEADER: &str = "n,kind,method,metric,mean,variance";

impl ExperimentReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{REPORT_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{:?},{:?}",
                r.n,
                r.kind,
                r.method,
                r.metric.name(),
                r.mean,
                r.variance
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn row(
        &self,
        n: usize,
        kind: LinkageKind,
        method: Method,
        metric: Metric,
    ) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.kind == kind && r.method == method && r.metric == metric)
    }
}

/// Per-trial seed; a function of the base seed, size and trial index only,
/// so results do not depend on scheduling.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (trial as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rho(
    data: &Dataset,
    kind: LinkageKind,
    tree: &crate::hierarchy::BinaryHierarchy,
) -> Result<Option<f64>> {
    match cophenetic_correlation(data, kind, tree) {
        Ok(r) => Ok(Some(r)),
        Err(Error::DegenerateVariance(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn sample(config: &ExperimentConfig, n: usize, seed: u64) -> Result<Dataset> {
    let data = match &config.source {
        DataSource::Synthetic => gen_uniform_square(n, seed)?,
        DataSource::Mnist(corpus) => corpus.sample(n / 10, seed)?,
    };
    if data.kind() == config.dissimilarity {
        Ok(data)
    } else {
        data.with_kind(config.dissimilarity)
    }
}

/// Runs every `(n, trial)` pair for every kind. The dataset and the random
/// initial trees of a trial are shared by all kinds.
pub fn run_trial(config: &ExperimentConfig, n: usize, trial: usize) -> Result<Vec<TrialResult>> {
    let seed = trial_seed(config.seed, n, trial);
    let data = sample(config, n, seed)?;
    let start = random_tree(data.index_set(), seed.wrapping_add(1))?;

    // incremental arm: homogeneous tree on all but the last label, then insert it
    let last = *data.labels().last().expect("non-empty");
    let last_point = data.point(last)?.to_vec();
    let rest = data.without_point(last)?;
    let rest_start = if rest.len() >= 2 {
        Some(random_tree(rest.index_set(), seed.wrapping_add(2))?)
    } else {
        None
    };
    let config_run = AnytimeConfig {
        max_iterations: None,
        record_profiles: false,
    };

    let mut out = Vec::with_capacity(config.kinds.len());
    for &kind in &config.kinds {
        let linkage = Linkage::from(kind);
        let ev = crate::anytime::evaluator(&data, linkage)?;

        let hac_tree = hac(&data, linkage)?;
        let any = run(&ev, &start, &config_run)?;

        let base = match &rest_start {
            Some(t) => {
                let ev_rest = crate::anytime::evaluator(&rest, linkage)?;
                run(&ev_rest, t, &config_run)?.final_tree
            }
            None => crate::hierarchy::BinaryHierarchy::from_cluster_set(
                rest.index_set(),
                [rest.index_set().as_cluster()],
            )?,
        };
        let ins = insert_point_with_stats(&rest, linkage, &base, last, last_point.clone())?;
        let inc = run(&ev, &ins.tree, &config_run)?;

        out.push(TrialResult {
            n,
            trial,
            kind,
            hac_rho: rho(&data, kind, &hac_tree)?,
            anytime_iterations: any.iterations,
            anytime_rho: rho(&data, kind, &any.final_tree)?,
            incremental_iterations: inc.iterations,
            incremental_rho: rho(&data, kind, &inc.final_tree)?,
        });
    }
    Ok(out)
}

fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = if xs.len() < 2 {
        0.0
    } else {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0)
    };
    (mean, var)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let per_job = jobs
        .par_iter()
        .map(|&(n, t)| run_trial(config, n, t))
        .collect::<Result<Vec<_>>>()?;
    let trials: Vec<TrialResult> = per_job.into_iter().flatten().collect();

    let mut rows = Vec::new();
    for &n in &config.sizes {
        for &kind in &config.kinds {
            for method in Method::ALL {
                for metric in [Metric::Iterations, Metric::Cophenetic] {
                    let xs: Vec<f64> = trials
                        .iter()
                        .filter(|r| r.n == n && r.kind == kind)
                        .filter_map(|r| r.value(method, metric))
                        .collect();
                    if xs.is_empty() {
                        continue;
                    }
                    let (mean, variance) = mean_and_variance(&xs);
                    rows.push(ReportRow {
                        n,
                        kind,
                        method,
                        metric,
                        mean,
                        variance,
                    });
                }
            }
        }
    }
    Ok(ExperimentReport { rows, trials })
}
