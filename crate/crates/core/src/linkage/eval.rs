use super::fast::{fast_average_unchecked, fast_ward};
use super::lance_williams::update_unchecked;
use super::{EvalStrategy, Linkage, LinkageKind};
use crate::error::Result;
use crate::geometry::{Dataset, SufficientStats};

/// Largest dataset for which the pairwise base values are tabulated.
const MATRIX_LIMIT: usize = 2048;

/// One argument of a linkage evaluation: sorted dataset positions, plus the
/// cluster's statistics when the caller already has them.
#[derive(Clone, Copy)]
pub(crate) struct Side<'a> {
    pub pos: &'a [usize],
    pub stats: Option<&'a SufficientStats>,
}

impl<'a> Side<'a> {
    pub fn new(pos: &'a [usize]) -> Self {
        Side { pos, stats: None }
    }
}

/// Linkage evaluator bound to one dataset and a resolved strategy.
pub(crate) struct Evaluator<'a> {
    data: &'a Dataset,
    kind: LinkageKind,
    strategy: EvalStrategy,
    matrix: Option<Vec<f64>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(data: &'a Dataset, linkage: Linkage) -> Result<Self> {
        let strategy = linkage.resolve(data)?;
        Ok(Evaluator {
            data,
            kind: linkage.kind,
            strategy,
            matrix: None,
        })
    }

    /// Tabulates pairwise base values when they would be read repeatedly.
    pub fn with_matrix(mut self) -> Self {
        let n = self.data.len();
        if self.strategy != EvalStrategy::SufficientStats && n <= MATRIX_LIMIT {
            let mut m = vec![0.0; n * n];
            for p in 0..n {
                for q in p + 1..n {
                    let v = self.compute_base(p, q);
                    m[p * n + q] = v;
                    m[q * n + p] = v;
                }
            }
            self.matrix = Some(m);
        }
        self
    }

    pub fn data(&self) -> &'a Dataset {
        self.data
    }

    pub fn uses_stats(&self) -> bool {
        self.strategy == EvalStrategy::SufficientStats
    }

    fn compute_base(&self, p: usize, q: usize) -> f64 {
        if self.kind == LinkageKind::Ward {
            0.5 * self.data.squared_distance_at(p, q)
        } else {
            self.data.dissimilarity_at(p, q)
        }
    }

    /// Linkage between the singletons at positions `p` and `q`.
    fn base(&self, p: usize, q: usize) -> f64 {
        match &self.matrix {
            Some(m) => m[p * self.data.len() + q],
            None => self.compute_base(p, q),
        }
    }

    pub fn stats_of(&self, pos: &[usize]) -> SufficientStats {
        self.data.stats_at(pos)
    }

    pub fn eval_positions(&self, a: &[usize], b: &[usize]) -> f64 {
        self.eval(Side::new(a), Side::new(b))
    }

    pub fn eval(&self, a: Side<'_>, b: Side<'_>) -> f64 {
        if a.pos.is_empty() || b.pos.is_empty() {
            return 0.0;
        }
        match self.strategy {
            EvalStrategy::SufficientStats => {
                let sa = a.stats.cloned().unwrap_or_else(|| self.stats_of(a.pos));
                let sb = b.stats.cloned().unwrap_or_else(|| self.stats_of(b.pos));
                match self.kind {
                    LinkageKind::Ward => fast_ward(&sa, &sb),
                    _ => fast_average_unchecked(&sa, &sb, self.data.kind()),
                }
            }
            EvalStrategy::Recurrence => self.recurrence(a.pos, b.pos),
            _ => self.direct(a.pos, b.pos),
        }
    }

    fn direct(&self, a: &[usize], b: &[usize]) -> f64 {
        let cross = || a.iter().flat_map(|&p| b.iter().map(move |&q| (p, q)));
        match self.kind {
            LinkageKind::Single => cross()
                .map(|(p, q)| self.base(p, q))
                .fold(f64::INFINITY, f64::min),
            LinkageKind::Complete => cross().map(|(p, q)| self.base(p, q)).fold(0.0, f64::max),
            LinkageKind::Average => {
                cross().map(|(p, q)| self.base(p, q)).sum::<f64>() / (a.len() * b.len()) as f64
            }
            LinkageKind::Minimax => {
                let all = || a.iter().chain(b);
                all()
                    .map(|&p| all().map(|&q| self.base(p, q)).fold(0.0, f64::max))
                    .fold(f64::INFINITY, f64::min)
            }
            LinkageKind::Ward => {
                let ca = centroid(self.data, a);
                let cb = centroid(self.data, b);
                let (na, nb) = (a.len() as f64, b.len() as f64);
                na * nb / (na + nb) * crate::geometry::squared_distance(&ca, &cb)
            }
        }
    }

    /// Splits the larger side in half and combines the three sub-linkages
    /// with the Lance–Williams update.
    fn recurrence(&self, a: &[usize], b: &[usize]) -> f64 {
        if a.len() == 1 && b.len() == 1 {
            return self.base(a[0], b[0]);
        }
        let (big, other) = if a.len() > b.len() || (a.len() == b.len() && a[0] < b[0]) {
            (a, b)
        } else {
            (b, a)
        };
        let (x, y) = big.split_at(big.len() / 2);
        let l_xc = self.recurrence(x, other);
        let l_yc = self.recurrence(y, other);
        let l_xy = if self.kind == LinkageKind::Ward {
            self.recurrence(x, y)
        } else {
            0.0
        };
        update_unchecked(self.kind, (x.len(), y.len(), other.len()), l_xc, l_yc, l_xy)
    }
}

fn centroid(data: &Dataset, pos: &[usize]) -> Vec<f64> {
    let mut c = vec![0.0; data.dim()];
    for &p in pos {
        for (s, x) in c.iter_mut().zip(data.point_at(p)) {
            *s += x;
        }
    }
    c.iter_mut().for_each(|s| *s /= pos.len() as f64);
    c
}
