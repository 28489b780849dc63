use std::fmt;

use crate::error::{Error, Result};

/// Leaf label. Labels are non-negative integers.
pub type Label = u32;

/// A non-empty set of leaf labels, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster(Vec<Label>);

impl Cluster {
    pub fn new<I: IntoIterator<Item = Label>>(labels: I) -> Result<Self> {
        let mut v: Vec<Label> = labels.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptyCluster);
        }
        v.sort_unstable();
        v.dedup();
        Ok(Cluster(v))
    }

    pub fn singleton(label: Label) -> Self {
        Cluster(vec![label])
    }

    /// Wraps a vector already known to be sorted, unique and non-empty.
    pub(crate) fn from_sorted(v: Vec<Label>) -> Self {
        debug_assert!(!v.is_empty());
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Cluster(v)
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    pub fn min_label(&self) -> Label {
        self.0[0]
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn is_subset(&self, other: &Cluster) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|l| other.contains(*l))
    }

    pub fn is_disjoint(&self, other: &Cluster) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Cluster) -> Cluster {
        let mut v = merge_sorted(&self.0, &other.0);
        v.dedup();
        Cluster(v)
    }

    /// Labels of `self` not in `other`; `None` when nothing remains.
    pub fn difference(&self, other: &Cluster) -> Option<Cluster> {
        let v: Vec<Label> = self
            .0
            .iter()
            .copied()
            .filter(|l| !other.contains(*l))
            .collect();
        (!v.is_empty()).then_some(Cluster(v))
    }

    pub fn intersection(&self, other: &Cluster) -> Option<Cluster> {
        let v: Vec<Label> = self
            .0
            .iter()
            .copied()
            .filter(|l| other.contains(*l))
            .collect();
        (!v.is_empty()).then_some(Cluster(v))
    }

    /// Labels joined with `sep`, e.g. `1;2;5`.
    pub fn joined(&self, sep: &str) -> String {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        parts.join(sep)
    }
}

impl AsRef<[Label]> for Cluster {
    fn as_ref(&self) -> &[Label] {
        &self.0
    }
}

/// Panics on an empty array.
impl<const N: usize> From<[Label; N]> for Cluster {
    fn from(labels: [Label; N]) -> Self {
        Cluster::new(labels).expect("cluster literal must be non-empty")
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.joined(","))
    }
}

impl fmt::Debug for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ordered set of distinct leaf labels a hierarchy is built over.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet(Vec<Label>);

impl IndexSet {
    pub fn new<I: IntoIterator<Item = Label>>(labels: I) -> Result<Self> {
        let mut v: Vec<Label> = labels.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0]));
        }
        Ok(IndexSet(v))
    }

    /// `{1, ..., n}`.
    pub fn range(n: usize) -> Result<Self> {
        IndexSet::new(1..=n as Label)
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn as_cluster(&self) -> Cluster {
        Cluster(self.0.clone())
    }
}

pub(crate) fn merge_sorted<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
