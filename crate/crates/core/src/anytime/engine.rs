//! Working state of one anytime run: a mutable arena plus per-node caches of
//! members, statistics and the two linkage values the homogeneity test reads.

use crate::error::{Error, Result};
use crate::geometry::SufficientStats;
use crate::hierarchy::merge_sorted;
use crate::hierarchy::topology::{NodeId, Topology};
use crate::hierarchy::{BinaryHierarchy, Cluster};
use crate::linkage::{Evaluator, Side};

pub(crate) struct Engine<'e, 'd> {
    ev: &'e Evaluator<'d>,
    topo: Topology,
    /// Sorted dataset positions under each node.
    members: Vec<Vec<usize>>,
    stats: Vec<Option<SufficientStats>>,
    /// ℓ(v, sibling(v)); 0 at the root.
    sib: Vec<f64>,
    /// ℓ(v, sibling(parent(v))); NaN unless v is a grandchild.
    uncle: Vec<f64>,
}

impl<'e, 'd> Engine<'e, 'd> {
    pub fn new(ev: &'e Evaluator<'d>, tree: &BinaryHierarchy) -> Result<Self> {
        let data = ev.data();
        if tree.index_set() != data.index_set() {
            return Err(Error::IndexSetMismatch);
        }
        let topo = tree.to_topology();
        let n = topo.len();
        let mut e = Engine {
            ev,
            members: vec![Vec::new(); n],
            stats: vec![None; n],
            sib: vec![0.0; n],
            uncle: vec![f64::NAN; n],
            topo,
        };
        let order = e.topo.preorder();
        for &v in order.iter().rev() {
            e.refresh_members(v);
        }
        for &v in &order {
            if let Some([a, b]) = e.topo.children[v] {
                e.set_sib_pair(a, b);
            }
            e.refresh_uncle(v);
        }
        Ok(e)
    }

    fn refresh_members(&mut self, v: NodeId) {
        match self.topo.children[v] {
            None => {
                let label = self.topo.label[v].expect("leaf carries a label");
                let p = self.ev.data().position(label).expect("index sets match");
                self.members[v] = vec![p];
                if self.ev.uses_stats() {
                    self.stats[v] = Some(SufficientStats::singleton(self.ev.data().point_at(p)));
                }
            }
            Some([a, b]) => {
                self.members[v] = merge_sorted(&self.members[a], &self.members[b]);
                if self.ev.uses_stats() {
                    let sa = self.stats[a].as_ref().expect("child stats");
                    let sb = self.stats[b].as_ref().expect("child stats");
                    self.stats[v] = Some(sa.merge_unchecked(sb));
                }
            }
        }
    }

    fn min_pos(&self, v: NodeId) -> usize {
        self.members[v][0]
    }

    /// Linkage with arguments in canonical (smaller minimum first) order, so
    /// a pair always evaluates to the same bits.
    fn link(&self, a: NodeId, b: NodeId) -> f64 {
        let (a, b) = if self.min_pos(a) < self.min_pos(b) {
            (a, b)
        } else {
            (b, a)
        };
        let side = |v: NodeId| Side {
            pos: &self.members[v],
            stats: self.stats[v].as_ref(),
        };
        self.ev.eval(side(a), side(b))
    }

    fn set_sib_pair(&mut self, a: NodeId, b: NodeId) {
        let v = self.link(a, b);
        self.sib[a] = v;
        self.sib[b] = v;
    }

    fn refresh_uncle(&mut self, v: NodeId) {
        self.uncle[v] = match self.topo.parent[v].and_then(|p| self.topo.sibling(p)) {
            Some(u) => self.link(v, u),
            None => f64::NAN,
        };
    }

    fn ordered_children(&self, v: NodeId) -> Option<[NodeId; 2]> {
        self.topo.children[v].map(|[a, b]| {
            if self.min_pos(a) < self.min_pos(b) {
                [a, b]
            } else {
                [b, a]
            }
        })
    }

    /// Strict failure of local homogeneity at grandchild `v`.
    pub fn violates(&self, v: NodeId) -> bool {
        let s = self.topo.sibling(v).expect("grandchild has a sibling");
        self.sib[v] > self.uncle[v].min(self.uncle[s])
    }

    pub fn is_grandchild(&self, v: NodeId) -> bool {
        self.topo.grandparent(v).is_some()
    }

    /// Pre-order nodes, smaller-minimum child first.
    fn scan(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.topo.len());
        let mut stack = vec![self.topo.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if let Some([a, b]) = self.ordered_children(v) {
                stack.push(b);
                stack.push(a);
            }
        }
        out
    }

    pub fn find_violation(&self) -> Option<NodeId> {
        let mut stack = vec![self.topo.root];
        while let Some(v) = stack.pop() {
            if self.is_grandchild(v) && self.violates(v) {
                return Some(v);
            }
            if let Some([a, b]) = self.ordered_children(v) {
                stack.push(b);
                stack.push(a);
            }
        }
        None
    }

    /// Restructures around the violation at grandchild `i`: the child of its
    /// parent farthest from the parent's sibling is swapped with that sibling.
    /// Returns the swapped node.
    pub fn step(&mut self, i: NodeId) -> NodeId {
        let p = self.topo.parent[i].expect("grandchild");
        let [c0, c1] = self.ordered_children(p).expect("parent is interior");
        let g = if self.uncle[c1] > self.uncle[c0] {
            c1
        } else {
            c0
        };
        let b = if g == c0 { c1 } else { c0 };
        let u = self.topo.sibling(p).expect("parent has a sibling");

        self.topo.nni_swap(g);
        self.refresh_members(p);
        self.set_sib_pair(b, u);
        self.set_sib_pair(p, g);
        for v in [b, u, p, g] {
            self.refresh_uncle(v);
        }
        for v in [b, u, g] {
            if let Some([x, y]) = self.topo.children[v] {
                self.refresh_uncle(x);
                self.refresh_uncle(y);
            }
        }
        g
    }

    pub fn cluster(&self, v: NodeId) -> Cluster {
        let data = self.ev.data();
        Cluster::new(self.members[v].iter().map(|&p| data.label_at(p))).expect("non-empty node")
    }

    pub fn tree(&self) -> BinaryHierarchy {
        BinaryHierarchy::from_topology(&self.topo)
    }

    pub fn n_leaves(&self) -> usize {
        self.members[self.topo.root].len()
    }

    /// Half the sum of cluster-to-sibling linkages over all clusters.
    pub fn objective_h(&self) -> f64 {
        0.5 * self.scan().into_iter().map(|v| self.sib[v]).sum::<f64>()
    }

    /// Entry `t − 1` holds half the linkage sum over clusters with `t` proper
    /// ancestors, for `t = 1..|J|−1`.
    pub fn level_profile(&self) -> Vec<f64> {
        let n = self.n_leaves();
        let mut out = vec![0.0; n.saturating_sub(1)];
        let mut stack = vec![(self.topo.root, 0usize)];
        while let Some((v, t)) = stack.pop() {
            if t > 0 {
                out[t - 1] += 0.5 * self.sib[v];
            }
            if let Some([a, b]) = self.ordered_children(v) {
                stack.push((b, t + 1));
                stack.push((a, t + 1));
            }
        }
        out
    }

    /// All cluster-to-sibling linkages (root as 0), ascending.
    pub fn sorted_profile(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.scan().into_iter().map(|v| self.sib[v]).collect();
        v.sort_by(f64::total_cmp);
        v
    }
    /// First grandchild in scan order whose sibling linkage exceeds its
    /// parent's.
    pub fn first_non_monotone(&self) -> Option<NodeId> {
        self.scan().into_iter().find(|&v| {
            self.is_grandchild(v)
                && self.sib[v] > self.sib[self.topo.parent[v].expect("grandchild")]
        })
    }

    /// `(left members, right members, linkage between them)` for every
    /// interior node.
    pub fn splits(&self) -> Vec<(&[usize], &[usize], f64)> {
        self.scan()
            .into_iter()
            .filter_map(|v| {
                self.ordered_children(v).map(|[a, b]| {
                    (
                        self.members[a].as_slice(),
                        self.members[b].as_slice(),
                        self.sib[a],
                    )
                })
            })
            .collect()
    }
}
