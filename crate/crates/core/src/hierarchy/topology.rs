//! Mutable arena used while building or restructuring a tree. Node ids are
//! stable across NNI swaps, which lets the anytime engine keep per-node caches.

use super::cluster::Label;

pub(crate) type NodeId = usize;

#[derive(Clone, Debug)]
pub(crate) struct Topology {
    pub label: Vec<Option<Label>>,
    pub parent: Vec<Option<NodeId>>,
    pub children: Vec<Option<[NodeId; 2]>>,
    pub root: NodeId,
}

impl Topology {
    pub fn with_leaf(label: Label) -> Self {
        Topology {
            label: vec![Some(label)],
            parent: vec![None],
            children: vec![None],
            root: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn sibling(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v]?;
        let [a, b] = self.children[p].expect("parent has children");
        Some(if a == v { b } else { a })
    }

    pub fn grandparent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v].and_then(|p| self.parent[p])
    }

    fn push(&mut self, label: Option<Label>, children: Option<[NodeId; 2]>) -> NodeId {
        let id = self.label.len();
        self.label.push(label);
        self.parent.push(None);
        self.children.push(children);
        id
    }

    pub fn add_leaf(&mut self, label: Label) -> NodeId {
        self.push(Some(label), None)
    }

    /// New interior node over two detached subtrees.
    pub fn join(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let w = self.push(None, Some([a, b]));
        self.parent[a] = Some(w);
        self.parent[b] = Some(w);
        w
    }

    fn replace_child(&mut self, parent: Option<NodeId>, old: NodeId, new: NodeId) {
        match parent {
            Some(p) => {
                let ch = self.children[p].as_mut().expect("parent has children");
                if ch[0] == old {
                    ch[0] = new;
                } else {
                    debug_assert_eq!(ch[1], old);
                    ch[1] = new;
                }
            }
            None => self.root = new,
        }
        self.parent[new] = parent;
    }

    /// Attaches a new leaf as the sibling of `v`; returns the new leaf.
    pub fn attach_sibling(&mut self, v: NodeId, label: Label) -> NodeId {
        let up = self.parent[v];
        let leaf = self.add_leaf(label);
        let w = self.push(None, Some([v, leaf]));
        self.replace_child(up, v, w);
        self.parent[v] = Some(w);
        self.parent[leaf] = Some(w);
        leaf
    }

    /// NNI swap of grandchild `g` with its parent's sibling. Returns the
    /// parent node, whose cluster is now `sibling(g) ∪ sibling(parent)`.
    pub fn nni_swap(&mut self, g: NodeId) -> NodeId {
        let p = self.parent[g].expect("grandchild has a parent");
        let u = self.sibling(p).expect("grandchild has a grandparent");
        let q = self.parent[p].expect("grandchild has a grandparent");
        self.replace_child(Some(p), g, u);
        self.replace_child(Some(q), u, g);
        p
    }

    /// Removes leaf `v` and splices out its parent. Node ids are not
    /// compacted; the removed nodes become unreachable.
    pub fn remove_leaf(&mut self, v: NodeId) {
        let p = self.parent[v].expect("cannot remove the only leaf");
        let s = self.sibling(v).expect("leaf has a sibling");
        let up = self.parent[p];
        self.replace_child(up, p, s);
        self.parent[v] = None;
        self.parent[p] = None;
        self.children[p] = None;
    }

    /// Reachable node ids in pre-order, children in stored order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if let Some([a, b]) = self.children[v] {
                stack.push(b);
                stack.push(a);
            }
        }
        out
    }
}
