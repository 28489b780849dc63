//! Newick text for binary hierarchies: integer leaf labels, no branch
//! lengths, no interior names, e.g. `((1,2),3);`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hierarchy::topology::{NodeId, Topology};
use crate::hierarchy::{BinaryHierarchy, Label};

/// Canonical Newick string (smaller-min child first).
pub fn write(tree: &BinaryHierarchy) -> String {
    enum Tok {
        Node(usize),
        Comma,
        Close,
    }
    let mut out = String::new();
    let mut stack = vec![Tok::Node(0)];
    while let Some(t) = stack.pop() {
        match t {
            Tok::Comma => out.push(','),
            Tok::Close => out.push(')'),
            Tok::Node(i) => match tree.node_children(i) {
                None => out.push_str(&tree.node_cluster(i).min_label().to_string()),
                Some([a, b]) => {
                    out.push('(');
                    stack.push(Tok::Close);
                    stack.push(Tok::Node(b));
                    stack.push(Tok::Comma);
                    stack.push(Tok::Node(a));
                }
            },
        }
    }
    out.push(';');
    out
}

struct Frame {
    open: usize,
    children: Vec<NodeId>,
}

/// Parses one Newick tree. Whitespace between tokens is ignored.
pub fn parse(text: &str) -> Result<BinaryHierarchy> {
    let bytes = text.as_bytes();
    let mut topo: Option<Topology> = None;
    let mut seen = HashSet::new();
    let mut frames: Vec<Frame> = Vec::new();
    let mut done: Option<NodeId> = None;
    // true when the next token must start a subtree
    let mut want_subtree = true;
    let mut i = 0;

    let new_leaf = |topo: &mut Option<Topology>, label: Label| match topo {
        None => {
            *topo = Some(Topology::with_leaf(label));
            0
        }
        Some(t) => t.add_leaf(label),
    };

    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if let Some(root) = done {
            if c == b';' {
                let rest = &text[i + 1..];
                if let Some(off) = rest.find(|ch: char| !ch.is_whitespace()) {
                    return Err(Error::parse(i + 1 + off, "unexpected text after ';'"));
                }
                let mut topo = topo.expect("a subtree was parsed");
                topo.root = root;
                return Ok(BinaryHierarchy::from_topology(&topo));
            }
            return Err(Error::parse(i, "expected ';' after the tree"));
        }
        match c {
            b'(' if want_subtree => {
                frames.push(Frame {
                    open: i,
                    children: Vec::new(),
                });
                i += 1;
            }
            b'0'..=b'9' if want_subtree => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let label: Label = text[start..i]
                    .parse()
                    .map_err(|_| Error::parse(start, "leaf label does not fit in 32 bits"))?;
                if !seen.insert(label) {
                    return Err(Error::DuplicateLabel(label));
                }
                let leaf = new_leaf(&mut topo, label);
                want_subtree = false;
                match frames.last_mut() {
                    Some(f) => f.children.push(leaf),
                    None => done = Some(leaf),
                }
            }
            b',' if !want_subtree && !frames.is_empty() => {
                want_subtree = true;
                i += 1;
            }
            b')' if !want_subtree && !frames.is_empty() => {
                let f = frames.pop().expect("checked non-empty");
                let t = topo.as_mut().expect("frame holds a subtree");
                if f.children.len() != 2 {
                    return Err(Error::NotBinary(text[f.open..=i].to_string()));
                }
                let node = t.join(f.children[0], f.children[1]);
                match frames.last_mut() {
                    Some(g) => g.children.push(node),
                    None => done = Some(node),
                }
                i += 1;
            }
            b':' => return Err(Error::parse(i, "branch lengths are not supported")),
            _ if want_subtree => return Err(Error::parse(i, "expected a leaf label or '('")),
            _ => return Err(Error::parse(i, "expected ',' or ')'")),
        }
    }
    Err(Error::parse(bytes.len(), "unexpected end of input"))
}
