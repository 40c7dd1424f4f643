//! Complete ternary trees and root-to-leaf Pauli string extraction.
//!
//! Nodes live in an arena of `3N + 1` slots. Ids `0..=2N` are leaves (leaf
//! `i` carries string `S_i`), ids `2N+1..=3N` are internal nodes and internal
//! node `2N + 1 + q` stands for qubit `q`. A string is read off the path from
//! the root: every internal node on the path contributes `X`, `Y` or `Z` on
//! its qubit according to the branch taken.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    X,
    Y,
    Z,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::X, Branch::Y, Branch::Z];

    pub fn pauli(self) -> Pauli {
        match self {
            Branch::X => Pauli::X,
            Branch::Y => Pauli::Y,
            Branch::Z => Pauli::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Node {
    /// `[x, y, z]` child ids, set once the node has been grown.
    pub children: Option<[usize; 3]>,
    pub parent: Option<(usize, Branch)>,
}

/// A (possibly still growing) ternary tree over `2N + 1` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTree {
    n_modes: usize,
    nodes: Vec<Node>,
}

impl TernaryTree {
    /// All `2N + 1` leaves and `N` ungrown internal slots, no edges yet.
    pub fn forest(n_modes: usize) -> Self {
        Self { n_modes, nodes: vec![Node::default(); 3 * n_modes + 1] }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_leaves(&self) -> usize {
        2 * self.n_modes + 1
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        id < self.n_leaves()
    }

    /// Arena id of the internal node standing for `qubit`.
    pub fn internal_id(&self, qubit: usize) -> usize {
        self.n_leaves() + qubit
    }

    /// Qubit of an internal node id.
    pub fn qubit_of(&self, id: usize) -> Option<usize> {
        (id >= self.n_leaves() && id < self.nodes.len()).then(|| id - self.n_leaves())
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn children(&self, id: usize) -> Option<[usize; 3]> {
        self.nodes[id].children
    }

    pub fn parent(&self, id: usize) -> Option<(usize, Branch)> {
        self.nodes[id].parent
    }

    /// Makes `children` the X, Y and Z children of internal node `id`.
    pub fn attach(&mut self, id: usize, children: [usize; 3]) -> Result<()> {
        if self.qubit_of(id).is_none() {
            return Err(Error::Construction(format!("node {id} is not an internal slot")));
        }
        if self.nodes[id].children.is_some() {
            return Err(Error::Construction(format!("node {id} already has children")));
        }
        for (k, &c) in children.iter().enumerate() {
            if c >= self.nodes.len() || c == id {
                return Err(Error::Construction(format!("invalid child {c} for node {id}")));
            }
            if self.nodes[c].parent.is_some() {
                return Err(Error::Construction(format!("node {c} already has a parent")));
            }
            if children[..k].contains(&c) {
                return Err(Error::Construction(format!("node {c} attached twice under {id}")));
            }
        }
        for (c, b) in children.into_iter().zip(Branch::ALL) {
            self.nodes[c].parent = Some((id, b));
        }
        self.nodes[id].children = Some(children);
        Ok(())
    }

    /// The unique root, if the tree is complete.
    pub fn root(&self) -> Result<usize> {
        self.validate()?;
        Ok(self.nodes.iter().position(|n| n.parent.is_none()).expect("validated tree has a root"))
    }

    /// Checks completeness: every internal slot grown, one root, all nodes reachable.
    pub fn validate(&self) -> Result<()> {
        let incomplete = |why: String| Err(Error::Construction(format!("incomplete tree: {why}")));
        if let Some(q) = (0..self.n_modes).find(|&q| self.nodes[self.internal_id(q)].children.is_none()) {
            return incomplete(format!("qubit {q} has no children"));
        }
        let roots: Vec<usize> = (0..self.nodes.len()).filter(|&i| self.nodes[i].parent.is_none()).collect();
        if roots.len() != 1 {
            return incomplete(format!("{} parentless nodes", roots.len()));
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![roots[0]];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id], true) {
                return incomplete(format!("node {id} reached twice"));
            }
            if let Some(ch) = self.nodes[id].children {
                stack.extend(ch);
            }
        }
        if let Some(id) = seen.iter().position(|s| !s) {
            return incomplete(format!("node {id} unreachable from root"));
        }
        Ok(())
    }

    /// Follows Z children down to a leaf. Leaves return themselves.
    pub fn desc_z(&self, mut id: usize) -> usize {
        while let Some([_, _, z]) = self.nodes[id].children {
            id = z;
        }
        id
    }

    /// One string per leaf, indexed by leaf id, with phase `i^0`.
    pub fn extract_strings(&self) -> Result<Vec<PauliString>> {
        self.validate()?;
        Ok((0..self.n_leaves()).map(|leaf| self.leaf_string(leaf)).collect())
    }

    fn leaf_string(&self, leaf: usize) -> PauliString {
        let mut s = PauliString::identity(self.n_modes);
        let mut id = leaf;
        while let Some((p, b)) = self.nodes[id].parent {
            s.set(p - self.n_leaves(), b.pauli());
            id = p;
        }
        s
    }

    /// Number of internal nodes on the root-to-leaf path, i.e. the weight of `S_leaf`.
    pub fn depth(&self, leaf: usize) -> usize {
        let mut d = 0;
        let mut id = leaf;
        while let Some((p, _)) = self.nodes[id].parent {
            d += 1;
            id = p;
        }
        d
    }

    /// Minimal-depth tree: internal nodes in breadth-first (heap) order, with
    /// internal node `k` on qubit `k` and children `3k+1..=3k+3` when those are
    /// internal. Leaves are labelled left to right.
    pub fn build_balanced(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidArgument("balanced tree needs at least one mode".into()));
        }
        let mut tree = Self::forest(n_modes);
        let mut next_leaf = 0;
        // depth-first so leaf labels follow left-to-right order
        fn grow(tree: &mut TernaryTree, k: usize, next_leaf: &mut usize) -> usize {
            let mut children = [0; 3];
            for (b, slot) in children.iter_mut().enumerate() {
                let child = 3 * k + 1 + b;
                *slot = if child < tree.n_modes {
                    grow(tree, child, next_leaf)
                } else {
                    *next_leaf += 1;
                    *next_leaf - 1
                };
            }
            let id = tree.internal_id(k);
            tree.attach(id, children).expect("fresh heap slots");
            id
        }
        grow(&mut tree, 0, &mut next_leaf);
        debug_assert_eq!(next_leaf, tree.n_leaves());
        Ok(tree)
    }

    /// Renames leaves: leaf `l` becomes `perm[l]`. `perm` must be a permutation of `0..=2N`.
    pub fn relabel_leaves(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_leaves();
        let mut check = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut check[p], true)) {
            return Err(Error::InvalidArgument("leaf relabelling is not a permutation".into()));
        }
        let map = |id: usize| if id < n { perm[id] } else { id };
        let mut out = Self::forest(self.n_modes);
        for (id, node) in self.nodes.iter().enumerate() {
            let slot = &mut out.nodes[map(id)];
            slot.children = node.children.map(|c| c.map(map));
            slot.parent = node.parent.map(|(p, b)| (map(p), b));
        }
        Ok(out)
    }

    /// S-expression dump: `(q0 (X leaf0) (Y leaf1) (Z (q1 …)))`.
    pub fn to_sexpr(&self) -> Result<String> {
        let root = self.root()?;
        let mut out = String::new();
        self.write_sexpr(root, &mut out);
        Ok(out)
    }

    fn write_sexpr(&self, id: usize, out: &mut String) {
        match self.nodes[id].children {
            None => {
                let _ = write!(out, "leaf{id}");
            }
            Some(ch) => {
                let _ = write!(out, "(q{}", id - self.n_leaves());
                for (c, b) in ch.into_iter().zip(["X", "Y", "Z"]) {
                    let _ = write!(out, " ({b} ");
                    self.write_sexpr(c, out);
                    out.push(')');
                }
                out.push(')');
            }
        }
    }

    /// Parses the format written by [`TernaryTree::to_sexpr`].
    pub fn from_sexpr(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let parsed = parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(sexpr_err("trailing input"));
        }
        let mut leaves = Vec::new();
        let mut qubits = Vec::new();
        parsed.collect(&mut leaves, &mut qubits);
        let n = qubits.len();
        leaves.sort_unstable();
        qubits.sort_unstable();
        if leaves != (0..2 * n + 1).collect::<Vec<_>>() || qubits != (0..n).collect::<Vec<_>>() {
            return Err(sexpr_err("leaves must be 0..=2N and qubits 0..N, each exactly once"));
        }
        let mut tree = Self::forest(n);
        parsed.attach_into(&mut tree)?;
        tree.validate()?;
        Ok(tree)
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_sexpr() {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str("(incomplete)"),
        }
    }
}

fn sexpr_err(msg: &str) -> Error {
    Error::InvalidArgument(format!("tree s-expression: {msg}"))
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

enum SNode {
    Leaf(usize),
    Internal(usize, Box<[SNode; 3]>),
}

impl SNode {
    fn collect(&self, leaves: &mut Vec<usize>, qubits: &mut Vec<usize>) {
        match self {
            SNode::Leaf(l) => leaves.push(*l),
            SNode::Internal(q, ch) => {
                qubits.push(*q);
                ch.iter().for_each(|c| c.collect(leaves, qubits));
            }
        }
    }

    fn attach_into(&self, tree: &mut TernaryTree) -> Result<usize> {
        match self {
            SNode::Leaf(l) => Ok(*l),
            SNode::Internal(q, ch) => {
                let ids = [ch[0].attach_into(tree)?, ch[1].attach_into(tree)?, ch[2].attach_into(tree)?];
                let id = tree.internal_id(*q);
                tree.attach(id, ids)?;
                Ok(id)
            }
        }
    }
}

fn expect(tokens: &[String], pos: &mut usize, want: &str) -> Result<()> {
    if tokens.get(*pos).map(String::as_str) != Some(want) {
        return Err(sexpr_err(&format!("expected {want:?} at token {pos}")));
    }
    *pos += 1;
    Ok(())
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<SNode> {
    let tok = tokens.get(*pos).ok_or_else(|| sexpr_err("unexpected end"))?;
    if let Some(l) = tok.strip_prefix("leaf") {
        *pos += 1;
        return l.parse().map(SNode::Leaf).map_err(|_| sexpr_err(&format!("bad leaf {tok:?}")));
    }
    expect(tokens, pos, "(")?;
    let q: usize = tokens
        .get(*pos)
        .and_then(|t| t.strip_prefix('q'))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| sexpr_err("expected qubit label qN"))?;
    *pos += 1;
    let mut kids = Vec::with_capacity(3);
    for b in ["X", "Y", "Z"] {
        expect(tokens, pos, "(")?;
        expect(tokens, pos, b)?;
        kids.push(parse_node(tokens, pos)?);
        expect(tokens, pos, ")")?;
    }
    expect(tokens, pos, ")")?;
    let kids: [SNode; 3] = kids.try_into().map_err(|_| sexpr_err("three children"))?;
    Ok(SNode::Internal(q, Box::new(kids)))
}

/// `O ↦ desc_Z(O)` and its inverse on the current frontier, updated in O(1)
/// per grown node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescMaps {
    down: Vec<usize>,
    up: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl DescMaps {
    /// Every leaf maps to itself in both directions.
    pub fn new(n_modes: usize) -> Self {
        let n_leaves = 2 * n_modes + 1;
        let mut down = vec![UNSET; 3 * n_modes + 1];
        for (i, d) in down.iter_mut().take(n_leaves).enumerate() {
            *d = i;
        }
        Self { down, up: (0..n_leaves).collect() }
    }

    pub fn down(&self, node: usize) -> Option<usize> {
        self.down.get(node).copied().filter(|&d| d != UNSET)
    }

    pub fn up(&self, leaf: usize) -> Option<usize> {
        self.up.get(leaf).copied().filter(|&u| u != UNSET)
    }

    /// Records that `new_id` was grown over `children = [x, y, z]`.
    pub fn update(&mut self, new_id: usize, children: [usize; 3]) {
        let zdesc = self.down[children[2]];
        self.down[new_id] = zdesc;
        self.up[zdesc] = new_id;
        // the X- and Y-side descendants are paired now and leave the frontier
        for c in &children[..2] {
            let d = self.down[*c];
            if d != UNSET {
                self.up[d] = UNSET;
            }
        }
    }
}
