//! Micro-macro decomposition of a binarized tree.
//!
//! Construction:
//!
//! 1. Walk the tree bottom-up keeping, for each node, the number of original
//!    nodes in its still-unassigned part of the subtree. A node whose count
//!    exceeds `r` is marked and its count reset to zero. The counted regions
//!    of marked nodes are disjoint and each holds more than `r` nodes, so at
//!    most `n / (r + 1)` nodes get marked.
//! 2. Close the marked set under lowest common ancestors: in a binary tree
//!    that means also marking every node with marked descendants under both
//!    children. This at most doubles the set.
//! 3. Every marked node becomes a singleton micro tree; the connected
//!    components left over become the remaining micro trees. A component has
//!    at most one marked node hanging below it (two would force their LCA,
//!    which lies inside the component, to be marked), so it touches the rest
//!    of the tree only through its top and one lower node.
//!
//! Each component is entered from a marked node or is the root component, and
//! each marked node has at most two children, so the total count is at most
//! `3·|marked| + 1 <= 6n/(r+1) + 1`, which is below `MICRO_COUNT_FACTOR · n / r`
//! whenever `n >= r`.

use crate::error::{Error, Result};
use crate::tree::BinarizedTree;

/// Declared constant `c` in the bound `#micro trees <= max(1, c·n/r)`.
pub const MICRO_COUNT_FACTOR: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroTree {
    /// Member nodes, children before parents.
    pub nodes: Vec<usize>,
    /// The member closest to the root.
    pub top: usize,
    /// The only member with children in other micro trees, if any.
    pub lower: Option<usize>,
    /// Original (non-dummy) nodes among the members.
    pub real_size: usize,
}

#[derive(Clone, Debug)]
pub struct MicroMacroDecomposition {
    r: usize,
    micro_of: Vec<usize>,
    /// Ordered so that every micro tree comes after all of its macro children.
    micro: Vec<MicroTree>,
    macro_parent: Vec<Option<usize>>,
    macro_children: Vec<Vec<usize>>,
}

pub fn micro_macro(bt: &BinarizedTree, r: usize) -> Result<MicroMacroDecomposition> {
    if r == 0 {
        return Err(Error::InvalidParameter("micro size r must be positive".into()));
    }
    let len = bt.len();
    let mut marked = vec![false; len];
    let mut open = vec![0usize; len];
    for &v in bt.postorder() {
        let node = bt.node(v);
        let count = node.size_weight as usize + node.children().map(|c| open[c]).sum::<usize>();
        if count > r {
            marked[v] = true;
        } else {
            open[v] = count;
        }
    }

    // LCA closure
    let mut has_marked = vec![false; len];
    for &v in bt.postorder() {
        let node = bt.node(v);
        let below = node.children().filter(|&c| has_marked[c]).count();
        if below == 2 {
            marked[v] = true;
        }
        has_marked[v] = marked[v] || below > 0;
    }

    // Assign micro ids top-down so a component's id is fixed at its top.
    let mut micro_of = vec![usize::MAX; len];
    let mut tops = Vec::new();
    for &v in bt.postorder().iter().rev() {
        let starts_new = match bt.node(v).parent {
            None => true,
            Some(p) => marked[v] || marked[p],
        };
        micro_of[v] = if starts_new {
            tops.push(v);
            tops.len() - 1
        } else {
            micro_of[bt.node(v).parent.unwrap()]
        };
    }

    let mut members = vec![Vec::new(); tops.len()];
    for &v in bt.postorder() {
        members[micro_of[v]].push(v);
    }

    // Bottom-up order: by the postorder position of each top.
    let mut position = vec![0usize; len];
    for (i, &v) in bt.postorder().iter().enumerate() {
        position[v] = i;
    }
    let mut order: Vec<usize> = (0..tops.len()).collect();
    order.sort_by_key(|&c| position[tops[c]]);
    let mut renumber = vec![0usize; tops.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    for m in micro_of.iter_mut() {
        *m = renumber[*m];
    }

    let mut micro = Vec::with_capacity(tops.len());
    for &old in &order {
        let nodes = std::mem::take(&mut members[old]);
        let top = tops[old];
        let id = renumber[old];
        let mut lower = None;
        for &v in &nodes {
            if bt.node(v).children().any(|c| micro_of[c] != id) {
                debug_assert!(lower.is_none(), "two lower boundary nodes");
                lower = Some(v);
            }
        }
        let real_size = nodes.iter().filter(|&&v| !bt.node(v).is_dummy()).count();
        micro.push(MicroTree {
            nodes,
            top,
            lower,
            real_size,
        });
    }

    let mut macro_parent = vec![None; micro.len()];
    let mut macro_children = vec![Vec::new(); micro.len()];
    for (c, m) in micro.iter().enumerate() {
        if let Some(p) = bt.node(m.top).parent {
            macro_parent[c] = Some(micro_of[p]);
            macro_children[micro_of[p]].push(c);
        }
    }

    Ok(MicroMacroDecomposition {
        r,
        micro_of,
        micro,
        macro_parent,
        macro_children,
    })
}

impl MicroMacroDecomposition {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.micro.len()
    }

    pub fn is_empty(&self) -> bool {
        self.micro.is_empty()
    }

    /// Micro trees, each after all of its macro children.
    pub fn micro_trees(&self) -> &[MicroTree] {
        &self.micro
    }

    pub fn micro_of(&self, v: usize) -> usize {
        self.micro_of[v]
    }

    pub fn macro_parent(&self, c: usize) -> Option<usize> {
        self.macro_parent[c]
    }

    pub fn macro_children(&self, c: usize) -> &[usize] {
        &self.macro_children[c]
    }

    /// Members of micro tree `c` adjacent to a node of another micro tree.
    pub fn boundary_nodes(&self, bt: &BinarizedTree, c: usize) -> Vec<usize> {
        self.micro[c]
            .nodes
            .iter()
            .copied()
            .filter(|&v| {
                let node = bt.node(v);
                node.parent
                    .into_iter()
                    .chain(node.children())
                    .any(|u| self.micro_of[u] != c)
            })
            .collect()
    }

    /// Checks partition, connectivity, size, boundary and count invariants.
    pub fn validate(&self, bt: &BinarizedTree) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        let mut seen = vec![false; bt.len()];
        for (c, m) in self.micro.iter().enumerate() {
            for &v in &m.nodes {
                if seen[v] || self.micro_of[v] != c {
                    return fail(format!("node {v} assigned inconsistently"));
                }
                seen[v] = true;
                if v != m.top && bt.node(v).parent.map(|p| self.micro_of[p]) != Some(c) {
                    return fail(format!("micro tree {c} is disconnected at node {v}"));
                }
            }
            if self.micro_of[m.top] != c {
                return fail(format!("top of micro tree {c} is not a member"));
            }
            if m.real_size > self.r {
                return fail(format!("micro tree {c} has {} > r nodes", m.real_size));
            }
            if self.boundary_nodes(bt, c).len() > 2 {
                return fail(format!("micro tree {c} has more than two boundary nodes"));
            }
            if let Some(p) = self.macro_parent[c] {
                if p <= c {
                    return fail(format!("micro tree {c} precedes its macro parent {p} incorrectly"));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return fail(format!("node {v} is in no micro tree"));
        }
        let n = bt.real_nodes();
        if self.micro.len() * self.r > (MICRO_COUNT_FACTOR * n).max(self.r) {
            return fail(format!(
                "{} micro trees exceeds max(1, {MICRO_COUNT_FACTOR}·{n}/{})",
                self.micro.len(),
                self.r
            ));
        }
        Ok(())
    }
}
