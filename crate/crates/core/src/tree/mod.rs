//! Profiles over connected subgraphs of node-labelled trees.
//!
//! The pipeline is: [`binarize`] the input, then either run the quadratic
//! bottom-up DP ([`simple_tree_profile`]) or split the tree into small micro
//! trees ([`micro_macro`]) and stitch their answers together along the macro
//! tree ([`tree_profile`]).

mod binarize;
mod decomposition;
mod dp;
mod macro_dp;
mod oracle;

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use binarize::{binarize, BinarizedTree, BinaryNode};
pub use decomposition::{micro_macro, MicroMacroDecomposition, MicroTree, MICRO_COUNT_FACTOR};
pub use dp::{
    combine_children, encode_delta, simple_tree_profile, simple_tree_profile_observed,
    weighted_tree_max_sums, DeltaBits, NodeProfile, SemiringKind,
};
pub use macro_dp::{tree_profile, tree_profile_observed, tree_profile_with};
pub use oracle::{enumerate_connected_extremes, enumerate_connected_oracle, ORACLE_MAX_NODES};

/// A rooted tree with one integer label per node (0/1 for profiles, any
/// integer for weighted sums). Nodes are numbered `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    labels: Vec<i64>,
    root: usize,
}

impl LabeledTree {
    pub fn from_parents(parents: &[Option<usize>], labels: Vec<i64>) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if labels.len() != n {
            return Err(Error::InvalidTree(format!(
                "{n} parents but {} labels",
                labels.len()
            )));
        }
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (v, &p) in parents.iter().enumerate() {
            match p {
                None if root.is_some() => {
                    return Err(Error::InvalidTree(format!(
                        "nodes {} and {v} are both roots",
                        root.unwrap()
                    )))
                }
                None => root = Some(v),
                Some(p) if p >= n => {
                    return Err(Error::InvalidTree(format!("node {v} has unknown parent {p}")))
                }
                Some(p) if p == v => {
                    return Err(Error::InvalidTree(format!("node {v} is its own parent")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        let mut seen = 1usize;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            seen += children[v].len();
            stack.extend(&children[v]);
        }
        if seen != n {
            return Err(Error::InvalidTree(format!(
                "only {seen} of {n} nodes are reachable from the root (cycle)"
            )));
        }
        Ok(LabeledTree {
            parent: parents.to_vec(),
            children,
            labels,
            root,
        })
    }

    /// Builds a path `0 - 1 - ... - (n-1)` rooted at node 0.
    pub fn path(labels: Vec<i64>) -> Result<Self> {
        let parents: Vec<Option<usize>> = (0..labels.len()).map(|v| v.checked_sub(1)).collect();
        LabeledTree::from_parents(&parents, labels)
    }

    /// Parses the text format: first line `n`, then `n` lines `parent label`
    /// for nodes `1..=n`, where parent `0` marks the root.
    pub fn parse(text: &str, weighted: bool) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (first_idx, first) = lines.next().ok_or(Error::EmptyInput)?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: first_idx + 1,
            column: 1,
            message: format!("expected node count, found `{}`", first.trim()),
        })?;
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut parents = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for (idx, raw) in lines {
            let line = idx + 1;
            if parents.len() == n {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("more than {n} node lines"),
                });
            }
            let mut fields = Vec::new();
            let mut col = 0;
            for tok in raw.split_whitespace() {
                let at = raw[col..].find(tok).unwrap() + col;
                fields.push((at + 1, tok));
                col = at + tok.len();
            }
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    column: fields.get(2).map_or(1, |f| f.0),
                    message: format!("expected `parent label`, found {} fields", fields.len()),
                });
            }
            let (pcol, ptok) = fields[0];
            let parent: usize = ptok.parse().map_err(|_| Error::Parse {
                line,
                column: pcol,
                message: format!("`{ptok}` is not a node id"),
            })?;
            if parent > n {
                return Err(Error::Parse {
                    line,
                    column: pcol,
                    message: format!("parent {parent} exceeds node count {n}"),
                });
            }
            let (lcol, ltok) = fields[1];
            let label: i64 = ltok.parse().map_err(|_| Error::Parse {
                line,
                column: lcol,
                message: format!("`{ltok}` is not an integer label"),
            })?;
            if !weighted && label != 0 && label != 1 {
                return Err(Error::Parse {
                    line,
                    column: lcol,
                    message: format!("label {label} is not 0 or 1"),
                });
            }
            parents.push(parent.checked_sub(1));
            labels.push(label);
        }
        if parents.len() != n {
            return Err(Error::Parse {
                line: text.lines().count() + 1,
                column: 1,
                message: format!("expected {n} node lines, found {}", parents.len()),
            });
        }
        LabeledTree::from_parents(&parents, labels)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.len()).unwrap();
        for v in 0..self.len() {
            writeln!(out, "{} {}", self.parent[v].map_or(0, |p| p + 1), self.labels[v]).unwrap();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub(crate) fn check_binary_labels(&self) -> Result<()> {
        match self.labels.iter().position(|&l| l != 0 && l != 1) {
            Some(node) => Err(Error::NonBinaryLabel {
                node,
                label: self.labels[node],
            }),
            None => Ok(()),
        }
    }

    /// Same tree hung from a different root.
    pub fn rerooted(&self, new_root: usize) -> Result<Self> {
        if new_root >= self.len() {
            return Err(Error::InvalidParameter(format!("no node {new_root}")));
        }
        let mut parents = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[new_root] = true;
        let mut stack = vec![new_root];
        while let Some(v) = stack.pop() {
            let nbrs = self.children[v].iter().copied().chain(self.parent[v]);
            for u in nbrs {
                if !seen[u] {
                    seen[u] = true;
                    parents[u] = Some(v);
                    stack.push(u);
                }
            }
        }
        LabeledTree::from_parents(&parents, self.labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let text = "4\n0 1\n1 0\n1 1\n2 0\n";
        let t = LabeledTree::parse(text, false).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.children(0), &[1, 2]);
        assert_eq!(t.children(1), &[3]);
        assert_eq!(t.to_text(), text);
        assert_eq!(LabeledTree::parse(&t.to_text(), false).unwrap(), t);
    }

    #[test]
    fn parse_errors_name_the_position() {
        assert_eq!(LabeledTree::parse("", false), Err(Error::EmptyInput));
        assert!(matches!(
            LabeledTree::parse("2\n0 1\n1 2\n", false),
            Err(Error::Parse { line: 3, column: 3, .. })
        ));
        assert!(LabeledTree::parse("2\n0 1\n1 -2\n", true).is_ok());
        assert!(matches!(
            LabeledTree::parse("2\n0 1\nx 0\n", false),
            Err(Error::Parse { line: 3, column: 1, .. })
        ));
        assert!(matches!(
            LabeledTree::parse("3\n0 1\n1 0\n", false),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            LabeledTree::parse("2\n0 1\n5 0\n", false),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            LabeledTree::from_parents(&[None, None], vec![0, 0]),
            Err(Error::InvalidTree(_))
        ));
        assert!(matches!(
            LabeledTree::from_parents(&[Some(1), Some(0)], vec![0, 0]),
            Err(Error::InvalidTree(_))
        ));
        assert!(matches!(
            LabeledTree::from_parents(&[None, Some(2), Some(1)], vec![0, 0, 0]),
            Err(Error::InvalidTree(_))
        ));
    }

    #[test]
    fn reroot_preserves_edges() {
        let t = LabeledTree::path(vec![1, 0, 1, 1]).unwrap();
        let r = t.rerooted(2).unwrap();
        assert_eq!(r.root(), 2);
        assert_eq!(r.parent(0), Some(1));
        assert_eq!(r.parent(3), Some(2));
        assert_eq!(r.labels(), t.labels());
    }
}
