use crate::tree::LabeledTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryNode {
    pub parent: Option<usize>,
    pub left: Option<usize>,
    pub right: Option<usize>,
    /// 1 for an original node, 0 for a dummy.
    pub size_weight: u8,
    /// The node's label (0 for dummies).
    pub weight: i64,
    pub original: Option<usize>,
}

impl BinaryNode {
    pub fn is_dummy(&self) -> bool {
        self.size_weight == 0
    }

    pub fn children(&self) -> impl Iterator<Item = usize> {
        self.left.into_iter().chain(self.right)
    }
}

/// A tree in which every node has at most two children.
///
/// Original node `v` keeps id `v`; dummies are appended after them. A dummy
/// carries no size and no label, so it never changes the size or the 1-count
/// of a subgraph that passes through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarizedTree {
    nodes: Vec<BinaryNode>,
    root: usize,
    real_nodes: usize,
    real_size: Vec<usize>,
    postorder: Vec<usize>,
}

/// Replaces every node with `k > 2` children by a right-leaning chain of
/// `k - 2` dummies: the node keeps its first child and a dummy, each dummy
/// holds the next child and the next dummy, and the last dummy holds the final
/// two children.
pub fn binarize(t: &LabeledTree) -> BinarizedTree {
    let n = t.len();
    let mut nodes: Vec<BinaryNode> = (0..n)
        .map(|v| BinaryNode {
            parent: None,
            left: None,
            right: None,
            size_weight: 1,
            weight: t.label(v),
            original: Some(v),
        })
        .collect();
    for v in 0..n {
        let kids = t.children(v);
        let mut holder = v;
        let mut rest = kids;
        while rest.len() > 2 {
            let dummy = nodes.len();
            nodes.push(BinaryNode {
                parent: Some(holder),
                left: None,
                right: None,
                size_weight: 0,
                weight: 0,
                original: None,
            });
            nodes[holder].left = Some(rest[0]);
            nodes[rest[0]].parent = Some(holder);
            nodes[holder].right = Some(dummy);
            holder = dummy;
            rest = &rest[1..];
        }
        if let Some(&c) = rest.first() {
            nodes[holder].left = Some(c);
            nodes[c].parent = Some(holder);
        }
        if let Some(&c) = rest.get(1) {
            nodes[holder].right = Some(c);
            nodes[c].parent = Some(holder);
        }
    }
    BinarizedTree::from_nodes(nodes, t.root(), n)
}

impl BinarizedTree {
    fn from_nodes(nodes: Vec<BinaryNode>, root: usize, real_nodes: usize) -> Self {
        let mut postorder = Vec::with_capacity(nodes.len());
        let mut stack = vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                postorder.push(v);
            } else {
                stack.push((v, true));
                let node = &nodes[v];
                if let Some(r) = node.right {
                    stack.push((r, false));
                }
                if let Some(l) = node.left {
                    stack.push((l, false));
                }
            }
        }
        let mut real_size = vec![0usize; nodes.len()];
        for &v in &postorder {
            real_size[v] =
                nodes[v].size_weight as usize + nodes[v].children().map(|c| real_size[c]).sum::<usize>();
        }
        BinarizedTree {
            nodes,
            root,
            real_nodes,
            real_size,
            postorder,
        }
    }

    /// Total node count, dummies included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of original nodes.
    pub fn real_nodes(&self) -> usize {
        self.real_nodes
    }

    pub fn dummy_count(&self) -> usize {
        self.nodes.len() - self.real_nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, v: usize) -> &BinaryNode {
        &self.nodes[v]
    }

    pub fn nodes(&self) -> &[BinaryNode] {
        &self.nodes
    }

    /// Original nodes in the subtree of `v`.
    pub fn real_size(&self, v: usize) -> usize {
        self.real_size[v]
    }

    /// Children before parents; left subtree before right.
    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }
}
