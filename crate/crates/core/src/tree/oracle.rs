//! Exhaustive reference over connected node subsets, for small trees only.

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::tree::LabeledTree;

/// Hard ceiling on the enumeration (2^n subsets).
pub const ORACLE_MAX_NODES: usize = 22;

/// Min and max label sum per size `1..=n` (entry `i - 1`), by checking every
/// node subset. A subset of a tree is connected iff it spans
/// `|subset| - 1` tree edges.
pub fn enumerate_connected_extremes(t: &LabeledTree, max_n: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = t.len();
    let limit = max_n.min(ORACLE_MAX_NODES);
    if n > limit {
        return Err(Error::OracleTooLarge { n, max: limit });
    }
    // parent bit of each node (0 for the root)
    let parent_bit: Vec<u32> = (0..n).map(|v| t.parent(v).map_or(0, |p| 1u32 << p)).collect();
    let child_bits: Vec<u32> = (0..n)
        .map(|v| t.children(v).iter().fold(0u32, |m, &c| m | 1 << c))
        .collect();

    let total = 1usize << n;
    let mut edges = vec![0u8; total];
    let mut weight = vec![0i64; total];
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for mask in 1..total {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let adj = (parent_bit[v] | child_bits[v]) & rest as u32;
        edges[mask] = edges[rest] + adj.count_ones() as u8;
        weight[mask] = weight[rest] + t.label(v);
        let size = mask.count_ones() as usize;
        if edges[mask] as usize + 1 == size {
            lo[size - 1] = lo[size - 1].min(weight[mask]);
            hi[size - 1] = hi[size - 1].max(weight[mask]);
        }
    }
    Ok((lo, hi))
}

/// Ground-truth profile of a 0/1-labelled tree with at most `max_n` nodes.
pub fn enumerate_connected_oracle(t: &LabeledTree, max_n: usize) -> Result<Profile> {
    t.check_binary_labels()?;
    let (lo, hi) = enumerate_connected_extremes(t, max_n)?;
    let cast = |v: Vec<i64>| v.into_iter().map(|x| x as u32).collect::<Vec<_>>();
    Profile::from_extremes(&cast(lo), &cast(hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let single = LabeledTree::path(vec![1]).unwrap();
        let p = enumerate_connected_oracle(&single, 18).unwrap();
        assert_eq!((p.min_vec(), p.max_vec()), (vec![1], vec![1]));

        let path = LabeledTree::path(vec![1, 0, 1]).unwrap();
        let p = enumerate_connected_oracle(&path, 18).unwrap();
        assert_eq!((p.min_vec(), p.max_vec()), (vec![0, 1, 2], vec![1, 1, 2]));

        let star = LabeledTree::from_parents(&[None, Some(0), Some(0), Some(0)], vec![1, 0, 0, 0]).unwrap();
        let p = enumerate_connected_oracle(&star, 18).unwrap();
        assert_eq!((p.min_vec(), p.max_vec()), (vec![0, 1, 1, 1], vec![1, 1, 1, 1]));
    }

    #[test]
    fn refuses_large_trees() {
        let t = LabeledTree::path(vec![0; 19]).unwrap();
        assert_eq!(
            enumerate_connected_oracle(&t, 18),
            Err(Error::OracleTooLarge { n: 19, max: 18 })
        );
    }

    #[test]
    fn weighted_path_is_substrings() {
        let t = LabeledTree::path(vec![2, -1, 3]).unwrap();
        let (lo, hi) = enumerate_connected_extremes(&t, 18).unwrap();
        assert_eq!(hi, vec![3, 2, 4]);
        assert_eq!(lo, vec![-1, 1, 4]);
    }
}
