//! The quadratic bottom-up DP and the delta-bit encoding of its arrays.
//!
//! For a node `v`, `A_v[i]` is the best label sum over connected subgraphs of
//! `v`'s subtree that contain `v` and have `i` original nodes; `A_v[0] = 0`
//! stands for "take nothing from this subtree" when the parent combines.

use crate::bitvec::RankBitvector;
use crate::error::{Error, Result};
use crate::minplus::convolve;
use crate::profile::Profile;
use crate::scalar::{MaxPlus, MinPlus, Scalar, Semiring};
use crate::tree::{binarize, BinarizedTree, LabeledTree};

/// `A_v`, indexed by subgraph size `0..=real_size(v)`.
pub type NodeProfile<T = i32> = Vec<T>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Min,
    Max,
}

pub(crate) trait Kind: Semiring {
    const KIND: SemiringKind;
}

impl Kind for MinPlus {
    const KIND: SemiringKind = SemiringKind::Min;
}

impl Kind for MaxPlus {
    const KIND: SemiringKind = SemiringKind::Max;
}

/// Array of a node whose subtree contributes nothing.
pub(crate) fn empty_side<T: Scalar>() -> [T; 1] {
    [T::zero()]
}

/// `A_v` from the arrays of its two children (pass `[0]` for a missing one).
///
/// A real node consumes one unit of size and adds its label:
/// `A_v[i] = label + best_j A_u[j] + A_w[i-1-j]`. A dummy only merges its
/// children: `A_v[i] = best_j A_u[j] + A_w[i-j]`.
pub(crate) fn combine<S: Semiring, T: Scalar>(a_u: &[T], a_w: &[T], label: T, real: bool) -> Vec<T> {
    let conv = convolve::<S, T>(a_u, a_w).expect("child arrays are never empty");
    if !real {
        return conv;
    }
    let mut out = Vec::with_capacity(conv.len() + 1);
    out.push(T::zero());
    out.extend(conv.into_iter().map(|x| S::times(x, label)));
    out
}

/// Min-semiring node combine on 0/1 labels.
pub fn combine_children(a_u: &[i32], a_w: &[i32], label: i32, size_weight: u8) -> Result<NodeProfile> {
    if a_u.is_empty() || a_w.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(combine::<MinPlus, i32>(a_u, a_w, label, size_weight == 1))
}

/// `B_v`: `B_v[0] = 0` and `B_v[i] = A_v[i] - A_v[i-1]`, stored with rank
/// support so that `A_v[i] = rank1(i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaBits {
    bits: RankBitvector,
}

pub fn encode_delta<T: Scalar>(a: &[T]) -> Result<DeltaBits> {
    let Some(&first) = a.first() else {
        return Ok(DeltaBits {
            bits: RankBitvector::default(),
        });
    };
    if first != T::zero() {
        return Err(Error::CorruptProfile {
            index: 0,
            step: first.to_i64().unwrap_or(i64::MAX),
        });
    }
    let mut bits = Vec::with_capacity(a.len());
    bits.push(false);
    for i in 1..a.len() {
        let step = a[i] - a[i - 1];
        if step != T::zero() && step != T::one() {
            return Err(Error::CorruptProfile {
                index: i,
                step: step.to_i64().unwrap_or(i64::MAX),
            });
        }
        bits.push(step == T::one());
    }
    Ok(DeltaBits {
        bits: RankBitvector::from_bits(bits),
    })
}

impl DeltaBits {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &RankBitvector {
        &self.bits
    }

    /// `A_v[i]`.
    pub fn value(&self, i: usize) -> Result<u32> {
        if i >= self.len() {
            return Err(Error::RankOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.bits.rank1_unchecked(i + 1) as u32)
    }

    pub fn decode<T: Scalar>(&self) -> Vec<T> {
        (0..self.len())
            .map(|i| T::from(self.bits.rank1_unchecked(i + 1)).unwrap())
            .collect()
    }
}

/// Runs the DP over the nodes of `order` (a postorder of a connected region),
/// ignoring children outside the region.
///
/// `slots` is indexed by node id. A child's array is dropped once its parent
/// is built unless `keep(child)` holds; the arrays of kept nodes (and of the
/// region's top) remain in `slots` afterwards.
pub(crate) fn region_dp<S, T>(
    bt: &BinarizedTree,
    order: &[usize],
    in_region: impl Fn(usize) -> bool,
    slots: &mut [Option<Vec<T>>],
    keep: impl Fn(usize) -> bool,
    mut visit: impl FnMut(usize, &[T]),
) where
    S: Semiring,
    T: Scalar,
{
    let empty = empty_side::<T>();
    for &v in order {
        let node = bt.node(v);
        let side = |c: Option<usize>| c.filter(|&c| in_region(c));
        let (l, r) = (side(node.left), side(node.right));
        let a_v = {
            let left = l.map_or(&empty[..], |c| slots[c].as_deref().expect("child computed"));
            let right = r.map_or(&empty[..], |c| slots[c].as_deref().expect("child computed"));
            combine::<S, T>(left, right, T::from(node.weight).unwrap(), !node.is_dummy())
        };
        visit(v, &a_v);
        for c in [l, r].into_iter().flatten() {
            if !keep(c) {
                slots[c] = None;
            }
        }
        slots[v] = Some(a_v);
    }
}

fn simple_extremes<S, T>(bt: &BinarizedTree, mut observe: impl FnMut(usize, &[T])) -> Vec<T>
where
    S: Semiring,
    T: Scalar,
{
    let mut best = vec![S::zero::<T>(); bt.real_nodes() + 1];
    let mut slots = vec![None; bt.len()];
    region_dp::<S, T>(bt, bt.postorder(), |_| true, &mut slots, |_| false, |v, a| {
        observe(v, a);
        if bt.node(v).is_dummy() {
            // a subgraph topped by a dummy is not connected in the original tree
            return;
        }
        for (size, &x) in a.iter().enumerate().skip(1) {
            best[size] = S::plus(best[size], x);
        }
    });
    best
}

pub(crate) fn extremes_to_profile(min: &[i32], max: &[i32]) -> Profile {
    let cast = |v: &[i32]| v.iter().map(|&x| x.max(0) as u32).collect::<Vec<_>>();
    Profile::from_sized(cast(min), cast(max))
}

/// Quadratic DP over every node of the binarized tree.
pub fn simple_tree_profile(bt: &BinarizedTree) -> Result<Profile> {
    simple_tree_profile_observed(bt, |_, _, _| {})
}

/// As [`simple_tree_profile`], reporting every `A_v` as it is produced.
pub fn simple_tree_profile_observed(
    bt: &BinarizedTree,
    mut observe: impl FnMut(usize, SemiringKind, &[i32]),
) -> Result<Profile> {
    check_binary(bt)?;
    let min = simple_extremes::<MinPlus, i32>(bt, |v, a| observe(v, SemiringKind::Min, a));
    let max = simple_extremes::<MaxPlus, i32>(bt, |v, a| observe(v, SemiringKind::Max, a));
    Ok(extremes_to_profile(&min, &max))
}

pub(crate) fn check_binary(bt: &BinarizedTree) -> Result<()> {
    match bt.nodes().iter().find(|n| n.weight != 0 && n.weight != 1) {
        Some(n) => Err(Error::NonBinaryLabel {
            node: n.original.unwrap_or(usize::MAX),
            label: n.weight,
        }),
        None => Ok(()),
    }
}

/// Maximum label sum over connected subgraphs of each size `1..=n`
/// (entry `i - 1`), with arbitrary integer labels.
pub fn weighted_tree_max_sums(t: &LabeledTree) -> Result<Vec<i64>> {
    if let Some(&w) = t.labels().iter().find(|w| w.abs() > (1i64 << 40)) {
        return Err(Error::InvalidParameter(format!("weight {w} exceeds ±2^40")));
    }
    let bt = binarize(t);
    let mut best = simple_extremes::<MaxPlus, i64>(&bt, |_, _| {});
    best.remove(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_connected_extremes;
    use proptest::prelude::*;

    #[test]
    fn combine_examples() {
        // every split j for each size: sizes 0..=4
        assert_eq!(combine_children(&[0, 0, 1], &[0, 1], 1, 1).unwrap(), vec![0, 1, 1, 2, 3]);
        // single child: A_v[i] = label + A_u[i - 1]
        assert_eq!(combine_children(&[0, 1, 1, 2], &[0], 0, 1).unwrap(), vec![0, 0, 1, 1, 2]);
        assert_eq!(combine_children(&[0], &[0], 1, 1).unwrap(), vec![0, 1]);
        // dummy: no size, no label
        assert_eq!(combine_children(&[0, 0, 1], &[0, 1], 0, 0).unwrap(), vec![0, 0, 1, 2]);
        assert!(combine_children(&[], &[0], 0, 1).is_err());
    }

    #[test]
    fn delta_examples() {
        let d = encode_delta(&[0i32, 1, 1, 2]).unwrap();
        assert_eq!(d.bits().iter().collect::<Vec<_>>(), vec![false, true, false, true]);
        assert_eq!(d.decode::<i32>(), vec![0, 1, 1, 2]);
        assert_eq!(d.value(3), Ok(2));
        assert!(d.value(4).is_err());
        let d = encode_delta(&[0i32, 0, 0]).unwrap();
        assert_eq!(d.bits().iter().collect::<Vec<_>>(), vec![false; 3]);
        let d = encode_delta(&[0i32, 1, 2]).unwrap();
        assert_eq!(d.bits().iter().collect::<Vec<_>>(), vec![false, true, true]);
        assert_eq!(
            encode_delta(&[0i32, 2]),
            Err(Error::CorruptProfile { index: 1, step: 2 })
        );
        assert_eq!(
            encode_delta(&[0i32, 1, 0]),
            Err(Error::CorruptProfile { index: 2, step: -1 })
        );
        assert!(encode_delta(&[1i32]).is_err());
        assert!(encode_delta::<i32>(&[]).unwrap().is_empty());
    }

    fn profile_of(parents: &[Option<usize>], labels: Vec<i64>) -> Profile {
        let t = LabeledTree::from_parents(parents, labels).unwrap();
        simple_tree_profile(&binarize(&t)).unwrap()
    }

    #[test]
    fn simple_examples() {
        let p = profile_of(&[None, Some(0), Some(1)], vec![1, 0, 1]);
        assert_eq!((p.min_vec(), p.max_vec()), (vec![0, 1, 2], vec![1, 1, 2]));
        let p = profile_of(&[None, Some(0), Some(0), Some(0)], vec![1, 0, 0, 0]);
        assert_eq!((p.min_vec(), p.max_vec()), (vec![0, 1, 1, 1], vec![1, 1, 1, 1]));
        let p = profile_of(&[None], vec![0]);
        assert_eq!((p.min_vec(), p.max_vec()), (vec![0], vec![0]));
    }

    #[test]
    fn non_binary_labels_rejected() {
        let t = LabeledTree::path(vec![1, 2]).unwrap();
        assert_eq!(
            simple_tree_profile(&binarize(&t)),
            Err(Error::NonBinaryLabel { node: 1, label: 2 })
        );
    }

    #[test]
    fn weighted_examples() {
        let t = LabeledTree::path(vec![2, -1, 3]).unwrap();
        assert_eq!(weighted_tree_max_sums(&t).unwrap(), vec![3, 2, 4]);
        let t = LabeledTree::from_parents(&[None, Some(0), Some(0), Some(0)], vec![0; 4]).unwrap();
        assert_eq!(weighted_tree_max_sums(&t).unwrap(), vec![0; 4]);
    }

    fn random_tree(max_n: usize, weights: std::ops::Range<i64>) -> impl Strategy<Value = LabeledTree> {
        (1..=max_n).prop_flat_map(move |n| {
            let parents = (1..n).map(|v| (0..v).prop_map(Some)).collect::<Vec<_>>();
            (parents, proptest::collection::vec(weights.clone(), n)).prop_map(|(mut ps, labels)| {
                ps.insert(0, None);
                LabeledTree::from_parents(&ps, labels).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn simple_matches_enumeration(t in random_tree(12, 0..2)) {
            let p = simple_tree_profile(&binarize(&t)).unwrap();
            let (lo, hi) = enumerate_connected_extremes(&t, 12).unwrap();
            prop_assert_eq!(p.min_vec(), lo.iter().map(|&x| x as u32).collect::<Vec<_>>());
            prop_assert_eq!(p.max_vec(), hi.iter().map(|&x| x as u32).collect::<Vec<_>>());
        }

        #[test]
        fn weighted_matches_enumeration(t in random_tree(12, -20..20)) {
            let (_, hi) = enumerate_connected_extremes(&t, 12).unwrap();
            prop_assert_eq!(weighted_tree_max_sums(&t).unwrap(), hi);
        }

        #[test]
        fn arrays_have_unit_steps_and_round_trip(t in random_tree(40, 0..2)) {
            let bt = binarize(&t);
            let mut seen = 0usize;
            simple_tree_profile_observed(&bt, |_, _, a| {
                let d = encode_delta(a).expect("unit steps");
                assert_eq!(d.decode::<i32>(), a);
                seen += 1;
            }).unwrap();
            prop_assert_eq!(seen, 2 * bt.len());
        }
    }
}
