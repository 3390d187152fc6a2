//! Tree profile through the micro-macro decomposition.
//!
//! Micro trees are processed children-first along the macro tree. Inside a
//! micro tree `C` with top `t` and lower boundary node `l`:
//!
//! * the quadratic DP restricted to `C` yields the local arrays `A^C_v`,
//!   which already cover every subgraph that stays inside `C`;
//! * every subgraph leaving `C` goes down through `l`, so it is a subgraph of
//!   `C` containing the whole path from its top `v` to `l`, joined with an
//!   independent choice below each external child of `l`. Writing `R_v` for
//!   the best such in-`C` part and `D` for the convolution of the external
//!   children's global arrays, the contribution of all tops on the path is
//!   `(best_v R_v) ⊙ D`;
//! * the global array of `t`, needed by the parent micro tree, is
//!   `best(A^C_t, R_t ⊙ D)`.
//!
//! Every short-by-long convolution goes through the chunked routine with the
//! short side padded to `r`, and every global array waiting for its parent is
//! stored as [`DeltaBits`].

use crate::error::{Error, Result};
use crate::minplus::{convolve_chunked, ProductKernel, TiledKernel};
use crate::profile::Profile;
use crate::scalar::{MaxPlus, MinPlus, Semiring};
use crate::tree::dp::{check_binary, combine, empty_side, extremes_to_profile, region_dp, Kind};
use crate::tree::{binarize, encode_delta, micro_macro, BinarizedTree, DeltaBits, LabeledTree};
use crate::tree::{MicroMacroDecomposition, SemiringKind};

/// Profile over connected subgraphs using micro trees of at most `r` nodes.
pub fn tree_profile(t: &LabeledTree, r: usize) -> Result<Profile> {
    tree_profile_with(t, r, &TiledKernel::default())
}

pub fn tree_profile_with<K: ProductKernel>(t: &LabeledTree, r: usize, kernel: &K) -> Result<Profile> {
    tree_profile_observed(t, r, kernel, |_, _, _| {})
}

/// As [`tree_profile_with`], reporting every node array (`A^C_v` inside micro
/// trees and the global array of each micro-tree top) as it is produced.
pub fn tree_profile_observed<K: ProductKernel>(
    t: &LabeledTree,
    r: usize,
    kernel: &K,
    mut observe: impl FnMut(usize, SemiringKind, &[i32]),
) -> Result<Profile> {
    t.check_binary_labels()?;
    if r == 0 {
        return Err(Error::InvalidParameter("micro size r must be positive".into()));
    }
    let bt = binarize(t);
    check_binary(&bt)?;
    let dec = micro_macro(&bt, r.min(t.len()))?;
    let min = macro_extremes::<MinPlus, K>(&bt, &dec, kernel, &mut observe)?;
    let max = macro_extremes::<MaxPlus, K>(&bt, &dec, kernel, &mut observe)?;
    Ok(extremes_to_profile(&min, &max))
}

fn pointwise_best<S: Semiring>(acc: &mut Vec<i32>, other: &[i32]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), S::zero());
    }
    for (a, &b) in acc.iter_mut().zip(other) {
        *a = S::plus(*a, b);
    }
}

fn macro_extremes<S, K>(
    bt: &BinarizedTree,
    dec: &MicroMacroDecomposition,
    kernel: &K,
    observe: &mut impl FnMut(usize, SemiringKind, &[i32]),
) -> Result<Vec<i32>>
where
    S: Kind,
    K: ProductKernel,
{
    let zero = S::zero::<i32>();
    let pad = dec.r();
    let mut best = vec![zero; bt.real_nodes() + 1];
    let mut slots: Vec<Option<Vec<i32>>> = vec![None; bt.len()];
    let mut on_path = vec![false; bt.len()];
    // global array of each micro-tree top, until its parent micro tree uses it
    let mut pending: Vec<Option<DeltaBits>> = vec![None; dec.len()];

    for (c, micro) in dec.micro_trees().iter().enumerate() {
        let mut path = Vec::new();
        if let Some(l) = micro.lower {
            let mut v = l;
            loop {
                path.push(v);
                on_path[v] = true;
                if v == micro.top {
                    break;
                }
                v = bt.node(v).parent.expect("lower node lies below the top");
            }
        }
        let keep = |v: usize| {
            Some(v) == micro.lower || bt.node(v).parent.is_some_and(|p| on_path[p])
        };
        region_dp::<S, i32>(
            bt,
            &micro.nodes,
            |v| dec.micro_of(v) == c,
            &mut slots,
            keep,
            |v, a| {
                observe(v, S::KIND, a);
                if !bt.node(v).is_dummy() {
                    for (size, &x) in a.iter().enumerate().skip(1) {
                        best[size] = S::plus(best[size], x);
                    }
                }
            },
        );
        let local_top = slots[micro.top].clone().expect("top computed");

        let global_top = match micro.lower {
            None => local_top,
            Some(l) => {
                // D: external children of l, each free to contribute nothing
                let mut below: Option<Vec<i32>> = None;
                for x in bt.node(l).children().filter(|&x| dec.micro_of(x) != c) {
                    let a_x: Vec<i32> = pending[dec.micro_of(x)]
                        .take()
                        .expect("child micro tree processed")
                        .decode();
                    below = Some(match below {
                        None => a_x,
                        Some(d) => convolve_chunked::<S, i32, K>(&d, &a_x, pad, kernel)?,
                    });
                }
                let below = below.expect("lower node has an external child");

                // R along the path, bottom-up, and the best over real tops
                let lower_node = bt.node(l);
                let mut reach = slots[l].clone().expect("lower node kept");
                if !lower_node.is_dummy() {
                    reach[0] = zero;
                }
                let mut tops_best = vec![zero; reach.len()];
                if !lower_node.is_dummy() {
                    pointwise_best::<S>(&mut tops_best, &reach);
                }
                for w in path.windows(2) {
                    let (child, v) = (w[0], w[1]);
                    let node = bt.node(v);
                    let sibling = node
                        .children()
                        .find(|&s| s != child && dec.micro_of(s) == c);
                    let empty = empty_side::<i32>();
                    let side = sibling.map_or(&empty[..], |s| slots[s].as_deref().expect("sibling kept"));
                    reach = combine::<S, i32>(&reach, side, node.weight as i32, !node.is_dummy());
                    if !node.is_dummy() {
                        reach[0] = zero;
                        pointwise_best::<S>(&mut tops_best, &reach);
                    }
                }

                let through = convolve_chunked::<S, i32, K>(&tops_best, &below, pad, kernel)?;
                for (size, &x) in through.iter().enumerate().skip(1) {
                    best[size] = S::plus(best[size], x);
                }
                let mut global = local_top;
                pointwise_best::<S>(&mut global, &convolve_chunked::<S, i32, K>(&reach, &below, pad, kernel)?);
                global
            }
        };

        for &v in &micro.nodes {
            slots[v] = None;
            on_path[v] = false;
        }
        debug_assert_eq!(global_top.len(), bt.real_size(micro.top) + 1);
        observe(micro.top, S::KIND, &global_top);
        if dec.macro_parent(c).is_some() {
            pending[c] = Some(encode_delta(&global_top)?);
        }
    }
    Ok(best)
}
