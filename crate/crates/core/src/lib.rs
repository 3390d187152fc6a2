//! Binary jumbled pattern matching indexes.
//!
//! For a binary string (or a tree whose nodes are labelled 0/1) the index
//! records, for every size `i`, the fewest and the most 1s found in a
//! substring (connected subgraph) of that size. Because the attainable counts
//! for a fixed size form a contiguous range, this answers every query "is
//! there an occurrence of size `i` with exactly `j` ones?" in constant time.
//!
//! The heavy lifting is expressed as tropical (min-plus / max-plus) matrix
//! products and convolutions, generic over the integer scalar and routed
//! through a pluggable [`ProductKernel`].

pub mod bitvec;
pub mod error;
pub mod generate;
pub mod minplus;
pub mod profile;
pub mod scalar;
pub mod string;
pub mod tree;

pub use bitvec::{build_rank, RankBitvector};
pub use error::{Error, Result};
pub use minplus::{Matrix, NaiveKernel, ProductKernel, TiledKernel};
pub use profile::{merge_profiles, occurs, Profile};
pub use scalar::{MaxPlus, MinPlus, Scalar, Semiring};
pub use string::{
    anchored_min_profile, blocked_profile, naive_profile, parse_weights, recursive_profile,
    weighted_max_sums,
    BinaryString,
};
pub use tree::{
    binarize, enumerate_connected_oracle, simple_tree_profile, tree_profile,
    weighted_tree_max_sums, BinarizedTree, LabeledTree,
};

/// Unweighted costs: 1-counts, bounded by the input size.
pub type Cost = i32;
/// Signed weights for the max-sum generalisation.
pub type Weight = i64;

pub type MinPlusMatrix = Matrix<Cost>;
pub type CostVector = Vec<Cost>;
pub type WeightVector = Vec<Weight>;
