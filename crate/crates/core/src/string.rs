//! Profiles of binary strings.
//!
//! Three interchangeable backends compute the same [`Profile`]:
//!
//! * [`naive_profile`] scans every window of every length.
//! * [`blocked_profile`] cuts the text into blocks of length `b`, handles
//!   windows inside a block directly, and obtains every window that crosses a
//!   block boundary from `2b` tropical matrix products (one per combined
//!   suffix+prefix length).
//! * [`recursive_profile`] halves the text, recurses, and recovers the windows
//!   straddling the midpoint from one tropical convolution.
//!
//! The recursion is written over arbitrary integer weights, which also gives
//! [`weighted_max_sums`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::minplus::{ceil_sqrt, convolve, convolve_blocked, Matrix, ProductKernel, TiledKernel};
use crate::profile::Profile;
use crate::scalar::{MaxPlus, MinPlus, Scalar, Semiring};

/// Below this length the recursive backend switches to window scanning.
pub const RECURSION_CUTOFF: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryString {
    bits: Vec<u8>,
    prefix_ones: Vec<u32>,
}

impl BinaryString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidParameter(format!(
                "bit {pos} has value {}, expected 0 or 1",
                bits[pos]
            )));
        }
        let mut prefix_ones = Vec::with_capacity(bits.len() + 1);
        prefix_ones.push(0);
        let mut acc = 0u32;
        for &b in &bits {
            acc += b as u32;
            prefix_ones.push(acc);
        }
        Ok(BinaryString { bits, prefix_ones })
    }

    /// Parses ASCII `0`/`1`, ignoring all whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (line_idx, line) in text.lines().enumerate() {
            for (col_idx, ch) in line.chars().enumerate() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::Parse {
                            line: line_idx + 1,
                            column: col_idx + 1,
                            message: format!("unexpected character {c:?}, expected '0' or '1'"),
                        })
                    }
                }
            }
        }
        BinaryString::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn prefix_ones(&self) -> &[u32] {
        &self.prefix_ones
    }

    /// Ones in `bits[start..end]`.
    #[inline]
    pub fn ones(&self, start: usize, end: usize) -> u32 {
        self.prefix_ones[end] - self.prefix_ones[start]
    }

    fn weights(&self) -> Vec<i32> {
        self.bits.iter().map(|&b| b as i32).collect()
    }
}

impl std::fmt::Display for BinaryString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn to_profile(min: Vec<i32>, max: Vec<i32>) -> Profile {
    let conv = |v: Vec<i32>| -> Vec<u32> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                debug_assert!(i == 0 || (0..=i as i32).contains(&x), "size {i} got {x}");
                x.max(0) as u32
            })
            .collect()
    };
    Profile::from_sized(conv(min), conv(max))
}

/// `best[size]` over all windows of `w`, by prefix sums. Entry 0 is the
/// sentinel.
fn window_extremes<S: Semiring, T: Scalar>(w: &[T]) -> Vec<T> {
    let n = w.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(T::zero());
    for &x in w {
        prefix.push(*prefix.last().unwrap() + x);
    }
    let mut best = vec![S::zero::<T>(); n + 1];
    for (size, slot) in best.iter_mut().enumerate().skip(1) {
        for start in 0..=n - size {
            *slot = S::plus(*slot, prefix[start + size] - prefix[start]);
        }
    }
    best
}

pub fn naive_profile(s: &BinaryString) -> Profile {
    let w = s.weights();
    to_profile(window_extremes::<MinPlus, _>(&w), window_extremes::<MaxPlus, _>(&w))
}

/// The text cut into `m = ⌈n/b⌉` consecutive blocks of length `b`; only the
/// last block may be shorter.
#[derive(Clone, Debug)]
pub struct BlockPartition<'a> {
    text: &'a BinaryString,
    block: usize,
    count: usize,
}

impl<'a> BlockPartition<'a> {
    pub fn new(text: &'a BinaryString, block: usize) -> Result<Self> {
        if block == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        Ok(BlockPartition {
            text,
            block,
            count: text.len().div_ceil(block),
        })
    }

    pub fn block_len(&self) -> usize {
        self.block
    }

    pub fn num_blocks(&self) -> usize {
        self.count
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let start = i * self.block;
        start..(start + self.block).min(self.text.len())
    }

    pub fn block(&self, i: usize) -> &'a [u8] {
        &self.text.bits()[self.block_range(i)]
    }

    /// Ones in the last `k` bits of block `i`, if it has that many.
    fn suffix_ones(&self, i: usize, k: usize) -> Option<i32> {
        let r = self.block_range(i);
        (k <= r.len()).then(|| self.text.ones(r.end - k, r.end) as i32)
    }

    /// Ones in the first `k` bits of block `j`, if it has that many.
    fn prefix_ones(&self, j: usize, k: usize) -> Option<i32> {
        let r = self.block_range(j);
        (k <= r.len()).then(|| self.text.ones(r.start, r.start + k) as i32)
    }

    /// Ones in the full blocks strictly between `i` and `j` (`i < j`).
    pub fn between_ones(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < j);
        self.text.ones((i + 1) * self.block, j * self.block)
    }
}

/// `C_ℓ` for `ℓ = 1..=2b`: entry `(i, j)` is the best 1-count of a window made
/// of a suffix of block `i`, the full blocks in between and a prefix of block
/// `j`, where suffix and prefix lengths sum to `ℓ`. Such a window has length
/// `ℓ + b·(j - i - 1)`. Cells with `i >= j` hold the semiring sentinel.
#[derive(Clone, Debug)]
pub struct CrossBlockTables {
    block: usize,
    tables: Vec<Matrix<i32>>,
}

impl CrossBlockTables {
    pub fn block_len(&self) -> usize {
        self.block
    }

    /// `C_ℓ`, for `1 <= ℓ <= 2b`.
    pub fn table(&self, ell: usize) -> Option<&Matrix<i32>> {
        ell.checked_sub(1).and_then(|k| self.tables.get(k))
    }

    pub fn get(&self, ell: usize, i: usize, j: usize) -> Option<i32> {
        self.table(ell)?.get(i, j)
    }
}

/// Builds `C_ℓ` with one tropical product.
///
/// For `ℓ <= b` the split index `k` is the suffix length (`0..=ℓ`, either side
/// may be empty). For `ℓ > b` both sides must be non-empty and `k` ranges over
/// `0..=2b-ℓ`, with suffix length `k + ℓ - b` and prefix length `b - k`.
pub fn cross_table<S, K>(part: &BlockPartition<'_>, ell: usize, kernel: &K) -> Result<Matrix<i32>>
where
    S: Semiring,
    K: ProductKernel,
{
    let (b, m) = (part.block, part.count);
    if ell == 0 || ell > 2 * b {
        return Err(Error::InvalidParameter(format!(
            "combined length {ell} outside 1..={}",
            2 * b
        )));
    }
    let zero = S::zero::<i32>();
    // (suffix length, prefix length) for split index k
    let split = |k: usize| if ell <= b { (k, ell - k) } else { (k + ell - b, b - k) };
    let width = if ell <= b { ell + 1 } else { 2 * b - ell + 1 };
    let a = Matrix::from_fn(m, width, |i, k| part.suffix_ones(i, split(k).0).unwrap_or(zero));
    let bm = Matrix::from_fn(width, m, |k, j| part.prefix_ones(j, split(k).1).unwrap_or(zero));
    let c = kernel.multiply::<S, i32>(&a, &bm)?;
    Ok(Matrix::from_fn(m, m, |i, j| {
        if i < j {
            S::times(c[(i, j)], part.between_ones(i, j) as i32)
        } else {
            zero
        }
    }))
}

pub fn build_cross_tables<S, K>(part: &BlockPartition<'_>, kernel: &K) -> Result<CrossBlockTables>
where
    S: Semiring,
    K: ProductKernel,
{
    let tables = (1..=2 * part.block)
        .map(|ell| cross_table::<S, K>(part, ell, kernel))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossBlockTables {
        block: part.block,
        tables,
    })
}

fn blocked_extremes<S, K>(part: &BlockPartition<'_>, kernel: &K) -> Result<Vec<i32>>
where
    S: Semiring,
    K: ProductKernel,
{
    let n = part.text.len();
    let (b, m) = (part.block, part.count);
    let zero = S::zero::<i32>();
    let mut best = vec![zero; n + 1];

    for i in 0..m {
        let weights: Vec<i32> = part.block(i).iter().map(|&x| x as i32).collect();
        for (size, v) in window_extremes::<S, i32>(&weights).into_iter().enumerate().skip(1) {
            best[size] = S::plus(best[size], v);
        }
    }
    if m < 2 {
        return Ok(best);
    }

    let fold = |mut acc: Vec<i32>, ell: usize| -> Result<Vec<i32>> {
        let c = cross_table::<S, K>(part, ell, kernel)?;
        for gap in 0..m - 1 {
            let size = ell + gap * b;
            if size > n {
                break;
            }
            for i in 0..m - gap - 1 {
                acc[size] = S::plus(acc[size], c[(i, i + gap + 1)]);
            }
        }
        Ok(acc)
    };
    let merge = |mut x: Vec<i32>, y: Vec<i32>| {
        for (a, b) in x.iter_mut().zip(y) {
            *a = S::plus(*a, b);
        }
        x
    };
    let cross = (1..=2 * b)
        .into_par_iter()
        .try_fold(|| vec![zero; n + 1], fold)
        .try_reduce(|| vec![zero; n + 1], |x, y| Ok(merge(x, y)))?;
    Ok(merge(best, cross))
}

/// Block-decomposition backend. `block` defaults to `⌈√n⌉`.
pub fn blocked_profile(s: &BinaryString, block: Option<usize>) -> Result<Profile> {
    blocked_profile_with(s, block, &TiledKernel::default())
}

pub fn blocked_profile_with<K: ProductKernel>(
    s: &BinaryString,
    block: Option<usize>,
    kernel: &K,
) -> Result<Profile> {
    let b = block.unwrap_or_else(|| ceil_sqrt(s.len()));
    let part = BlockPartition::new(s, b)?;
    if b >= s.len() {
        return Ok(naive_profile(s));
    }
    Ok(to_profile(
        blocked_extremes::<MinPlus, K>(&part, kernel)?,
        blocked_extremes::<MaxPlus, K>(&part, kernel)?,
    ))
}

/// Best window weight for every length, by halving. Entry 0 is the sentinel.
fn recursive_extremes<S, T, K>(w: &[T], kernel: &K) -> Result<Vec<T>>
where
    S: Semiring,
    T: Scalar,
    K: ProductKernel,
{
    let n = w.len();
    if n <= RECURSION_CUTOFF {
        return Ok(window_extremes::<S, T>(w));
    }
    let mid = n / 2;
    let (left, right) = w.split_at(mid);
    let (lbest, rbest) = rayon::join(
        || recursive_extremes::<S, T, K>(left, kernel),
        || recursive_extremes::<S, T, K>(right, kernel),
    );
    let (lbest, rbest) = (lbest?, rbest?);

    // u[a]: weight of the last a entries of the left half; v[c]: first c of the right.
    let mut u = Vec::with_capacity(left.len() + 1);
    u.push(T::zero());
    for &x in left.iter().rev() {
        u.push(*u.last().unwrap() + x);
    }
    let mut v = Vec::with_capacity(right.len() + 1);
    v.push(T::zero());
    for &x in right {
        v.push(*v.last().unwrap() + x);
    }
    let straddle = convolve_blocked::<S, T, K>(&u, &v, kernel)?;

    let mut best = straddle;
    best[0] = S::zero();
    for (size, &x) in lbest.iter().enumerate().skip(1) {
        best[size] = S::plus(best[size], x);
    }
    for (size, &x) in rbest.iter().enumerate().skip(1) {
        best[size] = S::plus(best[size], x);
    }
    Ok(best)
}

/// Halving backend.
pub fn recursive_profile(s: &BinaryString) -> Result<Profile> {
    recursive_profile_with(s, &TiledKernel::default())
}

pub fn recursive_profile_with<K: ProductKernel>(s: &BinaryString, kernel: &K) -> Result<Profile> {
    let w = s.weights();
    Ok(to_profile(
        recursive_extremes::<MinPlus, i32, K>(&w, kernel)?,
        recursive_extremes::<MaxPlus, i32, K>(&w, kernel)?,
    ))
}

/// Best weight over windows containing a fixed anchor position.
///
/// `u[a]` is the cost of taking `a` entries to the left of the anchor and
/// `v[c]` of taking `c` to the right (`u[0] = v[0] = 0`). Entry `k` of the
/// result is the best window of size `k + 1`.
pub fn anchored_profile<S: Semiring, T: Scalar>(u: &[T], v: &[T], anchor: T) -> Result<Vec<T>> {
    Ok(convolve::<S, T>(u, v)?
        .into_iter()
        .map(|x| S::times(x, anchor))
        .collect())
}

pub fn anchored_min_profile<T: Scalar>(u: &[T], v: &[T], anchor: T) -> Result<Vec<T>> {
    anchored_profile::<MinPlus, T>(u, v, anchor)
}

pub fn anchored_max_profile<T: Scalar>(u: &[T], v: &[T], anchor: T) -> Result<Vec<T>> {
    anchored_profile::<MaxPlus, T>(u, v, anchor)
}

/// Maximum total weight of a length-`i` substring, for `i = 1..=n`
/// (entry `i - 1` of the result).
pub fn weighted_max_sums(weights: &[i64]) -> Result<Vec<i64>> {
    weighted_max_sums_with(weights, &TiledKernel::default())
}

pub fn weighted_max_sums_with<K: ProductKernel>(weights: &[i64], kernel: &K) -> Result<Vec<i64>> {
    if weights.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&w) = weights.iter().find(|w| w.abs() > (1i64 << 40)) {
        return Err(Error::InvalidParameter(format!("weight {w} exceeds ±2^40")));
    }
    let mut best = recursive_extremes::<MaxPlus, i64, K>(weights, kernel)?;
    best.remove(0);
    Ok(best)
}

/// Parses whitespace-separated signed decimal weights.
pub fn parse_weights(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let mut rest = line;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let tok = &tail[..end];
            let w = tok.parse::<i64>().map_err(|_| Error::Parse {
                line: line_idx + 1,
                column: line[..line.len() - tail.len()].chars().count() + 1,
                message: format!("`{tok}` is not an integer weight"),
            })?;
            out.push(w);
            rest = &tail[end..];
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

/// Quadratic reference for [`weighted_max_sums`].
pub fn naive_weighted_max_sums(weights: &[i64]) -> Result<Vec<i64>> {
    if weights.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best = window_extremes::<MaxPlus, i64>(weights);
    best.remove(0);
    Ok(best)
}
