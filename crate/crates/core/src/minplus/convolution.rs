//! Tropical convolution of cost vectors.
//!
//! All vectors are 0-based: `w[i] = best over k of u[k] + v[i - k]`, with
//! `0 <= k < |u|` and `0 <= i - k < |v|`, so the output has `|u| + |v| - 1`
//! entries.

use crate::error::{Error, Result};
use crate::minplus::matrix::{Matrix, ProductKernel, TiledKernel};
use crate::scalar::{MaxPlus, MinPlus, Scalar, Semiring};

/// Operands shorter than this are convolved directly by the adaptive routine.
pub const BLOCKED_THRESHOLD: usize = 48;

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

fn check_operands<T>(u: &[T], v: &[T]) -> Result<()> {
    if u.is_empty() || v.is_empty() {
        Err(Error::EmptyOperand)
    } else {
        Ok(())
    }
}

/// Quadratic double loop.
pub fn convolve<S: Semiring, T: Scalar>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    check_operands(u, v)?;
    let mut w = vec![S::zero::<T>(); u.len() + v.len() - 1];
    for (k, &x) in u.iter().enumerate() {
        if S::is_zero(x) {
            continue;
        }
        for (o, &y) in w[k..].iter_mut().zip(v) {
            *o = S::plus(*o, S::times(x, y));
        }
    }
    Ok(w)
}

/// Convolution through `2⌈√n⌉ - 1` matrix products of `⌈√n⌉`-segment tables.
///
/// Both vectors are cut into segments of length `s = ⌈√n⌉`. For every offset
/// sum `d = a + c` the table `A[p, a] = u[p·s + a]` is multiplied with
/// `B_d[a, q] = v[q·s + d - a]`; entry `(p, q)` of the product is the best
/// split landing at output index `(p + q)·s + d`. Out-of-range cells are the
/// semiring sentinel.
pub fn convolve_blocked<S, T, K>(u: &[T], v: &[T], kernel: &K) -> Result<Vec<T>>
where
    S: Semiring,
    T: Scalar,
    K: ProductKernel,
{
    check_operands(u, v)?;
    let n = u.len().max(v.len());
    let s = ceil_sqrt(n);
    let segs_u = u.len().div_ceil(s);
    let segs_v = v.len().div_ceil(s);
    let out_len = u.len() + v.len() - 1;
    let zero = S::zero::<T>();

    let a = Matrix::from_fn(segs_u, s, |p, off| u.get(p * s + off).copied().unwrap_or(zero));
    let mut w = vec![zero; out_len];
    for d in 0..(2 * s - 1) {
        let b = Matrix::from_fn(s, segs_v, |off, q| {
            if off > d || d - off >= s {
                return zero;
            }
            v.get(q * s + d - off).copied().unwrap_or(zero)
        });
        let c = kernel.multiply::<S, T>(&a, &b)?;
        for p in 0..segs_u {
            for q in 0..segs_v {
                let idx = (p + q) * s + d;
                if idx < out_len {
                    w[idx] = S::plus(w[idx], c[(p, q)]);
                }
            }
        }
    }
    Ok(w)
}

/// Blocked when both operands are long enough to amortise the tables,
/// otherwise the direct loop.
pub fn convolve_adaptive<S, T, K>(u: &[T], v: &[T], kernel: &K) -> Result<Vec<T>>
where
    S: Semiring,
    T: Scalar,
    K: ProductKernel,
{
    if u.len().min(v.len()) >= BLOCKED_THRESHOLD {
        convolve_blocked::<S, T, K>(u, v, kernel)
    } else {
        convolve::<S, T>(u, v)
    }
}

/// Convolution of a short operand against a long one, one chunk at a time.
///
/// The short side is padded with sentinels to at least `pad_to` entries, and
/// the long side is cut into consecutive chunks of that length. Chunk 0 covers
/// indices `0..=L`; chunk `t` covers `(t·L, (t+1)·L]`, so every split index is
/// evaluated exactly once. Each chunk is rebased on the value at its left edge
/// (the cumulative cost of everything before it) so the square sub-problem
/// works on small numbers, and the base is added back when folding.
pub fn convolve_chunked<S, T, K>(u: &[T], v: &[T], pad_to: usize, kernel: &K) -> Result<Vec<T>>
where
    S: Semiring,
    T: Scalar,
    K: ProductKernel,
{
    check_operands(u, v)?;
    let (short, long) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let out_len = u.len() + v.len() - 1;
    let zero = S::zero::<T>();

    let width = short.len().max(pad_to).max(1);
    let mut padded = short.to_vec();
    padded.resize(width, zero);

    let mut w = vec![zero; out_len];
    let mut start = 0usize;
    let mut chunk = Vec::with_capacity(width + 1);
    while start < long.len() {
        let end = if start == 0 {
            (width + 1).min(long.len())
        } else {
            (start + width).min(long.len())
        };
        let base = if start == 0 { long[0] } else { long[start - 1] };
        let rebase = base.is_finite();
        chunk.clear();
        chunk.extend(long[start..end].iter().map(|&x| {
            if rebase && x.is_finite() {
                x - base
            } else {
                x
            }
        }));
        let part = convolve_adaptive::<S, T, K>(&padded, &chunk, kernel)?;
        for (i, &x) in part.iter().enumerate() {
            let idx = start + i;
            if idx >= out_len {
                break;
            }
            let val = if rebase && x.is_finite() { x + base } else { x };
            w[idx] = S::plus(w[idx], val);
        }
        start = end;
    }
    Ok(w)
}

pub fn min_plus_convolution<T: Scalar>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    convolve::<MinPlus, T>(u, v)
}

pub fn max_plus_convolution<T: Scalar>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    convolve::<MaxPlus, T>(u, v)
}

pub fn min_plus_convolution_blocked<T: Scalar>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    convolve_blocked::<MinPlus, T, _>(u, v, &TiledKernel::default())
}

pub fn max_plus_convolution_blocked<T: Scalar>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    convolve_blocked::<MaxPlus, T, _>(u, v, &TiledKernel::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minplus::matrix::NaiveKernel;
    use proptest::prelude::*;

    /// Enumerates every (k, i - k) split independently of the kernels above.
    fn oracle<S: Semiring>(u: &[i64], v: &[i64]) -> Vec<i64> {
        (0..u.len() + v.len() - 1)
            .map(|i| {
                let mut best = S::zero::<i64>();
                for k in 0..u.len() {
                    if k <= i && i - k < v.len() {
                        best = S::plus(best, S::times(u[k], v[i - k]));
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn min_examples() {
        assert_eq!(min_plus_convolution(&[0i32, 2], &[0, 1]).unwrap(), vec![0, 1, 3]);
        assert_eq!(min_plus_convolution(&[0i32], &[4, 1, 7]).unwrap(), vec![4, 1, 7]);
        assert_eq!(
            min_plus_convolution(&[1i32, 0, 2], &[0, 3, 1]).unwrap(),
            vec![1, 0, 2, 1, 3]
        );
        assert_eq!(
            min_plus_convolution_blocked(&[1i32, 0, 2], &[0, 3, 1]).unwrap(),
            vec![1, 0, 2, 1, 3]
        );
        assert_eq!(min_plus_convolution_blocked(&[0i32, 2], &[0, 1]).unwrap(), vec![0, 1, 3]);
        assert_eq!(min_plus_convolution_blocked(&[0i32], &[4, 1, 7]).unwrap(), vec![4, 1, 7]);
    }

    #[test]
    fn max_examples() {
        assert_eq!(max_plus_convolution(&[0i32, 2], &[0, 1]).unwrap(), vec![0, 2, 3]);
        assert_eq!(max_plus_convolution(&[0i32], &[4, -1, 7]).unwrap(), vec![4, -1, 7]);
        assert_eq!(
            max_plus_convolution(&[1i32, 0, 2], &[0, 3, 1]).unwrap(),
            vec![1, 4, 3, 5, 3]
        );
        assert_eq!(
            max_plus_convolution_blocked(&[1i32, 0, 2], &[0, 3, 1]).unwrap(),
            vec![1, 4, 3, 5, 3]
        );
    }

    #[test]
    fn empty_operand_rejected() {
        assert_eq!(min_plus_convolution::<i32>(&[], &[1]), Err(Error::EmptyOperand));
        assert_eq!(min_plus_convolution_blocked::<i32>(&[1], &[]), Err(Error::EmptyOperand));
        assert!(convolve_chunked::<MinPlus, i32, _>(&[], &[1], 4, &NaiveKernel).is_err());
    }

    #[test]
    fn inf_entries_avoided_when_finite_split_exists() {
        let inf = i32::INF;
        let u = [0, inf, 3, inf];
        let v = [inf, 1, inf];
        let w = min_plus_convolution_blocked(&u, &v).unwrap();
        assert_eq!(w, vec![inf, 1, inf, 4, inf, inf]);
    }

    #[test]
    fn long_random_vectors_match() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let u: Vec<i64> = (0..1000).map(|_| rng.gen_range(0..=1000)).collect();
        let v: Vec<i64> = (0..1000).map(|_| rng.gen_range(0..=1000)).collect();
        assert_eq!(min_plus_convolution_blocked(&u, &v).unwrap(), oracle::<MinPlus>(&u, &v));
        assert_eq!(max_plus_convolution_blocked(&u, &v).unwrap(), oracle::<MaxPlus>(&u, &v));
    }

    fn cost_vec(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(prop_oneof![12 => 0i64..40, 1 => Just(i64::INF)], 1..max_len)
    }

    proptest! {
        #[test]
        fn blocked_matches_oracle(u in cost_vec(200), v in cost_vec(200)) {
            prop_assert_eq!(convolve_blocked::<MinPlus, _, _>(&u, &v, &NaiveKernel).unwrap(), oracle::<MinPlus>(&u, &v));
            prop_assert_eq!(min_plus_convolution(&u, &v).unwrap(), oracle::<MinPlus>(&u, &v));
        }

        #[test]
        fn max_blocked_matches_oracle(u in proptest::collection::vec(-30i64..30, 1..150),
                                      v in proptest::collection::vec(-30i64..30, 1..150)) {
            prop_assert_eq!(max_plus_convolution_blocked(&u, &v).unwrap(), oracle::<MaxPlus>(&u, &v));
        }

        #[test]
        fn chunked_matches_oracle(u in cost_vec(60), v in cost_vec(400), pad in 1usize..40) {
            let want = oracle::<MinPlus>(&u, &v);
            prop_assert_eq!(convolve_chunked::<MinPlus, _, _>(&u, &v, pad, &TiledKernel::default()).unwrap(), want.clone());
            prop_assert_eq!(convolve_chunked::<MinPlus, _, _>(&v, &u, pad, &NaiveKernel).unwrap(), want);
        }

        #[test]
        fn chunked_max_matches_oracle(u in proptest::collection::vec(-9i64..9, 1..30),
                                      v in proptest::collection::vec(-9i64..9, 1..300), pad in 1usize..20) {
            prop_assert_eq!(convolve_chunked::<MaxPlus, _, _>(&u, &v, pad, &NaiveKernel).unwrap(), oracle::<MaxPlus>(&u, &v));
        }
    }
}
