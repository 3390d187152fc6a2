//! Static bit sequence with constant-time `rank1`.
//!
//! Bits are packed into 64-bit words. Alongside every word the directory keeps
//! the number of ones in all preceding words, so a query costs one directory
//! read and one masked popcount.

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RankBitvector {
    words: Vec<u64>,
    /// `ones_before[w]` is the popcount of `words[..w]`.
    ones_before: Vec<u32>,
    len: usize,
}

impl RankBitvector {
    pub fn from_bits<I>(bits: I) -> Self
    where
        I: IntoIterator<Item = bool>,
    {
        let mut words = Vec::new();
        let mut len = 0usize;
        for bit in bits {
            if len.is_multiple_of(WORD) {
                words.push(0u64);
            }
            if bit {
                *words.last_mut().unwrap() |= 1u64 << (len % WORD);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    fn from_words(words: Vec<u64>, len: usize) -> Self {
        let mut ones_before = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u32;
        for w in &words {
            ones_before.push(acc);
            acc += w.count_ones();
        }
        // Sentinel entry so rank1(len) with len a multiple of 64 needs no branch.
        ones_before.push(acc);
        RankBitvector {
            words,
            ones_before,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.words[i / WORD] >> (i % WORD) & 1 == 1)
    }

    /// Number of ones among the first `i` bits, for `0 <= i <= len`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::RankOutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(self.rank1_unchecked(i))
    }

    #[inline]
    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        let (w, bit) = (i / WORD, i % WORD);
        let base = self.ones_before[w] as usize;
        if bit == 0 {
            base
        } else {
            base + (self.words[w] & ((1u64 << bit) - 1)).count_ones() as usize
        }
    }

    pub fn count_ones(&self) -> usize {
        *self.ones_before.last().unwrap() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.words[i / WORD] >> (i % WORD) & 1 == 1)
    }

    /// Heap bytes held by the structure.
    pub fn heap_bytes(&self) -> usize {
        self.words.len() * 8 + self.ones_before.len() * 4
    }
}

pub fn build_rank(bits: &[bool]) -> RankBitvector {
    RankBitvector::from_bits(bits.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &[u8]) -> RankBitvector {
        RankBitvector::from_bits(bits.iter().map(|&b| b == 1))
    }

    #[test]
    fn empty_sequence() {
        let b = bv(&[]);
        assert_eq!(b.rank1(0), Ok(0));
        assert!(b.rank1(1).is_err());
    }

    #[test]
    fn small_examples() {
        let b = bv(&[1, 0, 1, 1, 0]);
        assert_eq!(b.rank1(0), Ok(0));
        assert_eq!(b.rank1(3), Ok(2));
        assert_eq!(b.rank1(5), Ok(3));
        assert_eq!(
            b.rank1(6),
            Err(Error::RankOutOfRange { index: 6, len: 5 })
        );
    }

    #[test]
    fn saturated_word() {
        let b = bv(&[1; 64]);
        assert_eq!(b.rank1(64), Ok(64));
        assert_eq!(b.rank1(63), Ok(63));
        let b = bv(&[1; 130]);
        assert_eq!(b.rank1(128), Ok(128));
        assert_eq!(b.rank1(130), Ok(130));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_matches_naive_popcount(bits in proptest::collection::vec(any::<bool>(), 0..100_000)) {
            let b = build_rank(&bits);
            let mut naive = 0usize;
            for i in 0..=bits.len() {
                prop_assert_eq!(b.rank1(i).unwrap(), naive);
                if i < bits.len() && bits[i] {
                    naive += 1;
                }
            }
            prop_assert_eq!(b.count_ones(), naive);
            // rebuilding from the stored bits gives an identical structure
            prop_assert_eq!(RankBitvector::from_bits(b.iter()), b);
        }

        #[test]
        fn rank_is_monotone_with_unit_steps(bits in proptest::collection::vec(any::<bool>(), 0..2_000)) {
            let b = build_rank(&bits);
            for i in 1..=bits.len() {
                let step = b.rank1(i).unwrap() - b.rank1(i - 1).unwrap();
                prop_assert!(step <= 1);
                prop_assert_eq!(step == 1, bits[i - 1]);
            }
        }
    }
}
