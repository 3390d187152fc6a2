//! The index itself: per-size extremes of the 1-count, and the queries and
//! CSV encoding built on top of it.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "size,min_ones,max_ones";

/// For every size `i` in `1..=n`, the fewest and most 1s over all
/// substrings (or connected subgraphs) of that size.
///
/// A size with no occurrence is stored as `(u32::MAX, 0)`, i.e. `min > max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    // index 0 is unused so that entry i describes size i
    min_ones: Vec<u32>,
    max_ones: Vec<u32>,
}

const NO_MIN: u32 = u32::MAX;
const NO_MAX: u32 = 0;

impl Profile {
    /// Profile of size `n` in which no size is feasible yet.
    pub fn infeasible(n: usize) -> Self {
        Profile {
            min_ones: vec![NO_MIN; n + 1],
            max_ones: vec![NO_MAX; n + 1],
        }
    }

    /// Builds a profile from 1-based arrays given as `min[i-1]`, `max[i-1]`,
    /// checking the structural invariants.
    pub fn from_extremes(min_ones: &[u32], max_ones: &[u32]) -> Result<Self> {
        if min_ones.len() != max_ones.len() {
            return Err(Error::InvalidParameter(format!(
                "min has {} entries but max has {}",
                min_ones.len(),
                max_ones.len()
            )));
        }
        let mut p = Profile::infeasible(min_ones.len());
        p.min_ones[1..].copy_from_slice(min_ones);
        p.max_ones[1..].copy_from_slice(max_ones);
        p.validate()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.min_ones.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min_ones(&self, size: usize) -> Option<u32> {
        self.entry(size).map(|(lo, _)| lo)
    }

    pub fn max_ones(&self, size: usize) -> Option<u32> {
        self.entry(size).map(|(_, hi)| hi)
    }

    /// `(min, max)` for a feasible size.
    pub fn entry(&self, size: usize) -> Option<(u32, u32)> {
        let lo = *self.min_ones.get(size)?;
        let hi = self.max_ones[size];
        (size >= 1 && lo <= hi).then_some((lo, hi))
    }

    pub fn is_complete(&self) -> bool {
        (1..=self.len()).all(|i| self.entry(i).is_some())
    }

    pub fn min_vec(&self) -> Vec<u32> {
        self.min_ones[1..].to_vec()
    }

    pub fn max_vec(&self) -> Vec<u32> {
        self.max_ones[1..].to_vec()
    }

    /// Wraps arrays indexed by size (entry 0 ignored) without validation.
    pub(crate) fn from_sized(mut min_ones: Vec<u32>, mut max_ones: Vec<u32>) -> Self {
        debug_assert_eq!(min_ones.len(), max_ones.len());
        if let (Some(lo), Some(hi)) = (min_ones.first_mut(), max_ones.first_mut()) {
            *lo = NO_MIN;
            *hi = NO_MAX;
        }
        Profile { min_ones, max_ones }
    }

    /// Checks `0 <= min <= max <= i` and the unit-step property on both arrays.
    pub fn validate(&self) -> Result<()> {
        for i in 1..=self.len() {
            let (lo, hi) = self.entry(i).ok_or(Error::IncompleteProfile { size: i })?;
            if hi as usize > i {
                return Err(Error::InvalidParameter(format!(
                    "size {i} has max_ones {hi} greater than the size"
                )));
            }
            if i > 1 {
                let (plo, phi) = self.entry(i - 1).unwrap();
                for (step, arr) in [(lo as i64 - plo as i64, "min"), (hi as i64 - phi as i64, "max")] {
                    if !(0..=1).contains(&step) {
                        return Err(Error::InvalidParameter(format!(
                            "{arr}_ones steps by {step} between sizes {} and {i}",
                            i - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::with_capacity(16 * (self.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for i in 1..=self.len() {
            let (lo, hi) = self.entry(i).ok_or(Error::IncompleteProfile { size: i })?;
            writeln!(out, "{i},{lo},{hi}").unwrap();
        }
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == CSV_HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("expected header `{CSV_HEADER}`"),
                })
            }
        }
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.trim().split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("expected 3 fields, found {}", fields.len()),
                });
            }
            let mut nums = [0u64; 3];
            let mut column = 1;
            for (k, f) in fields.iter().enumerate() {
                nums[k] = f.parse().map_err(|_| Error::Parse {
                    line,
                    column,
                    message: format!("`{f}` is not a non-negative integer"),
                })?;
                column += f.len() + 1;
            }
            if nums[0] as usize != lo.len() + 1 {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("expected size {}, found {}", lo.len() + 1, nums[0]),
                });
            }
            let to_u32 = |x: u64| {
                u32::try_from(x).map_err(|_| Error::Parse {
                    line,
                    column: 1,
                    message: format!("{x} does not fit in 32 bits"),
                })
            };
            lo.push(to_u32(nums[1])?);
            hi.push(to_u32(nums[2])?);
        }
        if lo.is_empty() {
            return Err(Error::EmptyInput);
        }
        Profile::from_extremes(&lo, &hi)
    }

    /// Heap bytes held by the two arrays.
    pub fn heap_bytes(&self) -> usize {
        8 * self.min_ones.len()
    }
}

/// Whether some substring/subgraph of size `i` has exactly `j` ones.
///
/// Two array reads, no loop. Out-of-domain arguments answer `false`.
#[inline]
pub fn occurs(p: &Profile, i: usize, j: i64) -> bool {
    if i == 0 || i >= p.min_ones.len() || j < 0 {
        return false;
    }
    let j = j as u64;
    p.min_ones[i] as u64 <= j && j <= p.max_ones[i] as u64
}

/// Pointwise fold: min of minima, max of maxima. The shorter operand is
/// treated as infeasible beyond its end.
pub fn merge_profiles(a: &Profile, b: &Profile) -> Profile {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    out.merge_from(short);
    out
}

impl Profile {
    pub(crate) fn merge_from(&mut self, other: &Profile) {
        for i in 1..=other.len().min(self.len()) {
            if let Some((lo, hi)) = other.entry(i) {
                self.absorb(i, lo, hi);
            }
        }
    }

    #[inline]
    pub(crate) fn absorb(&mut self, size: usize, lo: u32, hi: u32) {
        if self.entry(size).is_none() {
            self.min_ones[size] = lo;
            self.max_ones[size] = hi;
        } else {
            self.min_ones[size] = self.min_ones[size].min(lo);
            self.max_ones[size] = self.max_ones[size].max(hi);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(lo: &[u32], hi: &[u32]) -> Profile {
        Profile::from_extremes(lo, hi).unwrap()
    }

    fn p0110() -> Profile {
        p(&[0, 1, 2, 2], &[1, 2, 2, 2])
    }

    #[test]
    fn occurs_examples() {
        let prof = p0110();
        assert!(occurs(&prof, 2, 1));
        assert!(!occurs(&prof, 2, 0));
        assert!(!occurs(&prof, 5, 0));
        assert!(!occurs(&prof, 5, 3));
        assert!(!occurs(&prof, 0, 0));
        assert!(!occurs(&prof, 1, -1));
        assert!(!occurs(&prof, 1, 2));
        assert!(occurs(&prof, 4, 2));
    }

    #[test]
    fn merge_examples() {
        let a = p(&[0, 1], &[1, 1]);
        let b = p(&[1, 1], &[1, 2]);
        assert_eq!(merge_profiles(&a, &b), p(&[0, 1], &[1, 2]));
        assert_eq!(merge_profiles(&a, &a), a);
        assert_eq!(merge_profiles(&a, &Profile::infeasible(2)), a);
        assert_eq!(merge_profiles(&Profile::infeasible(5), &a).entry(1), Some((0, 1)));
        assert_eq!(merge_profiles(&Profile::infeasible(5), &a).entry(3), None);
    }

    #[test]
    fn csv_round_trip_and_format() {
        let prof = p0110();
        let csv = prof.to_csv().unwrap();
        assert_eq!(csv, "size,min_ones,max_ones\n1,0,1\n2,1,2\n3,2,2\n4,2,2\n");
        assert_eq!(Profile::from_csv(&csv).unwrap(), prof);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(Profile::from_csv(""), Err(Error::Parse { line: 1, .. })));
        assert_eq!(Profile::from_csv("size,min_ones,max_ones\n"), Err(Error::EmptyInput));
        assert!(matches!(
            Profile::from_csv("size,min_ones,max_ones\n1,0,x\n"),
            Err(Error::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(
            Profile::from_csv("size,min_ones,max_ones\n2,0,1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        // a max larger than the size is rejected by validation
        assert!(Profile::from_csv("size,min_ones,max_ones\n1,0,2\n").is_err());
        assert!(Profile::infeasible(2).to_csv().is_err());
    }

    fn any_profile() -> impl Strategy<Value = Profile> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0u32..2, 0u32..2, any::<bool>()), n).prop_map(|v| {
                let mut prof = Profile::infeasible(v.len());
                for (i, (lo, hi, present)) in v.into_iter().enumerate() {
                    if present {
                        prof.absorb(i + 1, lo.min(hi), lo.max(hi));
                    }
                }
                prof
            })
        })
    }

    proptest! {
        #[test]
        fn merge_is_a_semilattice(a in any_profile(), b in any_profile(), c in any_profile()) {
            prop_assert_eq!(merge_profiles(&a, &b), merge_profiles(&b, &a));
            prop_assert_eq!(
                merge_profiles(&merge_profiles(&a, &b), &c),
                merge_profiles(&a, &merge_profiles(&b, &c))
            );
            prop_assert_eq!(merge_profiles(&a, &a), a);
        }
    }
}
