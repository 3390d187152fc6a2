//! Seeded random inputs. The same seed always produces the same input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::string::BinaryString;
use crate::tree::LabeledTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(n: usize, density: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!(
            "density {density} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// `n` i.i.d. bits, each 1 with probability `density`.
pub fn random_bits<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Vec<u8>> {
    check(n, density)?;
    Ok((0..n).map(|_| rng.gen_bool(density) as u8).collect())
}

pub fn random_string<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<BinaryString> {
    BinaryString::new(random_bits(rng, n, density)?)
}

/// Uniform integer weights in `-bound..=bound`.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<Vec<i64>> {
    check(n, 0.5)?;
    Ok((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// Random recursive tree: node 0 is the root and every later node picks its
/// parent uniformly among the nodes before it.
pub fn random_parents<R: Rng>(rng: &mut R, n: usize) -> Vec<Option<usize>> {
    (0..n)
        .map(|v| (v > 0).then(|| rng.gen_range(0..v)))
        .collect()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<LabeledTree> {
    check(n, density)?;
    let parents = random_parents(rng, n);
    let labels = (0..n).map(|_| rng.gen_bool(density) as i64).collect();
    LabeledTree::from_parents(&parents, labels)
}

pub fn random_weighted_tree<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<LabeledTree> {
    check(n, 0.5)?;
    let parents = random_parents(rng, n);
    let labels = random_weights(rng, n, bound)?;
    LabeledTree::from_parents(&parents, labels)
}
