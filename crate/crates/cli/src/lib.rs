//! Input loading, backend dispatch and the verify / gen / bench drivers behind
//! the `jumbled` command.

pub mod alloc;

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rand::Rng;

use jumbled::generate;
use jumbled::string::naive_weighted_max_sums;
use jumbled::tree::{enumerate_connected_extremes, ORACLE_MAX_NODES};
use jumbled::{
    binarize, blocked_profile, enumerate_connected_oracle, naive_profile, parse_weights,
    recursive_profile, simple_tree_profile, tree_profile, weighted_max_sums,
    weighted_tree_max_sums, BinaryString, LabeledTree, Profile,
};

/// Header of the CSV written for weighted inputs.
pub const MAX_SUM_HEADER: &str = "size,max_sum";
pub const BENCH_HEADER: &str = "backend,kind,n,param,build_ms,peak_mem_bytes";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    String,
    Tree,
    WeightedString,
    WeightedTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Window scan over prefix sums (strings).
    Naive,
    /// Cross-block tables from one min-plus product per length (strings).
    Blocked,
    /// Halving recursion with min-plus convolution at the split (strings).
    Recursive,
    /// Quadratic knapsack DP over the binarized tree.
    SimpleTree,
    /// Micro-macro decomposition with chunked convolutions (trees).
    MicroMacro,
    /// Exhaustive enumeration of connected subsets (trees, small n).
    Enumerate,
    /// Deliberately wrong: indexes the input with its last label changed.
    #[value(hide = true)]
    Broken,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Kind {
    pub fn name(self) -> String {
        value_name(&self)
    }

    pub fn is_tree(self) -> bool {
        matches!(self, Kind::Tree | Kind::WeightedTree)
    }
}

impl Algo {
    pub fn name(self) -> String {
        value_name(&self)
    }

    pub fn default_for(kind: Kind) -> Algo {
        match kind {
            Kind::String => Algo::Blocked,
            Kind::Tree => Algo::MicroMacro,
            Kind::WeightedString => Algo::Recursive,
            Kind::WeightedTree => Algo::SimpleTree,
        }
    }

    pub fn applies_to(self, kind: Kind) -> bool {
        use Algo::*;
        match kind {
            Kind::String => matches!(self, Naive | Blocked | Recursive | Broken),
            Kind::Tree => matches!(self, SimpleTree | MicroMacro | Enumerate | Broken),
            Kind::WeightedString => matches!(self, Naive | Recursive | Broken),
            Kind::WeightedTree => matches!(self, SimpleTree | Enumerate | Broken),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    String(BinaryString),
    Tree(LabeledTree),
    WeightedString(Vec<i64>),
    WeightedTree(LabeledTree),
}

impl Input {
    pub fn parse(kind: Kind, text: &str) -> Result<Input> {
        Ok(match kind {
            Kind::String => Input::String(BinaryString::parse(text)?),
            Kind::Tree => Input::Tree(LabeledTree::parse(text, false)?),
            Kind::WeightedString => Input::WeightedString(parse_weights(text)?),
            Kind::WeightedTree => Input::WeightedTree(LabeledTree::parse(text, true)?),
        })
    }

    /// Seeded random input. `density` is the probability of a 1 label;
    /// weighted inputs draw uniformly from `-bound..=bound` instead.
    pub fn generate(kind: Kind, n: usize, seed: u64, density: f64, bound: i64) -> Result<Input> {
        let mut rng = generate::rng(seed);
        Ok(match kind {
            Kind::String => Input::String(generate::random_string(&mut rng, n, density)?),
            Kind::Tree => Input::Tree(generate::random_tree(&mut rng, n, density)?),
            Kind::WeightedString => {
                Input::WeightedString(generate::random_weights(&mut rng, n, bound)?)
            }
            Kind::WeightedTree => {
                Input::WeightedTree(generate::random_weighted_tree(&mut rng, n, bound)?)
            }
        })
    }

    pub fn kind(&self) -> Kind {
        match self {
            Input::String(_) => Kind::String,
            Input::Tree(_) => Kind::Tree,
            Input::WeightedString(_) => Kind::WeightedString,
            Input::WeightedTree(_) => Kind::WeightedTree,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Input::String(s) => s.len(),
            Input::Tree(t) | Input::WeightedTree(t) => t.len(),
            Input::WeightedString(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The input file format accepted by [`Input::parse`].
    pub fn to_text(&self) -> String {
        match self {
            Input::String(s) => format!("{s}\n"),
            Input::Tree(t) | Input::WeightedTree(t) => t.to_text(),
            Input::WeightedString(w) => {
                let words: Vec<String> = w.iter().map(i64::to_string).collect();
                format!("{}\n", words.join(" "))
            }
        }
    }

    /// Same input with the label of the last node / position changed.
    fn mutated(&self) -> Result<Input> {
        Ok(match self {
            Input::String(s) => {
                let mut bits = s.bits().to_vec();
                *bits.last_mut().unwrap() ^= 1;
                Input::String(BinaryString::new(bits)?)
            }
            Input::Tree(t) => {
                let mut labels = t.labels().to_vec();
                *labels.last_mut().unwrap() ^= 1;
                Input::Tree(LabeledTree::from_parents(&parents_of(t), labels)?)
            }
            Input::WeightedString(w) => {
                let mut w = w.clone();
                *w.last_mut().unwrap() += 1;
                Input::WeightedString(w)
            }
            Input::WeightedTree(t) => {
                let mut labels = t.labels().to_vec();
                *labels.last_mut().unwrap() += 1;
                Input::WeightedTree(LabeledTree::from_parents(&parents_of(t), labels)?)
            }
        })
    }
}

fn parents_of(t: &LabeledTree) -> Vec<Option<usize>> {
    (0..t.len()).map(|v| t.parent(v)).collect()
}

/// Block size `b` and micro size `r`; `None` picks `⌈√n⌉`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Params {
    pub block: Option<usize>,
    pub micro: Option<usize>,
}

pub fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

impl Params {
    fn check(&self) -> Result<()> {
        if self.block == Some(0) {
            bail!("--block must be at least 1");
        }
        if self.micro == Some(0) {
            bail!("--micro must be at least 1");
        }
        Ok(())
    }

    /// The `b` or `r` actually used by `algo` on an input of size `n`.
    pub fn effective(&self, algo: Algo, n: usize) -> Option<usize> {
        match algo {
            Algo::Blocked => Some(self.block.unwrap_or_else(|| ceil_sqrt(n))),
            Algo::MicroMacro => Some(self.micro.unwrap_or_else(|| ceil_sqrt(n))),
            _ => None,
        }
    }
}

/// A built index: the profile for 0/1 inputs, the per-size maximum sum for
/// weighted ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Profile(Profile),
    MaxSums(Vec<i64>),
}

impl Output {
    pub fn to_csv(&self) -> Result<String> {
        match self {
            Output::Profile(p) => Ok(p.to_csv()?),
            Output::MaxSums(sums) => {
                let mut out = format!("{MAX_SUM_HEADER}\n");
                for (i, s) in sums.iter().enumerate() {
                    writeln!(out, "{},{s}", i + 1).unwrap();
                }
                Ok(out)
            }
        }
    }

    fn row(&self, size: usize) -> Option<String> {
        match self {
            Output::Profile(p) => p.entry(size).map(|(lo, hi)| format!("min {lo}, max {hi}")),
            Output::MaxSums(s) => s.get(size.wrapping_sub(1)).map(|x| format!("max sum {x}")),
        }
    }

    fn len(&self) -> usize {
        match self {
            Output::Profile(p) => p.len(),
            Output::MaxSums(s) => s.len(),
        }
    }

    /// First size at which the two indexes disagree, with both rows.
    pub fn first_difference(&self, other: &Output) -> Option<(usize, String, String)> {
        let n = self.len().max(other.len());
        (1..=n).find_map(|i| {
            let (a, b) = (self.row(i), other.row(i));
            (a != b).then(|| {
                let show = |r: Option<String>| r.unwrap_or_else(|| "nothing".into());
                (i, show(a), show(b))
            })
        })
    }
}

fn check_oracle_size(algo: Algo, n: usize) -> Result<()> {
    if algo == Algo::Enumerate && n > ORACLE_MAX_NODES {
        bail!("enumerate handles at most {ORACLE_MAX_NODES} nodes, input has {n}");
    }
    Ok(())
}

pub fn build(input: &Input, algo: Algo, params: &Params) -> Result<Output> {
    params.check()?;
    let kind = input.kind();
    if !algo.applies_to(kind) {
        bail!("backend {} does not apply to {} input", algo.name(), kind.name());
    }
    check_oracle_size(algo, input.len())?;
    if algo == Algo::Broken {
        return build(&input.mutated()?, Algo::default_for(kind), params);
    }
    let n = input.len();
    Ok(match (input, algo) {
        (Input::String(s), Algo::Naive) => Output::Profile(naive_profile(s)),
        (Input::String(s), Algo::Blocked) => Output::Profile(blocked_profile(s, params.block)?),
        (Input::String(s), Algo::Recursive) => Output::Profile(recursive_profile(s)?),
        (Input::Tree(t), Algo::SimpleTree) => Output::Profile(simple_tree_profile(&binarize(t))?),
        (Input::Tree(t), Algo::MicroMacro) => {
            let r = params.effective(algo, n).unwrap();
            Output::Profile(tree_profile(t, r)?)
        }
        (Input::Tree(t), Algo::Enumerate) => {
            Output::Profile(enumerate_connected_oracle(t, ORACLE_MAX_NODES)?)
        }
        (Input::WeightedString(w), Algo::Naive) => Output::MaxSums(naive_weighted_max_sums(w)?),
        (Input::WeightedString(w), Algo::Recursive) => Output::MaxSums(weighted_max_sums(w)?),
        (Input::WeightedTree(t), Algo::SimpleTree) => Output::MaxSums(weighted_tree_max_sums(t)?),
        (Input::WeightedTree(t), Algo::Enumerate) => {
            Output::MaxSums(enumerate_connected_extremes(t, ORACLE_MAX_NODES)?.1)
        }
        _ => unreachable!("applicability checked above"),
    })
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub kind: Kind,
    pub algo: Algo,
    pub oracle: Algo,
    pub max_n: usize,
    pub seeds: u64,
    /// Fixed 1-density; `None` draws one per case.
    pub density: Option<f64>,
    pub params: Params,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub seed: u64,
    pub input: String,
    pub size: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: u64,
    pub mismatch: Option<Counterexample>,
}

/// Runs `algo` and `oracle` on one random input per seed, stopping at the
/// first disagreement. Case `seed` has `n` uniform in `1..=max_n`.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    for algo in [cfg.algo, cfg.oracle] {
        if !algo.applies_to(cfg.kind) {
            bail!("backend {} does not apply to {} input", algo.name(), cfg.kind.name());
        }
        check_oracle_size(algo, cfg.max_n)?;
    }
    for seed in 0..cfg.seeds {
        let mut rng = generate::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
        let n = rng.gen_range(1..=cfg.max_n);
        let density = cfg.density.unwrap_or_else(|| rng.gen_range(0.0..=1.0));
        let input = Input::generate(cfg.kind, n, seed, density, 20)?;
        let expected = build(&input, cfg.oracle, &cfg.params)?;
        let got = build(&input, cfg.algo, &cfg.params)?;
        if let Some((size, expected, got)) = expected.first_difference(&got) {
            return Ok(VerifyReport {
                cases: seed + 1,
                mismatch: Some(Counterexample {
                    seed,
                    input: input.to_text(),
                    size,
                    expected,
                    got,
                }),
            });
        }
    }
    Ok(VerifyReport {
        cases: cfg.seeds,
        mismatch: None,
    })
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub kinds: Vec<Kind>,
    pub algos: Vec<Algo>,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub density: f64,
    pub params: Params,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub csv: String,
    /// Requested combinations that were not run, with the reason.
    pub skipped: Vec<String>,
}

/// Times one build per (kind, size, backend). Peak memory is the heap
/// high-water mark above the live size at the start of the build, as seen by
/// [`alloc::CountingAlloc`].
pub fn bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.params.check()?;
    let mut report = BenchReport {
        csv: format!("{BENCH_HEADER}\n"),
        skipped: Vec::new(),
    };
    for &kind in &cfg.kinds {
        for &n in &cfg.sizes {
            let input = Input::generate(kind, n, cfg.seed, cfg.density, 20)?;
            for &algo in &cfg.algos {
                if algo == Algo::Broken || !algo.applies_to(kind) {
                    let note = format!("{} on {}: not applicable", algo.name(), kind.name());
                    if !report.skipped.contains(&note) {
                        report.skipped.push(note);
                    }
                    continue;
                }
                if algo == Algo::Enumerate && n > ORACLE_MAX_NODES {
                    report.skipped.push(format!("enumerate at n={n}: too large"));
                    continue;
                }
                let base = alloc::live_bytes();
                alloc::reset_peak();
                let start = Instant::now();
                let out = build(&input, algo, &cfg.params)
                    .with_context(|| format!("{} on {} n={n}", algo.name(), kind.name()))?;
                let elapsed = start.elapsed();
                let peak = alloc::peak_bytes().saturating_sub(base);
                drop(out);
                let param = cfg.params.effective(algo, n).map_or(String::new(), |p| p.to_string());
                writeln!(
                    report.csv,
                    "{},{},{n},{param},{:.3},{peak}",
                    algo.name(),
                    kind.name(),
                    elapsed.as_secs_f64() * 1e3
                )
                .unwrap();
            }
        }
    }
    Ok(report)
}
