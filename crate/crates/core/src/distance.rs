//! Minimum distance: exhaustive Gray-code enumeration for small dimensions and
//! the Brouwer–Zimmermann algorithm for everything else.
//!
//! The Brouwer–Zimmermann engine row-reduces the generator on successive
//! disjoint column windows, giving systematic matrices `Γ_1, Γ_2, …`. Window
//! `j` contributes `r_j` fresh information positions; the remaining `k − r_j`
//! positions of its information set reuse earlier windows (its *deficit*).
//! After every codeword with information weight ≤ `w` has been enumerated in
//! `Γ_j`, any word not yet seen has at least `w + 1 − deficit_j` ones in window
//! `j`. Summing over windows gives the lower bound, while the lightest word
//! seen so far is the upper bound.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{DistanceInfo, LinearCode};
use crate::combinations::{binomial, RevolvingDoor};
use crate::error::{Error, Result};
use crate::gf2::{words_for, BitMatrix, BitVector};

/// Largest dimension accepted by [`min_distance_bruteforce`].
pub const BRUTE_FORCE_MAX_K: usize = 28;

pub const ENV_BUDGET_SECONDS: &str = "GRCODES_BUDGET_SECONDS";
pub const ENV_BUDGET_WORK: &str = "GRCODES_BUDGET_WORK";

/// Limits for a single distance computation. `None` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    /// Maximum number of codewords visited.
    pub max_work: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_time: Some(Duration::from_secs(Self::DEFAULT_SECONDS)),
            max_work: Some(Self::DEFAULT_WORK),
        }
    }
}

impl Budget {
    pub const DEFAULT_SECONDS: u64 = 15 * 60;
    pub const DEFAULT_WORK: u64 = 1 << 35;

    pub fn unlimited() -> Self {
        Self {
            max_time: None,
            max_work: None,
        }
    }

    /// No enumeration at all: only bounds that come for free.
    pub fn zero() -> Self {
        Self {
            max_time: Some(Duration::ZERO),
            max_work: Some(0),
        }
    }

    pub fn seconds(secs: f64) -> Self {
        Self {
            max_time: Some(Duration::from_secs_f64(secs)),
            ..Self::default()
        }
    }

    pub fn with_work(mut self, work: u64) -> Self {
        self.max_work = Some(work);
        self
    }

    /// Defaults, overridden by `GRCODES_BUDGET_SECONDS` / `GRCODES_BUDGET_WORK`.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(s) = std::env::var(ENV_BUDGET_SECONDS)
            .ok()
            .and_then(|v| v.parse::<f64>().ok())
        {
            b.max_time = Some(Duration::from_secs_f64(s.max(0.0)));
        }
        if let Some(w) = std::env::var(ENV_BUDGET_WORK)
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
        {
            b.max_work = Some(w);
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.max_time == Some(Duration::ZERO) || self.max_work == Some(0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounters {
    /// Codewords visited.
    pub codewords: u64,
    pub information_sets: usize,
    /// Highest information weight fully enumerated in the first information set.
    pub max_level: usize,
}

/// Bounds after one enumeration round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSnapshot {
    pub level: usize,
    pub info_set: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    /// Codeword of weight `upper`.
    pub witness: BitVector,
    pub certified: bool,
    pub work: WorkCounters,
    pub elapsed: Duration,
    pub seed: Option<u64>,
    pub trace: Vec<BoundSnapshot>,
}

impl DistanceResult {
    pub fn contains(&self, d: usize) -> bool {
        self.lower <= d && d <= self.upper
    }

    /// Exact distance when certified.
    pub fn exact(&self) -> Option<usize> {
        self.certified.then_some(self.upper)
    }

    pub fn info(&self) -> DistanceInfo {
        DistanceInfo {
            lower: self.lower,
            upper: self.upper,
            witness: self.witness.clone(),
        }
    }

    pub fn to_record(&self) -> DistanceRecord {
        DistanceRecord {
            lower: self.lower,
            upper: self.upper,
            certified: self.certified,
            witness: self.witness.to_string(),
            work: self.work,
            elapsed_secs: self.elapsed.as_secs_f64(),
            seed: self.seed,
        }
    }
}

/// Serialized form of a [`DistanceResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub lower: usize,
    pub upper: usize,
    pub certified: bool,
    pub witness: String,
    pub work: WorkCounters,
    pub elapsed_secs: f64,
    pub seed: Option<u64>,
}

/// Fixed-width packed row used by the enumeration kernels.
trait Block: Copy + Send + Sync {
    fn load(words: &[u64]) -> Self;
    fn xor(&mut self, other: &Self);
    fn weight(&self) -> u32;
    fn store(&self, len: usize) -> BitVector;
}

impl<const W: usize> Block for [u64; W] {
    #[inline]
    fn load(words: &[u64]) -> Self {
        let mut b = [0u64; W];
        b[..words.len()].copy_from_slice(words);
        b
    }

    #[inline(always)]
    fn xor(&mut self, other: &Self) {
        for i in 0..W {
            self[i] ^= other[i];
        }
    }

    #[inline(always)]
    fn weight(&self) -> u32 {
        self.iter().map(|w| w.count_ones()).sum()
    }

    fn store(&self, len: usize) -> BitVector {
        BitVector::from_words(len, self.to_vec())
    }
}

macro_rules! with_block {
    ($n:expr, $func:ident ( $($arg:expr),* $(,)? )) => {
        match words_for($n) {
            0 | 1 => $func::<[u64; 1]>($($arg),*),
            2 => $func::<[u64; 2]>($($arg),*),
            3 => $func::<[u64; 3]>($($arg),*),
            4 => $func::<[u64; 4]>($($arg),*),
            5..=8 => $func::<[u64; 8]>($($arg),*),
            9..=16 => $func::<[u64; 16]>($($arg),*),
            _ => Err(Error::Unsupported(format!(
                "codes of length {} exceed the 1024-coordinate enumeration limit",
                $n
            ))),
        }
    };
}

fn load_rows<B: Block>(m: &BitMatrix) -> Vec<B> {
    m.rows().iter().map(|r| B::load(r.words())).collect()
}

#[derive(Clone, Copy)]
struct Best<B> {
    weight: u32,
    word: B,
}

impl<B: Block> Best<B> {
    fn none(zero: B) -> Self {
        Self {
            weight: u32::MAX,
            word: zero,
        }
    }

    #[inline(always)]
    fn offer(&mut self, word: &B) {
        let w = word.weight();
        if w < self.weight {
            self.weight = w;
            self.word = *word;
        }
    }

    fn merge(&mut self, other: &Best<B>) {
        if other.weight < self.weight {
            *self = *other;
        }
    }
}

struct Meter {
    start: Instant,
    deadline: Option<Instant>,
    max_work: Option<u64>,
    work: AtomicU64,
    stop: AtomicBool,
}

impl Meter {
    fn new(budget: &Budget) -> Self {
        let start = Instant::now();
        Self {
            start,
            deadline: budget.max_time.map(|d| start + d),
            max_work: budget.max_work,
            work: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    fn can_afford(&self, cost: u64) -> bool {
        match self.max_work {
            Some(max) => self.work.load(Ordering::Relaxed).saturating_add(cost) <= max,
            None => true,
        }
    }

    fn out_of_time(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn add(&self, n: u64) {
        self.work.fetch_add(n, Ordering::Relaxed);
    }

    fn work(&self) -> u64 {
        self.work.load(Ordering::Relaxed)
    }
}

const CLOCK_CHECK_MASK: u64 = (1 << 18) - 1;

/// Visits every combination of `w` rows whose highest row index is `top`.
/// Returns the best word, the number of words visited and whether the scan
/// ran to completion.
fn scan_top<B: Block>(rows: &[B], top: usize, w: usize, meter: &Meter) -> (Best<B>, u64, bool) {
    let mut best = Best::none(rows[top]);
    let mut acc = rows[top];
    if w == 1 {
        best.offer(&acc);
        return (best, 1, true);
    }
    let mut rd = RevolvingDoor::new(top, w - 1);
    for &i in rd.current() {
        acc.xor(&rows[i]);
    }
    best.offer(&acc);
    let mut count = 1u64;
    while let Some((left, entered)) = rd.next_swap() {
        acc.xor(&rows[left]);
        acc.xor(&rows[entered]);
        best.offer(&acc);
        count += 1;
        if count & CLOCK_CHECK_MASK == 0 && meter.out_of_time() {
            return (best, count, false);
        }
    }
    (best, count, true)
}

/// One systematic generator in the Brouwer–Zimmermann sequence.
#[derive(Clone, Debug)]
pub struct InformationSet {
    /// `k × n` generator, reduced on this set's information positions.
    pub generator: BitMatrix,
    /// Pivot columns not covered by earlier sets.
    pub fresh: Vec<usize>,
    /// `k − |fresh|`.
    pub deficit: usize,
}

/// Greedy sequence of information sets over disjoint column windows.
pub fn information_sets(gen: &BitMatrix) -> Vec<InformationSet> {
    let n = gen.ncols();
    let k = gen.nrows();
    let mut covered = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let order: Vec<usize> = (0..n)
            .filter(|&c| !covered[c])
            .chain((0..n).filter(|&c| covered[c]))
            .collect();
        let ech = gen.rref_with_order(&order);
        debug_assert_eq!(ech.rank(), k);
        let fresh: Vec<usize> = ech.pivots.iter().copied().filter(|&p| !covered[p]).collect();
        if fresh.is_empty() {
            break;
        }
        for &p in &fresh {
            covered[p] = true;
        }
        sets.push(InformationSet {
            generator: ech.matrix,
            deficit: k - fresh.len(),
            fresh,
        });
    }
    sets
}

fn bz_lower(sets: &[InformationSet], done: &[usize], even: bool) -> usize {
    let mut lower: usize = sets
        .iter()
        .zip(done)
        .map(|(s, &w)| (w + 1).saturating_sub(s.deficit))
        .sum();
    lower = lower.max(1);
    if even && lower % 2 == 1 {
        lower += 1;
    }
    lower
}

/// Minimum distance by the Brouwer–Zimmermann algorithm.
///
/// Always returns valid bounds and a witness for the upper bound; `certified`
/// is set once the bounds meet. Exhausting the budget is not an error.
pub fn min_distance_bz(code: &LinearCode, budget: &Budget) -> Result<DistanceResult> {
    if code.k() == 0 {
        return Err(Error::Underflow("the zero code has no minimum distance".into()));
    }
    with_block!(code.n(), bz_impl(code, budget))
}

fn bz_impl<B: Block>(code: &LinearCode, budget: &Budget) -> Result<DistanceResult> {
    let meter = Meter::new(budget);
    let (n, k) = (code.n(), code.k());
    let even = code.is_even();
    let sets = information_sets(code.generator());
    let mats: Vec<Vec<B>> = sets.iter().map(|s| load_rows(&s.generator)).collect();

    // Rows of the systematic generators are codewords we get for free.
    let mut best = Best::none(mats[0][0]);
    for m in &mats {
        for r in m {
            best.offer(r);
        }
    }

    let mut done = vec![0usize; sets.len()];
    let mut lower = bz_lower(&sets, &done, even);
    let mut trace = vec![BoundSnapshot {
        level: 0,
        info_set: 0,
        lower: lower.min(best.weight as usize),
        upper: best.weight as usize,
    }];
    let mut certified = lower >= best.weight as usize;

    'levels: for w in 1..=k {
        if certified {
            break;
        }
        for (j, set) in sets.iter().enumerate() {
            if set.deficit > w {
                continue;
            }
            let cost = binomial(k, w);
            if !meter.can_afford(cost) || meter.out_of_time() {
                break 'levels;
            }
            let results: Vec<(Best<B>, u64, bool)> = (w - 1..k)
                .into_par_iter()
                .map(|top| {
                    if meter.out_of_time() {
                        (Best::none(mats[j][0]), 0, false)
                    } else {
                        scan_top(&mats[j], top, w, &meter)
                    }
                })
                .collect();
            let mut complete = true;
            for (b, count, finished) in &results {
                best.merge(b);
                meter.add(*count);
                complete &= *finished;
            }
            if !complete {
                break 'levels;
            }
            done[j] = w;
            lower = lower.max(bz_lower(&sets, &done, even));
            if j == 0 && w == k {
                // every nonzero codeword has been enumerated
                lower = best.weight as usize;
            }
            let upper = best.weight as usize;
            trace.push(BoundSnapshot {
                level: w,
                info_set: j,
                lower: lower.min(upper),
                upper,
            });
            if lower >= upper {
                certified = true;
                break 'levels;
            }
        }
    }

    let upper = best.weight as usize;
    Ok(DistanceResult {
        lower: lower.min(upper),
        upper,
        witness: best.word.store(n),
        certified,
        work: WorkCounters {
            codewords: meter.work(),
            information_sets: sets.len(),
            max_level: done[0],
        },
        elapsed: meter.start.elapsed(),
        seed: None,
        trace,
    })
}

/// Exact minimum distance by enumerating all `2^k − 1` nonzero codewords.
pub fn min_distance_bruteforce(code: &LinearCode) -> Result<DistanceResult> {
    let k = code.k();
    if k == 0 || k > BRUTE_FORCE_MAX_K {
        return Err(Error::DimensionGuard {
            k,
            max: BRUTE_FORCE_MAX_K,
        });
    }
    with_block!(code.n(), brute_impl(code))
}

fn brute_impl<B: Block>(code: &LinearCode) -> Result<DistanceResult> {
    let start = Instant::now();
    let rows: Vec<B> = load_rows(code.generator());
    let k = rows.len();
    let high = if k > 14 { 6 } else { 0 };
    let low = k - high;
    let zero = B::load(&[]);
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = zero;
            for b in 0..high {
                if (chunk >> b) & 1 == 1 {
                    acc.xor(&rows[low + b]);
                }
            }
            let mut best = Best::none(zero);
            if chunk != 0 {
                best.offer(&acc);
            }
            for i in 1u64..1 << low {
                acc.xor(&rows[i.trailing_zeros() as usize]);
                best.offer(&acc);
            }
            best
        })
        .reduce(
            || Best::none(zero),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    let d = best.weight as usize;
    Ok(DistanceResult {
        lower: d,
        upper: d,
        witness: best.word.store(code.n()),
        certified: true,
        work: WorkCounters {
            codewords: (1u64 << k) - 1,
            information_sets: 0,
            max_level: k,
        },
        elapsed: start.elapsed(),
        seed: None,
        trace: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct WordSearch {
    pub word: Option<BitVector>,
    pub seed: u64,
    pub iterations: u64,
    pub elapsed: Duration,
}

/// Randomized information-set search for a codeword of weight at most `target`.
///
/// Each iteration draws a random column order from the stream `(seed,
/// iteration)`, reduces the generator on it and checks all single rows and
/// pairs of rows. A returned word is always a codeword.
pub fn find_word_of_weight_at_most(
    code: &LinearCode,
    target: usize,
    budget: &Budget,
    seed: u64,
) -> Result<WordSearch> {
    if target == 0 || target > code.n() {
        return Err(Error::OutOfRange {
            index: target,
            len: code.n(),
        });
    }
    if code.k() == 0 {
        return Ok(WordSearch {
            word: None,
            seed,
            iterations: 0,
            elapsed: Duration::ZERO,
        });
    }
    with_block!(code.n(), word_search_impl(code, target, budget, seed))
}

fn word_search_impl<B: Block>(
    code: &LinearCode,
    target: usize,
    budget: &Budget,
    seed: u64,
) -> Result<WordSearch> {
    let meter = Meter::new(budget);
    let (n, k) = (code.n(), code.k());
    let per_iteration = (k + k * (k - 1) / 2) as u64;
    let target = target as u32;
    let mut iteration = 0u64;
    let found = loop {
        if !meter.can_afford(per_iteration) || meter.out_of_time() {
            break None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(iteration);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let rows: Vec<B> = load_rows(&code.generator().rref_with_order(&order).matrix);
        iteration += 1;
        meter.add(per_iteration);
        if let Some(r) = rows.iter().find(|r| r.weight() <= target) {
            break Some(*r);
        }
        let pair = (0..k).find_map(|i| {
            (i + 1..k).find_map(|j| {
                let mut acc = rows[i];
                acc.xor(&rows[j]);
                (acc.weight() <= target).then_some(acc)
            })
        });
        if pair.is_some() {
            break pair;
        }
    };
    let word = found.map(|b| b.store(n));
    if let Some(w) = &word {
        assert!(code.contains(w), "word search produced a non-codeword");
    }
    Ok(WordSearch {
        word,
        seed,
        iterations: iteration,
        elapsed: meter.start.elapsed(),
    })
}
