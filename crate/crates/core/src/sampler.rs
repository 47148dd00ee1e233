//! Exact-uniform sampling of rational Dyck paths and Monte Carlo
//! estimates of the filtered counts.
//!
//! A uniformly shuffled word with `m` ones and `n` zeros is rotated to
//! start just after the unique minimum of its prefix heights
//! `n·(#ones) − m·(#zeros)`. By the cycle lemma each Dyck path is the
//! image of exactly `n + m` words, so the result is uniform.
//!
//! Work is split into fixed-size chunks. Chunk `i` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so results depend only
//! on the seed, the sample count and the chunk size.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{pow, Float, One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::filters::{passes_runs, FilterLevel};
use crate::lattice::{dyck_count, Rank2Cartan, Weight};
use crate::string_data::{is_dyck_runs, DyckPath, Word};
use crate::{Error, Result};

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// How samples are split into independently seeded chunks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPlan {
    pub chunk_size: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }
}

impl SamplingPlan {
    pub fn new(chunk_size: u64) -> Self {
        Self {
            chunk_size: chunk_size.max(1),
        }
    }

    /// `(chunk index, samples in chunk)` for every chunk.
    pub fn chunks(&self, samples: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let count = samples.div_ceil(self.chunk_size);
        (0..count).map(move |i| (i, self.chunk_size.min(samples - i * self.chunk_size)))
    }
}

/// The RNG for one chunk.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Start index of the cycle-lemma rotation of `word` for endpoint
/// `(n, m)`: the position of the unique minimum prefix height.
pub fn rotation_start(word: &[u8], n: u64, m: u64) -> usize {
    let (n, m) = (n as i128, m as i128);
    let mut h = 0i128;
    let mut best = 0i128;
    let mut start = 0usize;
    for (i, &l) in word.iter().enumerate() {
        h += if l == 1 { n } else { -m };
        if h < best {
            best = h;
            start = i + 1;
        }
    }
    debug_assert_eq!(h, 0, "word does not end on the diagonal");
    if start == word.len() {
        0
    } else {
        start
    }
}

/// Rotates `word` (with `m` ones and `n` zeros, `gcd(n, m) = 1`) to the
/// Dyck path in its cyclic class.
pub fn rotate_to_dyck(word: &[u8], n: u64, m: u64) -> Word {
    let s = rotation_start(word, n, m);
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[s..]);
    out.extend_from_slice(&word[..s]);
    out
}

/// Reusable buffers for drawing paths to a fixed endpoint.
#[derive(Debug, Clone)]
pub struct DyckSampler {
    n: u64,
    m: u64,
    word: Word,
    runs: Vec<u64>,
}

impl DyckSampler {
    pub fn new(weight: &Weight) -> Result<Self> {
        let (n, m) = weight.small()?;
        dyck_count(n, m)?;
        let len = usize::try_from(n + m).map_err(|_| weight.too_large())?;
        let mut word = vec![0u8; len];
        word[..m as usize].fill(1);
        Ok(Self {
            n,
            m,
            word,
            runs: Vec::with_capacity(len),
        })
    }

    /// Draws a path and returns its runs.
    pub fn sample_runs<R: Rng + ?Sized>(&mut self, rng: &mut R) -> &[u64] {
        self.word.shuffle(rng);
        let start = rotation_start(&self.word, self.n, self.m);
        self.runs.clear();
        let mut letter = 1u8;
        let mut len = 0u64;
        let (tail, head) = self.word.split_at(start);
        for &l in head.iter().chain(tail) {
            if l == letter {
                len += 1;
            } else {
                self.runs.push(len);
                letter = l;
                len = 1;
            }
        }
        self.runs.push(len);
        debug_assert!(is_dyck_runs(&self.runs), "rotation produced a non-Dyck path");
        &self.runs
    }

    /// Draws a path and returns the rotated word.
    pub fn sample_word<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Word {
        self.word.shuffle(rng);
        rotate_to_dyck(&self.word, self.n, self.m)
    }
}

/// One uniformly random Dyck path to `(c0, c1)`.
pub fn sample_uniform_dyck<R: Rng + ?Sized>(weight: &Weight, rng: &mut R) -> Result<DyckPath> {
    let mut sampler = DyckSampler::new(weight)?;
    let runs = sampler.sample_runs(rng).to_vec();
    Ok(DyckPath::from_runs_unchecked(runs))
}

/// Result of a Monte Carlo estimate of a filtered count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateReport {
    pub weight: Weight,
    pub r: u64,
    pub filter: FilterLevel,
    pub samples: u64,
    pub hits: u64,
    pub dyck_total: BigUint,
    pub seed: u64,
    pub chunk_size: u64,
}

impl EstimateReport {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// `hits / samples · dyck_total`, exactly.
    pub fn estimate(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.dyck_total.clone()) * BigInt::from(self.hits),
            BigInt::from(self.samples),
        )
    }

    /// `sqrt(p(1 − p) / samples) · dyck_total`.
    pub fn std_error(&self) -> f64 {
        let p = self.fraction();
        Float::sqrt(p * (1.0 - p) / self.samples as f64) * self.dyck_total.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn estimate_sci(&self) -> String {
        sci6(&self.estimate())
    }

    pub fn std_error_sci(&self) -> String {
        sci6_f64(self.std_error())
    }

    pub fn fraction_sci(&self) -> String {
        sci6(&BigRational::new(BigInt::from(self.hits), BigInt::from(self.samples)))
    }
}

/// Pass count for one chunk.
pub fn estimate_chunk(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    seed: u64,
    chunk: u64,
    count: u64,
) -> Result<u64> {
    let mut sampler = DyckSampler::new(weight)?;
    let mut rng = chunk_rng(seed, chunk);
    let mut hits = 0;
    for _ in 0..count {
        if passes_runs(sampler.sample_runs(&mut rng), cartan, filter) {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Sequential Monte Carlo estimate; the std driver produces the same
/// report in parallel.
pub fn estimate_bound(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    samples: u64,
    seed: u64,
    plan: SamplingPlan,
) -> Result<EstimateReport> {
    let mut hits = 0;
    for (chunk, count) in plan.chunks(samples) {
        hits += estimate_chunk(weight, cartan, filter, seed, chunk, count)?;
    }
    estimate_report(weight, cartan, filter, samples, seed, plan, hits)
}

/// Assembles a report from merged chunk hits.
pub fn estimate_report(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    samples: u64,
    seed: u64,
    plan: SamplingPlan,
    hits: u64,
) -> Result<EstimateReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let dyck_total = crate::lattice::dyck_count_for(weight)?;
    Ok(EstimateReport {
        weight: weight.clone(),
        r: cartan.r(),
        filter,
        samples,
        hits,
        dyck_total,
        seed,
        chunk_size: plan.chunk_size,
    })
}

/// Visits to the line `y − x = distance` by random paths to `(k + 1, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisitStats {
    pub k: u64,
    pub distance: u64,
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Sum over paths of the visit count.
    pub total: u64,
    /// Sum over paths of the squared visit count.
    pub total_sq: u64,
}

impl VisitStats {
    pub fn mean(&self) -> f64 {
        self.total as f64 / self.samples as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        let n = self.samples as f64;
        if self.samples < 2 {
            return 0.0;
        }
        let mean = self.mean();
        let var = (self.total_sq as f64 - n * mean * mean) / (n - 1.0);
        Float::sqrt(var.max(0.0) / n)
    }
}

/// Number of lattice points `(x, y)` on the path (start included) with
/// `y − x = distance`, where `x` counts zeros and `y` ones.
pub fn count_visits(word: &[u8], distance: u64) -> u64 {
    let target = distance as i64;
    let mut diff = 0i64;
    let mut visits = (diff == target) as u64;
    for &l in word {
        diff += if l == 1 { 1 } else { -1 };
        visits += (diff == target) as u64;
    }
    visits
}

/// `(sum, sum of squares)` of visit counts over one chunk.
pub fn visits_chunk(k: u64, distance: u64, seed: u64, chunk: u64, count: u64) -> Result<(u64, u64)> {
    let mut sampler = DyckSampler::new(&Weight::new(k + 1, k))?;
    let mut rng = chunk_rng(seed, chunk);
    let (mut sum, mut sq) = (0u64, 0u64);
    for _ in 0..count {
        let v = count_visits(&sampler.sample_word(&mut rng), distance);
        sum += v;
        sq += v * v;
    }
    Ok((sum, sq))
}

pub fn visits_statistic(k: u64, distance: u64, samples: u64, seed: u64, plan: SamplingPlan) -> Result<VisitStats> {
    if k == 0 {
        return Err(Error::DegenerateEndpoint);
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let (mut total, mut total_sq) = (0, 0);
    for (chunk, count) in plan.chunks(samples) {
        let (s, q) = visits_chunk(k, distance, seed, chunk, count)?;
        total += s;
        total_sq += q;
    }
    Ok(VisitStats {
        k,
        distance,
        samples,
        seed,
        chunk_size: plan.chunk_size,
        total,
        total_sq,
    })
}

/// Six significant digits in the form `d.ddddde<exp>`, rounding half up.
pub fn sci6(q: &BigRational) -> String {
    if q.is_zero() {
        return String::from("0");
    }
    let neg = q.numer() < &BigInt::zero();
    let q = if neg { -q.clone() } else { q.clone() };
    let ten = BigInt::from(10);
    let digits = |v: &BigInt| v.to_str_radix(10).len() as i64;
    let mut exp = digits(q.numer()) - digits(q.denom());
    // settle exp so that 10^exp ≤ q < 10^(exp+1)
    let scaled_by = |e: i64| -> BigRational {
        if e >= 0 {
            q.clone() / BigRational::from_integer(pow(ten.clone(), e as usize))
        } else {
            q.clone() * BigRational::from_integer(pow(ten.clone(), (-e) as usize))
        }
    };
    while scaled_by(exp) >= BigRational::one() * BigRational::from_integer(ten.clone()) {
        exp += 1;
    }
    while scaled_by(exp) < BigRational::one() {
        exp -= 1;
    }
    let mantissa = scaled_by(exp) * BigRational::from_integer(BigInt::from(100_000));
    let mut units = (mantissa + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    if units >= BigInt::from(1_000_000) {
        units /= 10;
        exp += 1;
    }
    let s = units.to_str_radix(10);
    format!("{}{}.{}e{}", if neg { "-" } else { "" }, &s[..1], &s[1..], exp)
}

pub fn sci6_f64(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    format!("{v:.5e}")
}
