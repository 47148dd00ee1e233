//! Binary words, their run-length string data, and Littelmann's criterion
//! for which run sequences are string data of `B(−∞)`.
//!
//! Runs alternate between the letter `1` (α₁, odd positions `a₁, a₃, …`)
//! and the letter `0` (α₀, even positions `a₂, a₄, …`). A word that starts
//! with `0` has `a₁ = 0`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use crate::lattice::{Rank2Cartan, SignedWeight, Weight};
use crate::num::{self, Exact};
use crate::{Error, Result};

/// A binary word: each entry is `0` or `1`.
pub type Word = Vec<u8>;

pub fn parse_word(s: &str) -> Result<Word> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::InvalidLetter(other)),
        })
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    word.iter().map(|&l| if l == 0 { '0' } else { '1' }).collect()
}

/// Canonical run-length encoding of a word under the `1, 0, 1, 0, …`
/// measuring sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StringData {
    runs: Vec<u64>,
}

impl StringData {
    /// Validates canonical form: every run after the first is positive.
    /// A lone `(0)` is rejected; the empty word is `()`.
    pub fn new(runs: Vec<u64>) -> Result<Self> {
        if let Some(index) = runs.iter().skip(1).position(|&a| a == 0) {
            return Err(Error::NonCanonical { index: index + 1 });
        }
        if runs.len() == 1 && runs[0] == 0 {
            return Err(Error::NonCanonical { index: 0 });
        }
        Ok(Self { runs })
    }

    pub(crate) fn from_runs_unchecked(runs: Vec<u64>) -> Self {
        Self { runs }
    }

    pub fn runs(&self) -> &[u64] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn to_word(&self) -> Word {
        runs_to_word(self)
    }
}

impl fmt::Display for StringData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for StringData {
    type Err = Error;

    /// Comma-separated decimal runs, e.g. `2,1,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let runs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .map_err(|_| Error::InvalidLetter(t.chars().find(|c| !c.is_ascii_digit()).unwrap_or(',')))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(runs)
    }
}

/// A string data that is a rational Dyck path to `(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    data: StringData,
    n: u64,
    m: u64,
}

impl DyckPath {
    pub fn new(data: StringData) -> Option<Self> {
        if !is_dyck(&data) {
            return None;
        }
        let (n, m) = run_totals(data.runs());
        Some(Self { data, n, m })
    }

    pub(crate) fn from_runs_unchecked(runs: Vec<u64>) -> Self {
        let (n, m) = run_totals(&runs);
        Self {
            data: StringData::from_runs_unchecked(runs),
            n,
            m,
        }
    }

    pub fn data(&self) -> &StringData {
        &self.data
    }

    pub fn runs(&self) -> &[u64] {
        self.data.runs()
    }

    /// `(n, m)`: number of zeros and number of ones.
    pub fn endpoint(&self) -> (u64, u64) {
        (self.n, self.m)
    }

    pub fn into_data(self) -> StringData {
        self.data
    }
}

pub fn word_to_runs(word: &[u8]) -> StringData {
    let mut runs = Vec::new();
    let mut letter = 1u8;
    let mut len = 0u64;
    for &l in word {
        if l == letter {
            len += 1;
        } else {
            runs.push(len);
            letter = l;
            len = 1;
        }
    }
    if !word.is_empty() {
        runs.push(len);
    }
    StringData::from_runs_unchecked(runs)
}

pub fn runs_to_word(data: &StringData) -> Word {
    let mut word = Vec::with_capacity(data.runs.iter().sum::<u64>() as usize);
    for (i, &a) in data.runs.iter().enumerate() {
        let letter = if i % 2 == 0 { 1 } else { 0 };
        word.extend(core::iter::repeat_n(letter, a as usize));
    }
    word
}

/// `(zeros, ones)`, i.e. (sum of even runs, sum of odd runs).
pub(crate) fn run_totals(runs: &[u64]) -> (u64, u64) {
    let ones = runs.iter().step_by(2).sum();
    let zeros = runs.iter().skip(1).step_by(2).sum();
    (zeros, ones)
}

pub fn weight_of(data: &StringData) -> Weight {
    let mut c0 = BigUint::default();
    let mut c1 = BigUint::default();
    for (i, &a) in data.runs.iter().enumerate() {
        if i % 2 == 0 {
            c1 += a;
        } else {
            c0 += a;
        }
    }
    Weight::from_big(c0, c1)
}

fn dyck_check<T: Exact>(runs: &[u64]) -> Option<bool> {
    let mut n = T::zero();
    let mut m = T::zero();
    for (i, &a) in runs.iter().enumerate() {
        let a = T::from(a);
        if i % 2 == 0 {
            m = num::add(&m, &a)?;
        } else {
            n = num::add(&n, &a)?;
        }
    }
    let mut x = T::zero();
    let mut y = T::zero();
    for (i, &a) in runs.iter().enumerate() {
        let a = T::from(a);
        if i % 2 == 0 {
            y = num::add(&y, &a)?;
        } else {
            x = num::add(&x, &a)?;
            if num::mul(&x, &m)? > num::mul(&y, &n)? {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// True when the data is a rational Dyck path: even length, `a₁ ≥ 1`,
/// and every run boundary `(x, y)` satisfies `x·m ≤ y·n`.
pub fn is_dyck(data: &StringData) -> bool {
    is_dyck_runs(data.runs())
}

pub(crate) fn is_dyck_runs(runs: &[u64]) -> bool {
    if runs.is_empty() || !runs.len().is_multiple_of(2) || runs.contains(&0) {
        return false;
    }
    num::with_fallback(|| dyck_check::<i128>(runs), || dyck_check::<BigInt>(runs))
}

/// `β₁ = α₀, β₂ = s₀α₁, β₃ = s₀s₁α₀, …` via `β_{j+1} = r·β_j − β_{j−1}`
/// from the seed `β₀ = −α₁`.
pub fn littelmann_roots(cartan: &Rank2Cartan, count: usize) -> Vec<Weight> {
    let r = BigInt::from(cartan.r());
    let mut prev = SignedWeight::new(0, -1);
    let mut cur = SignedWeight::new(1, 0);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(cur.to_weight().expect("littelmann roots are positive"));
        let next = SignedWeight {
            c0: &r * &cur.c0 - &prev.c0,
            c1: &r * &cur.c1 - &prev.c1,
        };
        prev = core::mem::replace(&mut cur, next);
    }
    out
}

fn littelmann_check<T: Exact>(runs: &[u64], r: u64) -> Option<bool> {
    let r = T::from(r);
    let one = T::from(1);
    // coordinates of β_{j-1} and β_j, starting from β₀ = (0, -1), β₁ = (1, 0)
    let mut prev = (T::zero(), num::sub(&T::zero(), &one)?);
    let mut cur = (one, T::zero());
    for j in 0..runs.len().saturating_sub(2) {
        let next = (
            num::sub(&num::mul(&r, &cur.0)?, &prev.0)?,
            num::sub(&num::mul(&r, &cur.1)?, &prev.1)?,
        );
        let lo = T::from(runs[j + 2]);
        let hi = T::from(runs[j + 1]);
        if num::mul(&lo, &cur.0)? > num::mul(&hi, &next.0)? || num::mul(&lo, &cur.1)? > num::mul(&hi, &next.1)? {
            return Some(false);
        }
        prev = core::mem::replace(&mut cur, next);
    }
    Some(true)
}

/// Littelmann's criterion: `a_{j+2}·β_j ≤ a_{j+1}·β_{j+1}` in the
/// componentwise order on the root lattice, for every `j ≤ L − 2`.
pub fn littelmann_valid(data: &StringData, cartan: &Rank2Cartan) -> bool {
    let runs = data.runs();
    num::with_fallback(
        || littelmann_check::<i128>(runs, cartan.r()),
        || littelmann_check::<BigInt>(runs, cartan.r()),
    )
}

pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 24;

/// Counts words with `c1` ones and `c0` zeros whose string data pass
/// [`littelmann_valid`]. Exhaustive, so the height is capped by `limit`.
pub fn count_valid_string_data(weight: &Weight, cartan: &Rank2Cartan, limit: u64) -> Result<BigUint> {
    let (zeros, ones) = weight.small()?;
    let height = zeros.checked_add(ones).ok_or_else(|| weight.too_large())?;
    if height > limit {
        return Err(Error::ExhaustiveLimit { height, limit });
    }
    let mut count = 0u64;
    for_each_word(zeros, ones, |w| {
        if littelmann_valid(&word_to_runs(w), cartan) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Calls `f` on every word with the given numbers of zeros and ones, in
/// lexicographic order.
pub fn for_each_word(zeros: u64, ones: u64, mut f: impl FnMut(&[u8])) {
    fn rec(zeros: u64, ones: u64, word: &mut Word, f: &mut dyn FnMut(&[u8])) {
        if zeros == 0 && ones == 0 {
            f(word);
            return;
        }
        if zeros > 0 {
            word.push(0);
            rec(zeros - 1, ones, word, f);
            word.pop();
        }
        if ones > 0 {
            word.push(1);
            rec(zeros, ones - 1, word, f);
            word.pop();
        }
    }
    let mut word = Vec::with_capacity((zeros + ones) as usize);
    rec(zeros, ones, &mut word, &mut f);
}
