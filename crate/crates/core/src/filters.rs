//! Stability conditions on run sequences, as exact integer predicates.
//!
//! [`cond1`] bounds the ratio of consecutive runs by
//! `(r + √(r² − 4)) / 2`; [`cond2`] rules out the submodules built from a
//! stretch `a_{2x} … a_{2y+1}` of the path.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::lattice::Rank2Cartan;
use crate::num::{self, Exact};
use crate::string_data::{is_dyck_runs, run_totals, StringData};
use crate::{Error, Result};

/// How many conditions a Dyck path must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterLevel {
    /// Rational Dyck path only.
    Dyck,
    /// Dyck path satisfying the consecutive-ratio condition.
    Thm1,
    /// `Thm1` plus the two-index condition.
    Thm2,
}

impl FilterLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            FilterLevel::Dyck => "dyck",
            FilterLevel::Thm1 => "thm1",
            FilterLevel::Thm2 => "thm2",
        }
    }
}

impl fmt::Display for FilterLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FilterLevel {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "dyck" | "0" => Ok(FilterLevel::Dyck),
            "thm1" | "1" => Ok(FilterLevel::Thm1),
            "thm2" | "2" => Ok(FilterLevel::Thm2),
            _ => Err(()),
        }
    }
}

fn pair_check<T: Exact>(a: u64, b: u64, r: u64) -> Option<bool> {
    let (a, b, r) = (T::from(a), T::from(b), T::from(r));
    let lhs = num::add(&num::mul(&a, &a)?, &num::mul(&b, &b)?)?;
    let rhs = num::mul(&num::mul(&r, &a)?, &b)?;
    Some(lhs <= rhs)
}

/// `b ≤ a` or `a² + b² − r·a·b ≤ 0`: the integer form of
/// `b / a ≤ (r + √(r² − 4)) / 2`.
pub fn cond1_pair(a: u64, b: u64, cartan: &Rank2Cartan) -> bool {
    if b <= a {
        return true;
    }
    let r = cartan.r();
    num::with_fallback(|| pair_check::<i128>(a, b, r), || pair_check::<BigInt>(a, b, r))
}

/// [`cond1_pair`] on every consecutive pair of runs.
pub fn cond1(data: &StringData, cartan: &Rank2Cartan) -> bool {
    data.runs().windows(2).all(|w| cond1_pair(w[0], w[1], cartan))
}

/// Prefix sums over odd- and even-indexed runs.
///
/// `odd[j] = a₁ + a₃ + … + a_{2j−1}`, `even[j] = a₂ + a₄ + … + a_{2j}`.
struct Prefix<T> {
    odd: Vec<T>,
    even: Vec<T>,
}

impl<T: Exact> Prefix<T> {
    fn new(runs: &[u64]) -> Option<Self> {
        let mut odd = Vec::with_capacity(runs.len() / 2 + 2);
        let mut even = Vec::with_capacity(runs.len() / 2 + 2);
        odd.push(T::zero());
        even.push(T::zero());
        for (i, &a) in runs.iter().enumerate() {
            let a = T::from(a);
            if i % 2 == 0 {
                let s = num::add(odd.last().unwrap(), &a)?;
                odd.push(s);
            } else {
                let s = num::add(even.last().unwrap(), &a)?;
                even.push(s);
            }
        }
        Some(Self { odd, even })
    }

    /// `(num, den)` for the pair `1 ≤ x ≤ y`.
    fn ratio(&self, x: usize, y: usize, r: &T) -> Option<(T, T)> {
        let num = self.even[y].clone();
        let spread = num::sub(&self.even[y], &self.even[x - 1])?;
        let lost = num::sub(&self.odd[y + 1], &self.odd[x])?;
        let den = num::sub(&num::add(&self.odd[x - 1], &num::mul(r, &spread)?)?, &lost)?;
        Some((num, den))
    }
}

/// Violation test for one `(x, y)` given totals `(n, m)`. A nonpositive
/// denominator counts as a violation.
fn pair_violates<T: Exact>(num: &T, den: &T, n: &T, m: &T) -> Option<bool> {
    if *den <= T::zero() {
        return Some(true);
    }
    Some(num::mul(num, m)? > num::mul(den, n)?)
}

fn cond2_check<T: Exact>(runs: &[u64], r: u64) -> Option<bool> {
    let k = runs.len() / 2;
    let prefix = Prefix::<T>::new(runs)?;
    let n = prefix.even[k].clone();
    let m = prefix.odd[k].clone();
    let r = T::from(r);
    for y in 1..k {
        for x in 1..=y {
            let (num, den) = prefix.ratio(x, y, &r)?;
            if pair_violates(&num, &den, &n, &m)? {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// The two-index condition: for every `1 ≤ x ≤ y < k`,
/// `num·m ≤ den·n` with
///
/// ```text
/// num = a₂ + a₄ + … + a_{2y}
/// den = (a₁ + a₃ + … + a_{2x−3}) + r·(a_{2x} + … + a_{2y}) − (a_{2x+1} + … + a_{2y+1})
/// ```
///
/// and `den > 0`. Only defined for data of even length `2k`.
pub fn cond2(data: &StringData, cartan: &Rank2Cartan) -> Result<bool> {
    let runs = data.runs();
    if !runs.len().is_multiple_of(2) {
        return Err(Error::OddLength(runs.len()));
    }
    let r = cartan.r();
    Ok(num::with_fallback(
        || cond2_check::<i128>(runs, r),
        || cond2_check::<BigInt>(runs, r),
    ))
}

/// Evaluates the filter chain `Dyck ⊇ Thm1 ⊇ Thm2`.
pub fn passes_filters(data: &StringData, cartan: &Rank2Cartan, level: FilterLevel) -> bool {
    passes_runs(data.runs(), cartan, level)
}

pub(crate) fn passes_runs(runs: &[u64], cartan: &Rank2Cartan, level: FilterLevel) -> bool {
    if !is_dyck_runs(runs) {
        return false;
    }
    if level == FilterLevel::Dyck {
        return true;
    }
    if !runs.windows(2).all(|w| cond1_pair(w[0], w[1], cartan)) {
        return false;
    }
    if level == FilterLevel::Thm1 {
        return true;
    }
    let r = cartan.r();
    num::with_fallback(|| cond2_check::<i128>(runs, r), || cond2_check::<BigInt>(runs, r))
}

/// Endpoint `(n, m)` of a run sequence, re-exported for callers that
/// hold raw runs.
pub fn endpoint(runs: &[u64]) -> (u64, u64) {
    run_totals(runs)
}
