//! Depth-first enumeration of rational Dyck paths under the stability
//! filters.
//!
//! Paths are built run by run: an up run (letter `1`) followed by a right
//! run (letter `0`). Every condition is prefix-closed and monotone in the
//! run being chosen, so the first failing length ends the loop over that
//! run:
//!
//! - the diagonal test `x·m ≤ y·n` only gets harder as a right run grows;
//! - `cond1` on `(a_k, a_{k+1})` fails for all `a_{k+1}` past the threshold;
//! - every `cond2` denominator involving a new up run `a_{2y+1}` decreases
//!   as that run grows.
//!
//! The top two runs `(a₁, a₂)` split the search into independent
//! partitions, which the std driver runs in parallel.

use alloc::vec::Vec;
use core::ops::Add;

use num_bigint::BigUint;

use crate::filters::{passes_runs, FilterLevel};
use crate::lattice::{dyck_count, Rank2Cartan, Weight};
use crate::string_data::StringData;
use crate::{Error, Result};

/// Exact counts for one weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundCounts {
    pub dyck_total: BigUint,
    pub count_thm1: BigUint,
    pub count_thm2: BigUint,
}

/// Leaf counts for one partition of a tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PartitionTally {
    pub thm1: u64,
    pub thm2: u64,
}

impl Add for PartitionTally {
    type Output = PartitionTally;

    fn add(self, rhs: Self) -> Self {
        PartitionTally {
            thm1: self.thm1 + rhs.thm1,
            thm2: self.thm2 + rhs.thm2,
        }
    }
}

/// Enumerates Dyck paths to `(n, m)` pruned at a filter level.
///
/// With `track_cond2` set the enumerator prunes only at its level but
/// reports to the visitor whether each leaf also satisfies `cond2`; this
/// lets one traversal produce both bounds.
#[derive(Debug, Clone)]
pub struct DyckEnumerator {
    n: u64,
    m: u64,
    r: i128,
    prune: FilterLevel,
    track_cond2: bool,
}

struct State {
    runs: Vec<u64>,
    odd: Vec<i128>,
    even: Vec<i128>,
}

impl State {
    fn new(n: u64, m: u64) -> Self {
        let cap = 2 * n.min(m) as usize + 2;
        let mut odd = Vec::with_capacity(cap / 2 + 1);
        let mut even = Vec::with_capacity(cap / 2 + 1);
        odd.push(0);
        even.push(0);
        Self {
            runs: Vec::with_capacity(cap),
            odd,
            even,
        }
    }

    fn ones(&self) -> i128 {
        *self.odd.last().unwrap()
    }

    fn zeros(&self) -> i128 {
        *self.even.last().unwrap()
    }

    fn push_up(&mut self, a: u64) {
        self.runs.push(a);
        let s = self.ones() + a as i128;
        self.odd.push(s);
    }

    fn push_right(&mut self, b: u64) {
        self.runs.push(b);
        let s = self.zeros() + b as i128;
        self.even.push(s);
    }

    fn pop_up(&mut self) {
        self.runs.pop();
        self.odd.pop();
    }

    fn pop_right(&mut self) {
        self.runs.pop();
        self.even.pop();
    }
}

impl DyckEnumerator {
    /// Both coordinates of `weight` must be positive. Coprimality is not
    /// required.
    pub fn new(weight: &Weight, cartan: &Rank2Cartan, prune: FilterLevel) -> Result<Self> {
        let (n, m) = weight.small()?;
        if n == 0 || m == 0 {
            return Err(Error::DegenerateEndpoint);
        }
        // keeps every product below in i128
        if n > 1 << 40 || m > 1 << 40 || cartan.r() > 1 << 40 {
            return Err(weight.too_large());
        }
        Ok(Self {
            n,
            m,
            r: cartan.r() as i128,
            prune,
            track_cond2: false,
        })
    }

    pub fn tracking_cond2(mut self) -> Self {
        self.track_cond2 = true;
        self
    }

    pub fn endpoint(&self) -> (u64, u64) {
        (self.n, self.m)
    }

    fn checks_cond1(&self) -> bool {
        self.prune >= FilterLevel::Thm1
    }

    fn pair_ok(&self, a: u64, b: u64) -> bool {
        if b <= a {
            return true;
        }
        let (a, b) = (a as i128, b as i128);
        a * a + b * b <= self.r * a * b
    }

    fn diagonal_ok(&self, zeros: i128, ones: i128) -> bool {
        zeros * self.m as i128 <= ones * self.n as i128
    }

    /// cond2 for every `(x, y)` whose last index is the up run just pushed.
    fn cond2_last_ok(&self, st: &State) -> bool {
        let y = st.even.len() - 1;
        let (n, m) = (self.n as i128, self.m as i128);
        let num = st.even[y];
        for x in 1..=y {
            let den = st.odd[x - 1] + self.r * (st.even[y] - st.even[x - 1]) - (st.odd[y + 1] - st.odd[x]);
            if den <= 0 || num * m > den * n {
                return false;
            }
        }
        true
    }

    /// Valid `(a₁, a₂)` prefixes, in lexicographic order.
    pub fn partitions(&self) -> Vec<[u64; 2]> {
        let mut out = Vec::new();
        for a1 in 1..=self.m {
            for a2 in 1..=self.n {
                if !self.diagonal_ok(a2 as i128, a1 as i128) {
                    break;
                }
                if self.checks_cond1() && !self.pair_ok(a1, a2) {
                    break;
                }
                let complete = a1 == self.m && a2 == self.n;
                let open = a1 < self.m && a2 < self.n;
                if complete || open {
                    out.push([a1, a2]);
                }
            }
        }
        out
    }

    /// Visits every path starting with `prefix`. The visitor also receives
    /// whether the path passes `cond2` (always `true` unless tracking or
    /// pruning at `Thm2`). Returns the number of visits.
    pub fn enumerate_partition(&self, prefix: [u64; 2], visit: &mut dyn FnMut(&[u64], bool)) -> u64 {
        let [a1, a2] = prefix;
        if a1 == 0 || a2 == 0 || a1 > self.m || a2 > self.n {
            return 0;
        }
        if !self.diagonal_ok(a2 as i128, a1 as i128) || (self.checks_cond1() && !self.pair_ok(a1, a2)) {
            return 0;
        }
        let mut st = State::new(self.n, self.m);
        st.push_up(a1);
        st.push_right(a2);
        if a1 == self.m && a2 == self.n {
            visit(&st.runs, true);
            return 1;
        }
        if a1 == self.m || a2 == self.n {
            return 0;
        }
        self.up(&mut st, true, visit)
    }

    pub fn enumerate(&self, visit: &mut dyn FnMut(&[u64], bool)) -> u64 {
        self.partitions()
            .into_iter()
            .map(|p| self.enumerate_partition(p, visit))
            .sum()
    }

    fn up(&self, st: &mut State, cond2_ok: bool, visit: &mut dyn FnMut(&[u64], bool)) -> u64 {
        let remaining = self.m - st.ones() as u64;
        let prev = *st.runs.last().unwrap();
        let want_cond2 = self.prune == FilterLevel::Thm2 || self.track_cond2;
        let mut count = 0;
        for a in 1..=remaining {
            if self.checks_cond1() && !self.pair_ok(prev, a) {
                break;
            }
            st.push_up(a);
            let ok = !want_cond2 || self.cond2_last_ok(st);
            if !ok && self.prune == FilterLevel::Thm2 {
                st.pop_up();
                break;
            }
            count += self.right(st, cond2_ok && ok, visit);
            st.pop_up();
        }
        count
    }

    fn right(&self, st: &mut State, cond2_ok: bool, visit: &mut dyn FnMut(&[u64], bool)) -> u64 {
        let zeros = st.zeros();
        let ones = st.ones();
        let prev = *st.runs.last().unwrap();
        let remaining = self.n - zeros as u64;
        let finishing = ones as u64 == self.m;
        let first = if finishing { remaining } else { 1 };
        let mut count = 0;
        for b in first..=remaining {
            if !self.diagonal_ok(zeros + b as i128, ones) {
                break;
            }
            if self.checks_cond1() && !self.pair_ok(prev, b) {
                break;
            }
            st.push_right(b);
            if finishing {
                visit(&st.runs, cond2_ok);
                count += 1;
            } else if b < remaining {
                count += self.up(st, cond2_ok, visit);
            }
            st.pop_right();
        }
        count
    }
}

/// Visits every Dyck path to `(c0, c1)` passing `filter`, each exactly
/// once, with pruning. Returns the number of visits.
pub fn enumerate_dyck(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    mut visitor: impl FnMut(&[u64]),
) -> Result<BigUint> {
    let e = DyckEnumerator::new(weight, cartan, filter)?;
    Ok(BigUint::from(e.enumerate(&mut |runs, _| visitor(runs))))
}

/// Same visits as [`enumerate_dyck`], but prunes only on the diagonal and
/// applies the filter at each leaf.
pub fn enumerate_dyck_unpruned(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    mut visitor: impl FnMut(&[u64]),
) -> Result<BigUint> {
    let e = DyckEnumerator::new(weight, cartan, FilterLevel::Dyck)?;
    let mut count = 0u64;
    e.enumerate(&mut |runs, _| {
        if passes_runs(runs, cartan, filter) {
            count += 1;
            visitor(runs);
        }
    });
    Ok(BigUint::from(count))
}

fn require_coprime(weight: &Weight) -> Result<(u64, u64)> {
    let (n, m) = weight.small()?;
    dyck_count(n, m)?;
    Ok((n, m))
}

/// Number of Dyck paths to `weight` satisfying `cond1`.
pub fn bound1(weight: &Weight, cartan: &Rank2Cartan) -> Result<BigUint> {
    require_coprime(weight)?;
    enumerate_dyck(weight, cartan, FilterLevel::Thm1, |_| {})
}

/// Number of Dyck paths to `weight` satisfying `cond1` and `cond2`.
pub fn bound2(weight: &Weight, cartan: &Rank2Cartan) -> Result<BigUint> {
    require_coprime(weight)?;
    enumerate_dyck(weight, cartan, FilterLevel::Thm2, |_| {})
}

/// The enumerator used by [`bound_tally`]: pruned at `Thm1`, tracking
/// `cond2`.
pub fn tally_enumerator(weight: &Weight, cartan: &Rank2Cartan) -> Result<DyckEnumerator> {
    require_coprime(weight)?;
    Ok(DyckEnumerator::new(weight, cartan, FilterLevel::Thm1)?.tracking_cond2())
}

pub fn tally_partition(e: &DyckEnumerator, prefix: [u64; 2]) -> PartitionTally {
    let mut thm2 = 0u64;
    let thm1 = e.enumerate_partition(prefix, &mut |_, ok| thm2 += ok as u64);
    PartitionTally { thm1, thm2 }
}

/// All three counts in one traversal: the Dyck total from the closed
/// form, the two filtered counts from the enumeration.
pub fn bound_tally(weight: &Weight, cartan: &Rank2Cartan) -> Result<BoundCounts> {
    let (n, m) = require_coprime(weight)?;
    let e = tally_enumerator(weight, cartan)?;
    let total = e
        .partitions()
        .into_iter()
        .map(|p| tally_partition(&e, p))
        .fold(PartitionTally::default(), Add::add);
    Ok(BoundCounts {
        dyck_total: dyck_count(n, m)?,
        count_thm1: BigUint::from(total.thm1),
        count_thm2: BigUint::from(total.thm2),
    })
}

pub const DEFAULT_LIST_LIMIT: usize = 1_000_000;

/// Collects the paths passing `filter`, sorted by their words.
pub fn list_paths(weight: &Weight, cartan: &Rank2Cartan, filter: FilterLevel, limit: usize) -> Result<Vec<StringData>> {
    let mut out = Vec::new();
    let mut overflow = false;
    enumerate_dyck(weight, cartan, filter, |runs| {
        if out.len() < limit {
            out.push(StringData::from_runs_unchecked(runs.to_vec()));
        } else {
            overflow = true;
        }
    })?;
    if overflow {
        return Err(Error::ListingLimit(limit));
    }
    sort_by_word(&mut out);
    Ok(out)
}

/// Sorts string data by the lexicographic order of their words.
pub fn sort_by_word(paths: &mut [StringData]) {
    paths.sort_by_cached_key(|p| p.to_word());
}
