//! Rayon drivers over the partition and chunk splits of the core crate.
//!
//! Every reduction here is a sum, and listings are sorted after merging,
//! so results do not depend on the number of worker threads.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use kmroots_core::counting::{self, tally_enumerator, BoundCounts, DyckEnumerator, PartitionTally};
use kmroots_core::lattice::dyck_count;
use kmroots_core::sampler::{estimate_chunk, estimate_report, visits_chunk};
use kmroots_core::{
    Error, EstimateReport, FilterLevel, Rank2Cartan, Result, SamplingPlan, StringData, VisitStats, Weight,
};
use num_bigint::BigUint;
use rayon::prelude::*;

/// Exact counts for one weight, with timing and an optional listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub weight: Weight,
    pub r: u64,
    pub counts: BoundCounts,
    pub elapsed: Duration,
    pub paths: Option<Vec<StringData>>,
}

/// Paths to collect alongside the counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Listing {
    pub filter: FilterLevel,
    pub limit: usize,
}

/// Collects runs into per-partition vectors while the shared count stays
/// under `limit`.
struct Collector<'a> {
    limit: usize,
    taken: &'a AtomicUsize,
    overflow: &'a AtomicBool,
    out: Vec<StringData>,
}

impl Collector<'_> {
    fn push(&mut self, runs: &[u64]) {
        if self.taken.fetch_add(1, Ordering::Relaxed) < self.limit {
            self.out
                .push(StringData::new(runs.to_vec()).expect("enumerated runs are canonical"));
        } else {
            self.overflow.store(true, Ordering::Relaxed);
        }
    }
}

/// Dyck total, `Thm1` and `Thm2` counts from one parallel traversal, plus
/// the passing paths when `listing` is given.
pub fn bound_report(weight: &Weight, cartan: &Rank2Cartan, listing: Option<Listing>) -> Result<BoundReport> {
    let start = Instant::now();
    let (n, m) = weight.small()?;
    let dyck_total = dyck_count(n, m)?;
    let e = tally_enumerator(weight, cartan)?;
    let taken = AtomicUsize::new(0);
    let overflow = AtomicBool::new(false);
    // a Dyck listing needs its own traversal, the tally prunes at Thm1
    let inline = listing.filter(|l| l.filter != FilterLevel::Dyck);

    let (tally, mut paths) = e
        .partitions()
        .into_par_iter()
        .map(|prefix| {
            let mut col = inline.map(|l| Collector {
                limit: l.limit,
                taken: &taken,
                overflow: &overflow,
                out: Vec::new(),
            });
            let mut thm2 = 0u64;
            let thm1 = e.enumerate_partition(prefix, &mut |runs, ok| {
                thm2 += ok as u64;
                if let Some(c) = col.as_mut() {
                    if ok || inline.map(|l| l.filter) == Some(FilterLevel::Thm1) {
                        c.push(runs);
                    }
                }
            });
            (PartitionTally { thm1, thm2 }, col.map(|c| c.out).unwrap_or_default())
        })
        .reduce(
            || (PartitionTally::default(), Vec::new()),
            |(ta, mut pa), (tb, pb)| {
                pa.extend(pb);
                (ta + tb, pa)
            },
        );

    if let Some(l) = listing.filter(|l| l.filter == FilterLevel::Dyck) {
        paths = list_paths(weight, cartan, l)?;
    } else if overflow.load(Ordering::Relaxed) {
        return Err(Error::ListingLimit(listing.map_or(0, |l| l.limit)));
    }
    if listing.is_some() {
        counting::sort_by_word(&mut paths);
    }

    Ok(BoundReport {
        weight: weight.clone(),
        r: cartan.r(),
        counts: BoundCounts {
            dyck_total,
            count_thm1: BigUint::from(tally.thm1),
            count_thm2: BigUint::from(tally.thm2),
        },
        elapsed: start.elapsed(),
        paths: listing.map(|_| paths),
    })
}

/// Paths passing `listing.filter`, enumerated in parallel and sorted by
/// word.
pub fn list_paths(weight: &Weight, cartan: &Rank2Cartan, listing: Listing) -> Result<Vec<StringData>> {
    let e = DyckEnumerator::new(weight, cartan, listing.filter)?;
    let taken = AtomicUsize::new(0);
    let overflow = AtomicBool::new(false);
    let mut paths: Vec<StringData> = e
        .partitions()
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut col = Collector {
                limit: listing.limit,
                taken: &taken,
                overflow: &overflow,
                out: Vec::new(),
            };
            e.enumerate_partition(prefix, &mut |runs, _| col.push(runs));
            col.out
        })
        .collect();
    if overflow.load(Ordering::Relaxed) {
        return Err(Error::ListingLimit(listing.limit));
    }
    counting::sort_by_word(&mut paths);
    Ok(paths)
}

/// Exact count at one filter level, summed over partitions in parallel.
pub fn count(weight: &Weight, cartan: &Rank2Cartan, filter: FilterLevel) -> Result<BigUint> {
    let e = DyckEnumerator::new(weight, cartan, filter)?;
    let total: u64 = e
        .partitions()
        .into_par_iter()
        .map(|prefix| e.enumerate_partition(prefix, &mut |_, _| {}))
        .sum();
    Ok(BigUint::from(total))
}

/// Monte Carlo estimate with chunks drawn in parallel. Identical to
/// [`kmroots_core::sampler::estimate_bound`] for the same plan.
pub fn estimate(
    weight: &Weight,
    cartan: &Rank2Cartan,
    filter: FilterLevel,
    samples: u64,
    seed: u64,
    plan: SamplingPlan,
) -> Result<EstimateReport> {
    let (n, m) = weight.small()?;
    dyck_count(n, m)?;
    let chunks: Vec<(u64, u64)> = plan.chunks(samples).collect();
    let hits = chunks
        .into_par_iter()
        .map(|(chunk, count)| estimate_chunk(weight, cartan, filter, seed, chunk, count))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    estimate_report(weight, cartan, filter, samples, seed, plan, hits)
}

/// Parallel [`kmroots_core::sampler::visits_statistic`].
pub fn visits(k: u64, distance: u64, samples: u64, seed: u64, plan: SamplingPlan) -> Result<VisitStats> {
    if k == 0 {
        return Err(Error::DegenerateEndpoint);
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let chunks: Vec<(u64, u64)> = plan.chunks(samples).collect();
    let (total, total_sq) = chunks
        .into_par_iter()
        .map(|(chunk, count)| visits_chunk(k, distance, seed, chunk, count))
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
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
