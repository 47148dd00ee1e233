//! Acceptance gate: runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

#![allow(clippy::type_complexity)]

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kmroots::parallel::{self, Listing};
use kmroots_core::filters::cond1_pair;
use kmroots_core::lattice::dyck_count;
use kmroots_core::peterson::{kostant_count, multiplicity};
use kmroots_core::sampler::rotate_to_dyck;
use kmroots_core::string_data::{count_valid_string_data, for_each_word, format_word, littelmann_valid, word_to_runs};
use kmroots_core::{FilterLevel, MultiplicityTable, Rank2Cartan, SamplingPlan, Weight};
use num_bigint::BigUint;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, start: Instant, budget: Duration) {
        let t = start.elapsed();
        self.note(format!("{:.2}s", t.as_secs_f64()));
        self.check(t <= budget, format!("took {t:?}, budget {budget:?}"));
    }
}

fn fib() -> Rank2Cartan {
    Rank2Cartan::fibonacci()
}

fn w(c0: u64, c1: u64) -> Weight {
    Weight::new(c0, c1)
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn coprime(a: u64, b: u64) -> bool {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x == 1
}

/// Sorted words of the Dyck paths to `(n, m)` passing `filter`.
fn path_words(n: u64, m: u64, filter: FilterLevel) -> Vec<String> {
    let listing = Listing { filter, limit: 1 << 20 };
    parallel::list_paths(&w(n, m), &fib(), listing)
        .unwrap()
        .iter()
        .map(|p| format_word(&p.to_word()))
        .collect()
}

fn mult(c0: u64, c1: u64) -> BigUint {
    multiplicity(&w(c0, c1), &fib()).unwrap()
}

fn tally(c0: u64, c1: u64) -> kmroots_core::BoundCounts {
    parallel::bound_report(&w(c0, c1), &fib(), None).unwrap().counts
}

fn crit_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let c = fib();
    let mut words = 0;
    let mut invalid = BTreeSet::new();
    for_each_word(4, 3, |word| {
        words += 1;
        if !littelmann_valid(&word_to_runs(word), &c) {
            invalid.insert(format_word(word));
        }
    });
    o.eq(words, 35, "words");
    let want: BTreeSet<String> = strings(&["1000011", "1010001", "1101000"]).into_iter().collect();
    o.eq(&invalid, &want, "invalid string data");
    let valid = count_valid_string_data(&w(4, 3), &c, 24).unwrap();
    o.eq(&valid, &big(32), "valid string data");
    o.eq(kostant_count(&w(4, 3), &c).unwrap(), valid, "kostant count");
    o.eq(
        path_words(4, 3, FilterLevel::Dyck),
        strings(&["1010100", "1011000", "1100100", "1110000", "1101000"])
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        "Dyck paths",
    );
    let t = tally(4, 3);
    o.eq(&t.count_thm1, &big(4), "bound1");
    o.eq(mult(4, 3), big(4), "multiplicity");
    o.within(start, Duration::from_secs(1));
    o
}

fn crit_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let dyck = path_words(3, 4, FilterLevel::Dyck);
    o.eq(dyck.len(), 5, "Dyck paths");
    o.eq(path_words(3, 4, FilterLevel::Thm1), dyck, "cond1 survivors");
    let t = tally(3, 4);
    o.eq(&t.count_thm1, &big(5), "bound1");
    let m = mult(3, 4);
    o.eq(&m, &big(4), "multiplicity");
    o.eq(t.count_thm1 - m, big(1), "gap");
    o.within(start, Duration::from_secs(1));
    o
}

fn crit_3() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let table = MultiplicityTable::new(&fib(), &w(16, 16)).unwrap();
    let m = |c0, c1| table.multiplicity(&w(c0, c1)).unwrap();
    let rows: [((u64, u64), Option<u64>, u64, u64); 3] = [
        ((15, 11), Some(23750), 23868, 23750),
        ((16, 15), Some(815214), 837218, 815215),
        ((15, 16), None, 1234431, 817505),
    ];
    for ((c0, c1), want_m, b1, b2) in rows {
        let t = tally(c0, c1);
        if let Some(want_m) = want_m {
            o.eq(m(c0, c1), big(want_m), &format!("multiplicity ({c0},{c1})"));
        }
        o.eq(t.count_thm1, big(b1), &format!("bound1 ({c0},{c1})"));
        o.eq(t.count_thm2, big(b2), &format!("bound2 ({c0},{c1})"));
    }
    o.within(start, Duration::from_secs(3600));
    o
}

fn crit_4() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let table = MultiplicityTable::new(&fib(), &w(11, 10)).unwrap();
    for n in 1..=10u64 {
        let root = w(n + 1, n);
        let m = table.multiplicity(&root).unwrap();
        let t = parallel::bound_report(&root, &fib(), None).unwrap().counts;
        if n <= 6 {
            o.eq(&t.count_thm1, &m, &format!("bound1 ({},{n})", n + 1));
        }
        if n == 7 {
            o.check(
                t.count_thm1 > m,
                format!("bound1 (8,7) = {} not above {m}", t.count_thm1),
            );
            o.note(format!("bound1(8,7)={} m={m}", t.count_thm1));
        }
        o.eq(&t.count_thm2, &m, &format!("bound2 ({},{n})", n + 1));
    }
    o.within(start, Duration::from_secs(600));
    o
}

fn crit_5() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let m = mult(51, 50);
    o.note(format!("m={m}"));
    let digits = m.to_string();
    o.eq(digits.len(), 24, "digit count");
    // |m − 2.03935e23| / 2.03935e23 < 5e-6, in integers
    let reference = big(203935) * BigUint::from(10u64).pow(18);
    let diff = if m > reference {
        &m - &reference
    } else {
        &reference - &m
    };
    o.check(diff * 200_000u64 < reference, "relative error above 5e-6");
    o.within(start, Duration::from_secs(300));
    o
}

fn crit_6() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let samples = 10_000_000u64;
    let cases = [
        ((51, 50), FilterLevel::Thm1, 1.12637e-4),
        ((51, 50), FilterLevel::Thm2, 1.03219e-4),
        ((50, 51), FilterLevel::Thm1, 1.71935e-4),
        ((50, 51), FilterLevel::Thm2, 1.03504e-4),
    ];
    for (i, ((c0, c1), filter, p)) in cases.into_iter().enumerate() {
        let rep = parallel::estimate(
            &w(c0, c1),
            &fib(),
            filter,
            samples,
            1000 + i as u64,
            SamplingPlan::default(),
        )
        .unwrap();
        let sigma = (p / samples as f64).sqrt();
        let z = (rep.fraction() - p) / sigma;
        o.note(format!("({c0},{c1}) {filter} {} z={z:+.2}", rep.fraction_sci()));
        o.check(
            z.abs() <= 5.0,
            format!(
                "({c0},{c1}) {filter}: fraction {} is {z:.2} sigma from {p}",
                rep.fraction()
            ),
        );
    }
    o.within(start, Duration::from_secs(1800));
    o
}

fn above_diagonal(word: &[u8], n: u64, m: u64) -> bool {
    let (mut x, mut y) = (0u64, 0u64);
    word.iter().all(|&l| {
        if l == 1 {
            y += 1;
        } else {
            x += 1;
        }
        x * m <= y * n
    })
}

fn crit_7() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..14u64 {
        for m in 1..(15 - n) {
            if !coprime(n, m) {
                continue;
            }
            let formula = dyck_count(n, m).unwrap();
            let enumerated = parallel::count(&w(n, m), &fib(), FilterLevel::Dyck).unwrap();
            let mut brute = 0u64;
            for_each_word(n, m, |word| brute += above_diagonal(word, n, m) as u64);
            o.eq(&enumerated, &formula, &format!("enumeration ({n},{m})"));
            o.eq(big(brute), formula, &format!("brute force ({n},{m})"));
        }
    }
    o
}

fn crit_8() -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    for r in [3, 4] {
        let c = Rank2Cartan::new(r).unwrap();
        for c0 in 0..=12u64 {
            for c1 in 0..=(12 - c0) {
                let g = w(c0, c1);
                let k = kostant_count(&g, &c).unwrap();
                let v = count_valid_string_data(&g, &c, 24).unwrap();
                o.eq(k, v, &format!("({c0},{c1}) r={r}"));
                checked += 1;
            }
        }
    }
    o.note(format!("{checked} weights"));
    o
}

fn crit_9() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..11u64 {
        for m in 1..(12 - n) {
            if !coprime(n, m) {
                continue;
            }
            let mut fibres: BTreeMap<String, u64> = BTreeMap::new();
            for_each_word(n, m, |word| {
                *fibres.entry(format_word(&rotate_to_dyck(word, n, m))).or_default() += 1
            });
            let images: Vec<String> = fibres.keys().cloned().collect();
            o.eq(images, path_words(n, m, FilterLevel::Dyck), &format!("image ({n},{m})"));
            o.check(fibres.values().all(|&f| f == n + m), format!("fibre sizes ({n},{m})"));
        }
    }
    o
}

fn crit_10() -> Outcome {
    let mut o = Outcome::new();
    for r in [3u64, 4, 5] {
        let c = Rank2Cartan::new(r).unwrap();
        let rf = r as f64;
        let threshold = (rf + (rf * rf - 4.0).sqrt()) / 2.0;
        let mut mismatches = 0;
        for a in 1..=2000u64 {
            for b in 1..=2000u64 {
                if cond1_pair(a, b, &c) != ((b as f64) / (a as f64) <= threshold) {
                    mismatches += 1;
                }
            }
        }
        o.eq(mismatches, 0, &format!("mismatches r={r}"));
    }
    let golden_sq = ((1.0 + 5f64.sqrt()) / 2.0).powi(2);
    o.check(
        (golden_sq - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12,
        "r=3 threshold is the golden ratio squared",
    );
    o.check(cond1_pair(5, 13, &fib()), "(5,13) passes");
    o.check(!cond1_pair(5, 14, &fib()), "(5,14) fails");
    o
}

fn crit_11() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=4u64 {
        let s = parallel::visits(200, d, 100_000, 77 + d, SamplingPlan::default()).unwrap();
        let limit = (4 * d + 4) as f64;
        let rel = (s.mean() - limit) / limit;
        o.note(format!("d={d} mean={:.3}", s.mean()));
        o.check(
            rel.abs() <= 0.15,
            format!("distance {d}: mean {:.3} is {:.1}% from {limit}", s.mean(), rel * 100.0),
        );
    }
    o
}

fn run_estimate(threads: &str, chunk: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_kmroots"))
        .args([
            "estimate",
            "--r",
            "3",
            "--root",
            "51,50",
            "--theorem",
            "2",
            "--samples",
            "300000",
            "--seed",
            "0xdecade",
            "--chunk",
            chunk,
            "--threads",
            threads,
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn crit_12() -> Outcome {
    let mut o = Outcome::new();
    for chunk in ["65536", "4096"] {
        let reference = run_estimate("1", chunk);
        for threads in ["1", "2", "4", "7"] {
            o.check(
                run_estimate(threads, chunk) == reference,
                format!("threads={threads} chunk={chunk} differs"),
            );
        }
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("small example (4,3): words, string data, Dyck paths, bound1", crit_1),
        ("flipped example (3,4): all paths pass cond1, gap 1", crit_2),
        ("exact table (15,11), (16,15), (15,16)", crit_3),
        ("staircase exactness", crit_4),
        ("multiplicity of (51,50)", crit_5),
        ("Monte Carlo fractions at (51,50) and (50,51)", crit_6),
        ("Dyck count formula vs enumeration", crit_7),
        ("Kostant count vs valid string data", crit_8),
        ("cycle-lemma bijection", crit_9),
        ("cond1 integer vs real threshold", crit_10),
        ("diagonal visits near 4r+4", crit_11),
        ("estimate JSON independent of threads", crit_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let o = run();
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:>2} {status}  {name}", i + 1);
        if !o.notes.is_empty() {
            line.push_str(&format!("  [{}]", o.notes.join("; ")));
        }
        println!("{line}");
        for f in &o.failures {
            println!("    - {f}");
        }
        failed += !o.failures.is_empty() as usize;
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
