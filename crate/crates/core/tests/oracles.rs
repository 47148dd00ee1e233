//! Cross-checks between independent routes to the same numbers.

use std::collections::HashMap;

use kmroots_core::lattice::{classify, dyck_count, Node, SignedWeight};
use kmroots_core::peterson::{kostant_count, multiplicity, peterson_c};
use kmroots_core::string_data::{count_valid_string_data, littelmann_roots, littelmann_valid};
use kmroots_core::{counting, FilterLevel, MultiplicityTable, Rank2Cartan, RootClass, StringData, Weight};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn cartan(r: u64) -> Rank2Cartan {
    Rank2Cartan::new(r).unwrap()
}

/// Plain-rational Peterson recursion with no scaling and no Möbius
/// function: `m` is peeled off `c` through `c_β = Σ_{d | β} m_{β/d} / d`.
struct NaivePeterson {
    r: i64,
    c: HashMap<(u64, u64), BigRational>,
    m: HashMap<(u64, u64), BigRational>,
}

impl NaivePeterson {
    fn new(r: u64) -> Self {
        Self {
            r: r as i64,
            c: HashMap::new(),
            m: HashMap::new(),
        }
    }

    fn form(&self, u: (u64, u64), v: (u64, u64)) -> i64 {
        let (a, b, c, d) = (u.0 as i64, u.1 as i64, v.0 as i64, v.1 as i64);
        2 * a * c + 2 * b * d - self.r * (a * d + b * c)
    }

    fn divisor_tail(&mut self, w: (u64, u64)) -> BigRational {
        let g = w.0.gcd(&w.1);
        let mut s = BigRational::zero();
        for d in 2..=g {
            if g.is_multiple_of(d) {
                s += self.mult(((w.0 / d), (w.1 / d))) / BigRational::from_integer(BigInt::from(d));
            }
        }
        s
    }

    fn c(&mut self, w: (u64, u64)) -> BigRational {
        if let Some(v) = self.c.get(&w) {
            return v.clone();
        }
        let value = if w == (1, 0) || w == (0, 1) {
            BigRational::one()
        } else {
            let mut num = BigRational::zero();
            for a in 0..=w.0 {
                for b in 0..=w.1 {
                    let other = (w.0 - a, w.1 - b);
                    if (a, b) == (0, 0) || other == (0, 0) {
                        continue;
                    }
                    let f = self.form((a, b), other);
                    if f != 0 {
                        num += self.c((a, b)) * self.c(other) * BigRational::from_integer(BigInt::from(f));
                    }
                }
            }
            let d = self.form(w, w) - 2 * (w.0 + w.1) as i64;
            if d == 0 {
                assert!(num.is_zero(), "singular Peterson step at {w:?}");
                self.divisor_tail(w)
            } else {
                num / BigRational::from_integer(BigInt::from(d))
            }
        };
        self.c.insert(w, value.clone());
        value
    }

    fn mult(&mut self, w: (u64, u64)) -> BigRational {
        if let Some(v) = self.m.get(&w) {
            return v.clone();
        }
        let value = self.c(w) - self.divisor_tail(w);
        self.m.insert(w, value.clone());
        value
    }
}

#[test]
fn multiplicities_match_naive_rational_recursion() {
    for r in [3, 4] {
        let mut naive = NaivePeterson::new(r);
        let table = MultiplicityTable::new(&cartan(r), &Weight::new(20, 20)).unwrap();
        for a in 0..=20u64 {
            for b in 0..=20u64 {
                if a + b == 0 {
                    continue;
                }
                let m = naive.mult((a, b));
                assert!(m.is_integer(), "({a},{b}) r={r}: {m}");
                let w = Weight::new(a, b);
                assert_eq!(
                    BigInt::from(table.multiplicity(&w).unwrap()),
                    m.to_integer(),
                    "({a},{b}) r={r}"
                );
                assert_eq!(table.c(&w).unwrap(), naive.c((a, b)), "c({a},{b}) r={r}");
            }
        }
    }
}

#[test]
fn multiplicity_agrees_with_classification() {
    for r in [3, 4, 5] {
        let k = cartan(r);
        let table = MultiplicityTable::new(&k, &Weight::new(20, 20)).unwrap();
        for a in 0..=20u64 {
            for b in 0..=(20 - a) {
                if a + b == 0 {
                    continue;
                }
                let w = Weight::new(a, b);
                let m = table.multiplicity(&w).unwrap();
                assert_eq!(m, table.multiplicity(&w.flipped()).unwrap(), "symmetry at {w} r={r}");
                match classify(&w, &k).unwrap() {
                    RootClass::RealRoot => assert_eq!(m, BigUint::one(), "{w} r={r}"),
                    RootClass::NotARoot => assert!(m.is_zero(), "{w} r={r}"),
                    RootClass::ImaginaryRoot => assert!(!m.is_zero(), "{w} r={r}"),
                }
                if classify(&w, &k).unwrap() == RootClass::RealRoot {
                    for d in 2..=20 / (a + b) {
                        assert!(table.multiplicity(&Weight::new(d * a, d * b)).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn kostant_counts_equal_valid_string_data() {
    for r in [3, 4] {
        let k = cartan(r);
        for a in 0..=10u64 {
            for b in 0..=(10 - a) {
                let w = Weight::new(a, b);
                let kostant = kostant_count(&w, &k).unwrap();
                assert_eq!(kostant, count_valid_string_data(&w, &k, 24).unwrap(), "{w} r={r}");
                assert!(kostant <= kmroots_core::lattice::binomial(a + b, a));
            }
        }
    }
}

#[test]
fn peterson_table_has_no_singular_step() {
    MultiplicityTable::new(&cartan(3), &Weight::new(51, 51)).unwrap();
    for r in [4, 5] {
        MultiplicityTable::new(&cartan(r), &Weight::new(40, 40)).unwrap();
    }
}

#[test]
fn growing_table_keeps_values() {
    let k = cartan(3);
    let mut table = MultiplicityTable::new(&k, &Weight::new(2, 2)).unwrap();
    let small = peterson_c(&Weight::new(2, 1), &k, &mut table).unwrap();
    let _ = peterson_c(&Weight::new(9, 7), &k, &mut table).unwrap();
    assert!(table.covers(&Weight::new(9, 7)));
    assert_eq!(peterson_c(&Weight::new(2, 1), &k, &mut table).unwrap(), small);
}

fn fib(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

#[test]
fn littelmann_roots_are_even_fibonacci_pairs() {
    let roots = littelmann_roots(&cartan(3), 8);
    for (i, beta) in roots.iter().enumerate() {
        let j = i + 1;
        assert_eq!(*beta, Weight::new(fib(2 * j), fib(2 * j - 2)), "beta_{j}");
    }
}

#[test]
fn littelmann_roots_match_reflection_words() {
    for r in [3, 4, 5] {
        let k = cartan(r);
        let roots = littelmann_roots(&k, 4);
        let a0 = SignedWeight::new(1, 0);
        let a1 = SignedWeight::new(0, 1);
        let s0 = |w: &SignedWeight| w.reflect(Node::Alpha0, &k);
        let s1 = |w: &SignedWeight| w.reflect(Node::Alpha1, &k);
        let expected = [a0.clone(), s0(&a1), s0(&s1(&a0)), s0(&s1(&s0(&a1)))];
        for (beta, e) in roots.iter().zip(expected) {
            assert_eq!(Some(beta.clone()), e.to_weight(), "r={r}");
        }
    }
}

#[test]
fn cond1_dyck_paths_are_valid_string_data() {
    let k = cartan(3);
    for n in 1..14u64 {
        for m in 1..(15 - n) {
            counting::enumerate_dyck(&Weight::new(n, m), &k, FilterLevel::Thm1, |runs| {
                let data = StringData::new(runs.to_vec()).unwrap();
                assert!(littelmann_valid(&data, &k), "{data} at ({n},{m})");
            })
            .unwrap();
        }
    }
}

#[test]
fn bounds_dominate_multiplicities() {
    let k = cartan(3);
    let table = MultiplicityTable::new(&k, &Weight::new(25, 25)).unwrap();
    for n in 1..26u64 {
        for m in 1..(27 - n) {
            let w = Weight::new(n, m);
            if n.gcd(&m) != 1 || classify(&w, &k).unwrap() != RootClass::ImaginaryRoot {
                continue;
            }
            let counts = counting::bound_tally(&w, &k).unwrap();
            let mult = table.multiplicity(&w).unwrap();
            assert!(counts.count_thm2 <= counts.count_thm1);
            assert!(counts.count_thm1 <= counts.dyck_total);
            assert!(counts.count_thm2 >= mult, "{w}: {} < {mult}", counts.count_thm2);
            assert_eq!(counts.dyck_total, dyck_count(n, m).unwrap());
        }
    }
}

#[test]
fn large_root_multiplicity() {
    let m = multiplicity(&Weight::new(51, 50), &cartan(3)).unwrap();
    assert_eq!(m.to_string(), "203934938917850692376836");
    assert_eq!(m, multiplicity(&Weight::new(50, 51), &cartan(3)).unwrap());
}
