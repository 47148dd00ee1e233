//! Exact root multiplicities from Peterson's recursion.
//!
//! For `β ∈ Q₊` put `c_β = Σ_{d | β} m_{β/d} / d`. Then `c_{α_i} = 1` and
//!
//! ```text
//! ((β|β) − (β|2ρ)) · c_β = Σ_{β′ + β″ = β} (β′|β″) · c_{β′} · c_{β″}
//! ```
//!
//! summed over ordered pairs of nonzero `β′, β″ ∈ Q₊`, with
//! `(β|2ρ) = 2·(c0 + c1)` in the symmetric rank-2 case. Multiplicities follow
//! by Möbius inversion: `m_β = Σ_{d | β} μ(d)/d · c_{β/d}`.
//!
//! When the left factor vanishes, `(β|β) = 2·ht(β) > 0`, so `β` is neither
//! imaginary nor (unless simple) real. Then `m_β = 0` and `c_β` is read off
//! from the divisor sum, whose terms are all known.
//!
//! The table stores `S·c_β` as integers, where `S = lcm(1, …, max(c0, c1))`
//! is divisible by every `gcd(β)` in the box, so the recursion needs no
//! rational arithmetic.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{classify, mobius, Rank2Cartan, RootClass, Weight};
use crate::{Error, Result};

/// Exact fraction in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Peterson coefficients and multiplicities for every weight in the box
/// `[0, c0] × [0, c1]`.
#[derive(Debug, Clone)]
pub struct MultiplicityTable {
    cartan: Rank2Cartan,
    c0: u64,
    c1: u64,
    scale: BigInt,
    scaled_c: Vec<BigInt>,
    mult: Vec<BigUint>,
}

// Larger boxes need millions of big-integer products per weight.
const MAX_BOX_SIDE: u64 = 4096;

fn lcm_up_to(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc.lcm(&BigInt::from(i)))
}

fn form_small(u: (u64, u64), v: (u64, u64), r: i64) -> i64 {
    let (u0, u1) = (u.0 as i64, u.1 as i64);
    let (v0, v1) = (v.0 as i64, v.1 as i64);
    2 * u0 * v0 + 2 * u1 * v1 - r * (u0 * v1 + u1 * v0)
}

impl MultiplicityTable {
    /// Builds the table in height order; every entry depends only on
    /// strictly lower weights.
    pub fn new(cartan: &Rank2Cartan, bound: &Weight) -> Result<Self> {
        let (c0, c1) = bound.small()?;
        if c0 > MAX_BOX_SIDE || c1 > MAX_BOX_SIDE || cartan.r() > 1 << 20 {
            return Err(bound.too_large());
        }
        let size = ((c0 + 1) * (c1 + 1)) as usize;
        let mut table = Self {
            cartan: *cartan,
            c0,
            c1,
            scale: lcm_up_to(c0.max(c1)),
            scaled_c: vec![BigInt::zero(); size],
            mult: vec![BigUint::zero(); size],
        };
        for h in 1..=c0 + c1 {
            for a in h.saturating_sub(c1)..=h.min(c0) {
                table.fill(a, h - a)?;
            }
        }
        Ok(table)
    }

    pub fn cartan(&self) -> &Rank2Cartan {
        &self.cartan
    }

    /// The box corner.
    pub fn bound(&self) -> Weight {
        Weight::new(self.c0, self.c1)
    }

    pub fn covers(&self, weight: &Weight) -> bool {
        match weight.small() {
            Ok((a, b)) => a <= self.c0 && b <= self.c1,
            Err(_) => false,
        }
    }

    fn idx(&self, a: u64, b: u64) -> usize {
        (a * (self.c1 + 1) + b) as usize
    }

    fn fill(&mut self, a: u64, b: u64) -> Result<()> {
        let i = self.idx(a, b);
        if a + b == 1 {
            self.scaled_c[i] = self.scale.clone();
            self.mult[i] = BigUint::one();
            return Ok(());
        }
        let r = self.cartan.r() as i64;
        let mut sum = BigInt::zero();
        for x in 0..=a {
            for y in 0..=b {
                if (x == 0 && y == 0) || (x == a && y == b) {
                    continue;
                }
                let left = &self.scaled_c[self.idx(x, y)];
                if left.is_zero() {
                    continue;
                }
                let right = &self.scaled_c[self.idx(a - x, b - y)];
                if right.is_zero() {
                    continue;
                }
                let f = form_small((x, y), (a - x, b - y), r);
                if f != 0 {
                    sum += left * right * f;
                }
            }
        }
        let denom = form_small((a, b), (a, b), r) - 2 * (a as i64 + b as i64);
        let g = a.gcd(&b);
        if denom == 0 {
            if !sum.is_zero() {
                return Err(Error::PetersonSingular { c0: a, c1: b });
            }
            // m_β = 0, so c_β = Σ_{d ≥ 2} m_{β/d} / d
            let mut scaled = BigInt::zero();
            for d in (2..=g).filter(|d| g.is_multiple_of(*d)) {
                let m = &self.mult[self.idx(a / d, b / d)];
                if !m.is_zero() {
                    scaled += BigInt::from(m.clone()) * (&self.scale / BigInt::from(d));
                }
            }
            self.scaled_c[i] = scaled;
            return Ok(());
        }
        // sum = S² · (numerator); S·c = sum / (S · denom)
        let divisor = &self.scale * BigInt::from(denom);
        let (q, rem) = sum.div_rem(&divisor);
        if !rem.is_zero() {
            return Err(self.inconsistent(a, b, BigRational::new(sum, divisor)));
        }
        self.scaled_c[i] = q;
        self.mult[i] = self.invert(a, b, g)?;
        Ok(())
    }

    /// `m_β = Σ_{d | g} μ(d)/d · c_{β/d}`, computed as
    /// `(Σ μ(d) · (S·c_{β/d}) · (S/d)) / S²`.
    fn invert(&self, a: u64, b: u64, g: u64) -> Result<BigUint> {
        let mut acc = BigInt::zero();
        for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let term = &self.scaled_c[self.idx(a / d, b / d)] * (&self.scale / BigInt::from(d));
            if mu > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let s2 = &self.scale * &self.scale;
        let (q, rem) = acc.div_rem(&s2);
        if !rem.is_zero() || q.sign() == Sign::Minus {
            return Err(self.inconsistent(a, b, BigRational::new(acc, s2)));
        }
        Ok(q.to_biguint().expect("nonnegative"))
    }

    fn inconsistent(&self, a: u64, b: u64, value: BigRational) -> Error {
        Error::Inconsistent {
            c0: a,
            c1: b,
            value: value.to_string(),
        }
    }

    /// `c_β`, or `None` outside the box or at zero.
    pub fn c(&self, weight: &Weight) -> Option<ExactRational> {
        if weight.is_zero() || !self.covers(weight) {
            return None;
        }
        let (a, b) = weight.small().ok()?;
        Some(BigRational::new(
            self.scaled_c[self.idx(a, b)].clone(),
            self.scale.clone(),
        ))
    }

    pub fn multiplicity(&self, weight: &Weight) -> Option<BigUint> {
        if weight.is_zero() || !self.covers(weight) {
            return None;
        }
        let (a, b) = weight.small().ok()?;
        Some(self.mult[self.idx(a, b)].clone())
    }

    pub(crate) fn mult_small(&self, a: u64, b: u64) -> &BigUint {
        &self.mult[self.idx(a, b)]
    }

    /// Every nonzero weight of the box with its `c` and multiplicity, in
    /// order of `(c0, c1)`.
    pub fn entries(&self) -> impl Iterator<Item = (Weight, ExactRational, BigUint)> + '_ {
        (0..=self.c0)
            .flat_map(move |a| (0..=self.c1).map(move |b| (a, b)))
            .filter(|&(a, b)| a + b > 0)
            .map(move |(a, b)| {
                let w = Weight::new(a, b);
                let c = self.c(&w).expect("in box");
                (w, c, self.mult[self.idx(a, b)].clone())
            })
    }
}

/// `c_β` from the memo table, rebuilding it over a larger box if `weight`
/// falls outside.
pub fn peterson_c(weight: &Weight, cartan: &Rank2Cartan, table: &mut MultiplicityTable) -> Result<ExactRational> {
    if weight.is_zero() {
        return Err(Error::ZeroWeight);
    }
    if table.cartan() != cartan || !table.covers(weight) {
        let (a, b) = weight.small()?;
        let bound = if table.cartan() == cartan {
            let (c0, c1) = (table.c0, table.c1);
            Weight::new(a.max(c0), b.max(c1))
        } else {
            Weight::new(a, b)
        };
        *table = MultiplicityTable::new(cartan, &bound)?;
    }
    Ok(table.c(weight).expect("table covers weight"))
}

/// Root multiplicity `m_β = dim 𝔤_β`.
pub fn multiplicity(weight: &Weight, cartan: &Rank2Cartan) -> Result<BigUint> {
    if weight.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let table = MultiplicityTable::new(cartan, weight)?;
    Ok(table.multiplicity(weight).expect("table covers weight"))
}

/// Positive roots `β ≤ bound` (componentwise) with their multiplicities,
/// ordered by height then `c0`.
pub fn positive_roots_up_to(bound: &Weight, cartan: &Rank2Cartan) -> Result<Vec<(Weight, BigUint)>> {
    let table = MultiplicityTable::new(cartan, bound)?;
    let mut roots: Vec<(Weight, BigUint)> = table
        .entries()
        .filter(|(_, _, m)| !m.is_zero())
        .map(|(w, _, m)| (w, m))
        .collect();
    roots.sort_by(|(a, _), (b, _)| a.height().cmp(&b.height()).then_with(|| a.c0.cmp(&b.c0)));
    Ok(roots)
}

/// Classification and multiplicity of every positive root in a box,
/// keyed by `(c0, c1)`.
pub fn root_summary(bound: &Weight, cartan: &Rank2Cartan) -> Result<BTreeMap<(u64, u64), (RootClass, BigUint)>> {
    let table = MultiplicityTable::new(cartan, bound)?;
    let mut out = BTreeMap::new();
    for (w, _, m) in table.entries() {
        let class = classify(&w, cartan)?;
        out.insert(w.small()?, (class, m));
    }
    Ok(out)
}

/// Number of Kostant partitions of `weight`: the coefficient of
/// `e^weight` in `Π_{β ∈ Δ₊} (1 − e^β)^{−m_β}`.
pub fn kostant_count(weight: &Weight, cartan: &Rank2Cartan) -> Result<BigUint> {
    if weight.is_zero() {
        return Ok(BigUint::one());
    }
    let table = MultiplicityTable::new(cartan, weight)?;
    Ok(kostant_from_table(&table, weight.small()?))
}

/// Kostant counts for every point of the box below `target`, as a
/// row-major `(c0 + 1) × (c1 + 1)` grid.
pub fn kostant_grid(table: &MultiplicityTable) -> Vec<BigUint> {
    let (n0, n1) = (table.c0, table.c1);
    let width = (n1 + 1) as usize;
    let at = |a: u64, b: u64| a as usize * width + b as usize;
    let mut series = vec![BigUint::zero(); ((n0 + 1) * (n1 + 1)) as usize];
    series[0] = BigUint::one();
    for p in 0..=n0 {
        for q in 0..=n1 {
            if p + q == 0 {
                continue;
            }
            let m = table.mult_small(p, q);
            if m.is_zero() {
                continue;
            }
            // binomial(m + j − 1, j) for j up to the longest chain in the box
            let steps = match (p, q) {
                (0, q) => n1 / q,
                (p, 0) => n0 / p,
                (p, q) => (n0 / p).min(n1 / q),
            };
            let mut coef = Vec::with_capacity(steps as usize + 1);
            coef.push(BigUint::one());
            for j in 1..=steps {
                let next = coef[j as usize - 1].clone() * (m + BigUint::from(j - 1)) / BigUint::from(j);
                coef.push(next);
            }
            let old = series.clone();
            for a in p..=n0 {
                for b in q..=n1 {
                    let mut acc = BigUint::zero();
                    let mut j = 1u64;
                    while j * p <= a && j * q <= b {
                        let prev = &old[at(a - j * p, b - j * q)];
                        if !prev.is_zero() {
                            acc += &coef[j as usize] * prev;
                        }
                        j += 1;
                    }
                    series[at(a, b)] += acc;
                }
            }
        }
    }
    series
}

fn kostant_from_table(table: &MultiplicityTable, (a, b): (u64, u64)) -> BigUint {
    let grid = kostant_grid(table);
    grid[(a * (table.c1 + 1) + b) as usize].clone()
}
