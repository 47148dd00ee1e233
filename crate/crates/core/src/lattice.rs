//! Root-lattice arithmetic for the rank-2 symmetric Cartan matrix.

use core::fmt;

use alloc::string::ToString;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{num, Error, Result};

pub use crate::num::binomial;

/// The Cartan matrix `[[2, -r], [-r, 2]]` with `r >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rank2Cartan {
    r: u64,
}

impl Rank2Cartan {
    pub fn new(r: u64) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidCartan(r));
        }
        Ok(Self { r })
    }

    /// The Fibonacci algebra, `r = 3`.
    pub fn fibonacci() -> Self {
        Self { r: 3 }
    }

    pub fn r(&self) -> u64 {
        self.r
    }
}

/// A point `c0·α₀ + c1·α₁` of the positive root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub c0: BigUint,
    pub c1: BigUint,
}

impl Weight {
    pub fn new(c0: u64, c1: u64) -> Self {
        Self {
            c0: BigUint::from(c0),
            c1: BigUint::from(c1),
        }
    }

    pub fn from_big(c0: BigUint, c1: BigUint) -> Self {
        Self { c0, c1 }
    }

    pub fn alpha0() -> Self {
        Self::new(1, 0)
    }

    pub fn alpha1() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn height(&self) -> BigUint {
        &self.c0 + &self.c1
    }

    /// The diagram automorphism swapping the two nodes.
    pub fn flipped(&self) -> Self {
        Self {
            c0: self.c1.clone(),
            c1: self.c0.clone(),
        }
    }

    pub fn is_coprime(&self) -> bool {
        self.c0.gcd(&self.c1).is_one()
    }

    /// Both coordinates as machine integers, for operations that
    /// enumerate or tabulate the box below the weight.
    pub fn small(&self) -> Result<(u64, u64)> {
        match (num::biguint_to_u64(&self.c0), num::biguint_to_u64(&self.c1)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(self.too_large()),
        }
    }

    pub(crate) fn too_large(&self) -> Error {
        Error::WeightTooLarge {
            c0: self.c0.to_string(),
            c1: self.c1.to_string(),
        }
    }

    pub(crate) fn to_signed(&self) -> SignedWeight {
        SignedWeight {
            c0: BigInt::from(self.c0.clone()),
            c1: BigInt::from(self.c1.clone()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}α₀+{}α₁", self.c0, self.c1)
    }
}

/// A lattice point whose coordinates may be negative. Only produced by
/// reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWeight {
    pub c0: BigInt,
    pub c1: BigInt,
}

impl SignedWeight {
    pub fn new(c0: i64, c1: i64) -> Self {
        Self {
            c0: BigInt::from(c0),
            c1: BigInt::from(c1),
        }
    }

    /// `Some` when both coordinates are nonnegative.
    pub fn to_weight(&self) -> Option<Weight> {
        Some(Weight {
            c0: self.c0.to_biguint()?,
            c1: self.c1.to_biguint()?,
        })
    }

    pub fn reflect(&self, node: Node, cartan: &Rank2Cartan) -> SignedWeight {
        let r = BigInt::from(cartan.r);
        match node {
            Node::Alpha0 => SignedWeight {
                c0: &r * &self.c1 - &self.c0,
                c1: self.c1.clone(),
            },
            Node::Alpha1 => SignedWeight {
                c0: self.c0.clone(),
                c1: &r * &self.c0 - &self.c1,
            },
        }
    }

    pub fn form(&self, other: &SignedWeight, cartan: &Rank2Cartan) -> BigInt {
        let r = BigInt::from(cartan.r);
        let two = BigInt::from(2u8);
        &two * &self.c0 * &other.c0 + &two * &self.c1 * &other.c1 - r * (&self.c0 * &other.c1 + &self.c1 * &other.c0)
    }
}

/// One of the two simple roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Alpha0,
    Alpha1,
}

impl Node {
    pub fn from_index(i: usize) -> Option<Node> {
        match i {
            0 => Some(Node::Alpha0),
            1 => Some(Node::Alpha1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootClass {
    RealRoot,
    ImaginaryRoot,
    NotARoot,
}

impl RootClass {
    pub fn is_root(self) -> bool {
        self != RootClass::NotARoot
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootClass::RealRoot => "real",
            RootClass::ImaginaryRoot => "imaginary",
            RootClass::NotARoot => "not-a-root",
        }
    }
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(u|v) = 2·u0·v0 + 2·u1·v1 − r·(u0·v1 + u1·v0)`.
pub fn bilinear_form(u: &Weight, v: &Weight, cartan: &Rank2Cartan) -> BigInt {
    u.to_signed().form(&v.to_signed(), cartan)
}

pub fn norm(v: &Weight, cartan: &Rank2Cartan) -> BigInt {
    bilinear_form(v, v, cartan)
}

/// `s_i(v) = v − ⟨v, α_i⟩ α_i`.
pub fn simple_reflection(node: Node, v: &Weight, cartan: &Rank2Cartan) -> SignedWeight {
    v.to_signed().reflect(node, cartan)
}

/// Classifies a nonzero weight as a real root, an imaginary root, or
/// neither.
///
/// Norm-2 weights are certified real by Weyl descent: reflect in whichever
/// simple root lowers the height until a simple root is reached.
pub fn classify(v: &Weight, cartan: &Rank2Cartan) -> Result<RootClass> {
    if v.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let norm = norm(v, cartan);
    if !norm.is_positive() {
        return Ok(RootClass::ImaginaryRoot);
    }
    if norm != BigInt::from(2u8) {
        return Ok(RootClass::NotARoot);
    }
    let mut cur = v.to_signed();
    loop {
        let is_simple = (cur.c0.is_one() && cur.c1.is_zero()) || (cur.c0.is_zero() && cur.c1.is_one());
        if is_simple {
            return Ok(RootClass::RealRoot);
        }
        let height = &cur.c0 + &cur.c1;
        let next = [Node::Alpha0, Node::Alpha1]
            .into_iter()
            .map(|n| cur.reflect(n, cartan))
            .find(|w| &w.c0 + &w.c1 < height);
        match next {
            Some(w) if w.c0.sign() != Sign::Minus && w.c1.sign() != Sign::Minus => cur = w,
            _ => return Ok(RootClass::NotARoot),
        }
    }
}

/// Number of rational Dyck paths from `(0, 0)` to `(n, m)`, i.e.
/// `binomial(m + n, n) / (m + n)`, for coprime `n, m`.
pub fn dyck_count(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 || num::gcd_u64(n, m) != 1 {
        return Err(Error::NotCoprime {
            n: n.to_string(),
            m: m.to_string(),
        });
    }
    Ok(binomial(n + m, n) / BigUint::from(n + m))
}

/// Dyck path count for the endpoint of a weight: `n = c0`, `m = c1`.
pub fn dyck_count_for(weight: &Weight) -> Result<BigUint> {
    let (n, m) = weight.small()?;
    dyck_count(n, m)
}

pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined for d >= 1");
    let mut d = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}
