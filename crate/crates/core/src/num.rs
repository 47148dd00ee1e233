//! Small helpers for exact integer arithmetic.
//!
//! Predicates are written once over [`Exact`] and run first on `i128`
//! with checked operations; on overflow they are re-run on `BigInt`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

pub(crate) trait Exact: Clone + Ord + From<u64> + Zero + CheckedAdd + CheckedSub + CheckedMul {}

impl Exact for i128 {}
impl Exact for BigInt {}

/// Runs `f` with `i128`, falling back to `BigInt` when it overflows.
pub(crate) fn with_fallback(fast: impl FnOnce() -> Option<bool>, slow: impl FnOnce() -> Option<bool>) -> bool {
    match fast() {
        Some(v) => v,
        None => slow().expect("BigInt arithmetic cannot overflow"),
    }
}

pub(crate) fn add<T: Exact>(a: &T, b: &T) -> Option<T> {
    a.checked_add(b)
}

pub(crate) fn sub<T: Exact>(a: &T, b: &T) -> Option<T> {
    a.checked_sub(b)
}

pub(crate) fn mul<T: Exact>(a: &T, b: &T) -> Option<T> {
    a.checked_mul(b)
}

/// `binomial(n, k)` by the running product `prod (n - k + i) / i`, each
/// division exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub(crate) fn biguint_to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
