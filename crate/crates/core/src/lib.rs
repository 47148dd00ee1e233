//! Root multiplicities and combinatorial upper bounds for the rank-2
//! symmetric hyperbolic Kac-Moody algebras with Cartan matrix
//! `[[2, -r], [-r, 2]]`, `r >= 3`.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! - [`lattice`]: the root lattice, its bilinear form, simple reflections,
//!   root classification and the rational Dyck path count.
//! - [`string_data`]: binary words, their run-length string data and
//!   Littelmann's validity criterion.
//! - [`filters`]: the two stability conditions on run sequences.
//! - [`counting`]: pruned enumeration of filtered Dyck paths.
//! - [`peterson`]: exact multiplicities from Peterson's recursion and the
//!   Kostant partition count.
//! - [`sampler`]: exact-uniform Dyck path sampling via the cycle lemma and
//!   chunked Monte Carlo estimation.
//!
//! Weights are written `c0·α₀ + c1·α₁`. Words use the letter `1` for α₁
//! (an up step) and `0` for α₀ (a right step), so a path from `(0, 0)` to
//! `(n, m)` has `n = c0` zeros and `m = c1` ones.

#![no_std]

extern crate alloc;

pub mod counting;
mod error;
pub mod filters;
pub mod lattice;
mod num;
pub mod peterson;
pub mod sampler;
pub mod string_data;

pub use counting::{BoundCounts, DyckEnumerator};
pub use error::{Error, Result};
pub use filters::FilterLevel;
pub use lattice::{Rank2Cartan, RootClass, SignedWeight, Weight};
pub use peterson::{ExactRational, MultiplicityTable};
pub use sampler::{EstimateReport, SamplingPlan, VisitStats};
pub use string_data::{DyckPath, StringData};
