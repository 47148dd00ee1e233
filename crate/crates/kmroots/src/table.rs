//! Multiplicity versus bound tables over root families.

use std::str::FromStr;

use kmroots_core::lattice::dyck_count;
use kmroots_core::{MultiplicityTable, Rank2Cartan, Result, Weight};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::parallel::bound_report;
use crate::report::TableRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `(n + 1, n)`.
    Staircase,
    /// `(n, n + 1)`.
    Antistaircase,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "staircase" => Ok(Family::Staircase),
            "antistaircase" => Ok(Family::Antistaircase),
            other => Err(format!(
                "unknown family {other:?} (expected staircase or antistaircase)"
            )),
        }
    }
}

impl Family {
    pub fn root(self, n: u64) -> Weight {
        match self {
            Family::Staircase => Weight::new(n + 1, n),
            Family::Antistaircase => Weight::new(n, n + 1),
        }
    }

    /// Rows `n = 1..=max_n`.
    pub fn roots(self, max_n: u64) -> Vec<(u64, Weight)> {
        (1..=max_n).map(|n| (n, self.root(n))).collect()
    }
}

/// Builds one row per `(n, root)`. Bounds are enumerated only for roots
/// whose Dyck path count is at most `skip_above`; the others are marked
/// skipped. Every root must have coprime, positive coordinates.
pub fn build_rows(
    roots: &[(u64, Weight)],
    cartan: &Rank2Cartan,
    skip_above: Option<&BigUint>,
) -> Result<Vec<TableRow>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let mut c0 = 0;
    let mut c1 = 0;
    for (_, w) in roots {
        let (a, b) = w.small()?;
        dyck_count(a, b)?;
        c0 = c0.max(a);
        c1 = c1.max(b);
    }
    let table = MultiplicityTable::new(cartan, &Weight::new(c0, c1))?;
    roots
        .par_iter()
        .map(|(n, w)| {
            let mult = table.multiplicity(w).expect("table covers every row");
            let (a, b) = w.small()?;
            let skip = skip_above.is_some_and(|cap| dyck_count(a, b).map(|d| &d > cap).unwrap_or(true));
            if skip {
                return Ok(TableRow::new(*n, w, &mult, None));
            }
            let rep = bound_report(w, cartan, None)?;
            Ok(TableRow::new(
                *n,
                w,
                &mult,
                Some((&rep.counts.count_thm1, &rep.counts.count_thm2)),
            ))
        })
        .collect()
}
