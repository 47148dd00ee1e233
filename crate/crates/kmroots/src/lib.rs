//! Parallel drivers, report formats and the command-line front end for
//! [`kmroots_core`].

pub mod cli;
pub mod parallel;
pub mod report;
pub mod table;

pub use parallel::{bound_report, BoundReport, Listing};
