//! Test-only support shared by the workspace test suites.
//!
//! Two independent fixtures live here, deliberately kept free of any
//! dependency on the production crates so they can serve as oracles:
//!
//! * [`oracle`] — a brute-force ART1 simulator with statically allocated
//!   weight matrices, written as a straight-line rendition of the classic
//!   algorithm description. The production engine must match it bit for bit.
//! * [`corpus`] — a seeded generator for mid-90s style HTTP access logs with
//!   known ground truth (hosts, sessions, lines surviving cleaning), used to
//!   exercise the full pipeline at realistic scale without shipping data.

pub mod corpus;
pub mod oracle;
