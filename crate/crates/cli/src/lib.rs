//! Command-line front end for `chtube`: calculators, the combination
//! pipeline driven by TOML configs, and seeded verification suites.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;
