//! Command line front end for `isoendo-core`: graph caching, output formats
//! and the published example data.

pub use isoendo_core as core;

pub mod cache;
pub mod cli;
pub mod fixtures;
pub mod labels;
pub mod reproduce;
