//! File formats, command-line front end and seeded search on top of
//! `skewring-core`.

pub mod cli;
pub mod context;
pub mod files;
pub mod search;
