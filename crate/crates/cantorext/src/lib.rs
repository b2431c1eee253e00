//! File formats and the `cantorext` command line on top of `cantorext-core`.

pub mod cli;
pub mod formats;
