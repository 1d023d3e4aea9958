//! Standard-library companion to `frobenius-core`: JSON/CSV formats, an
//! on-disk character cache, parallel verification grids and the `frobctl`
//! command line.

pub mod cache;
pub mod cli;
pub mod grid;
pub mod json;

pub use cache::{DiskCache, SharedMemo};
pub use cli::{run, JobConfig};
