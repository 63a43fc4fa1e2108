//! File formats, worker pools and the command line on top of
//! [`tilecraft_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod parallel;
pub mod report;
pub mod wkt;

pub use error::{Error, Result};
pub use tilecraft_core as core;
