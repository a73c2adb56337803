//! File formats, report rendering and the command-line front end for
//! [`bvsolve_core`].

pub mod cli;
mod error;
pub mod format;
pub mod report;

pub use error::AppError;
