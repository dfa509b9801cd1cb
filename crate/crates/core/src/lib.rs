//! Exact multi-parametric matroid optimization.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod interdiction;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod matroid;
pub mod oracle;
pub mod param;
pub mod rational;
pub mod wsd;

pub use error::{Error, Result};
