//! Separating hyperplanes and their arrangements.

mod arrangement;
mod hyperplane;
pub mod plot;

pub use arrangement::*;
pub use hyperplane::*;
