use thiserror::Error;

use crate::geometry::AssumptionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    #[error("empty parameter box: {0}")]
    EmptyBox(String),

    #[error("point lies outside the parameter box")]
    OutsideBox,

    /// Identical separating hyperplanes or identical weight functions.
    #[error("degenerate instance: {0}")]
    Degenerate(Box<AssumptionReport>),

    /// The open region handed to the interior-point routine is empty.
    #[error("region has no interior point")]
    NoInteriorPoint,

    #[error("deleting element {0} drops the rank")]
    RankDrop(usize),

    #[error("enumeration of {count} candidate subsets exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },

    /// Self-check failure; always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
