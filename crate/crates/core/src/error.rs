use thiserror::Error;

use crate::chart::ChartKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("operands live on different charts")]
    ChartMismatch,

    #[error("expected an {expected} chart, got an {found} chart")]
    WrongChartKind { expected: ChartKind, found: ChartKind },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("missing value for coordinate {0}")]
    MissingCoordinate(String),

    #[error("unknown coordinate {0}")]
    UnknownCoordinate(String),

    #[error("homotopy operator needs a form of degree >= 1")]
    DegreeZero,

    #[error("vector field is not vertical: component along {0}")]
    NotVertical(String),

    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("hamiltonian depends on the energy coordinate")]
    EnergyDependence,

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),

    #[error("form is not in the image of the contraction: {0}")]
    NotInImage(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
