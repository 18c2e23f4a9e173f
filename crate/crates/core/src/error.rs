use thiserror::Error;

use crate::four::Event;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("boost speed {v} is not below c = {c}")]
    InvalidBoost { v: f64, c: f64 },

    #[error("wavefunction magnitude {magnitude:e} at {event} is below the floor {floor:e}")]
    NearZeroWavefunction {
        event: Event,
        magnitude: f64,
        floor: f64,
    },

    #[error("potential is singular at {event}")]
    SingularPoint { event: Event },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown representation `{0}`")]
    UnknownRepresentation(String),

    #[error("need at least two components above the floor at {event}, found {found}")]
    InsufficientComponents { event: Event, found: usize },

    #[error("path passes through a singular point near {event}")]
    SingularPath { event: Event },

    #[error("quadrature did not converge on segment {segment} (depth limit {max_depth})")]
    QuadratureNonConvergence { segment: usize, max_depth: u32 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("degenerate worldline parameter at lambda = {lambda}")]
    DegenerateParameter { lambda: f64 },
}
