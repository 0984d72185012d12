//! Error type shared by the dynamics, conversion, and propagation layers.

/// Errors produced by state construction, rate evaluation, and propagation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input violates a structural precondition (non-unit quaternion,
    /// non-rotation matrix, non-positive step count, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The state sits on (or inside the guard band of) a mathematical
    /// singularity of the evaluated equations, or outside a model's domain
    /// (zero speed, pole transit in spherical coordinates, altitude below
    /// the atmosphere floor).
    #[error("domain error: {0}")]
    Domain(String),

    /// A direction needed to fix frame orientation is undefined for this
    /// geometry (for example position and velocity parallel under the
    /// h-aligned initialization policy).
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A propagation step failed; carries the simulation time at which the
    /// underlying evaluation was rejected.
    #[error("at t = {time} s: {source}")]
    AtTime {
        time: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attaches a simulation time to the error unless one is already present.
    pub fn at_time(self, time: f64) -> Error {
        match self {
            Error::AtTime { .. } => self,
            other => Error::AtTime { time, source: Box::new(other) },
        }
    }

    /// True for domain errors, including those wrapped with a time stamp.
    pub fn is_domain(&self) -> bool {
        match self {
            Error::Domain(_) => true,
            Error::AtTime { source, .. } => source.is_domain(),
            _ => false,
        }
    }

    /// The simulation time attached by the propagator, if any.
    pub fn failing_time(&self) -> Option<f64> {
        match self {
            Error::AtTime { time, .. } => Some(*time),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::Error;

    #[test]
    fn at_time_wraps_once() {
        let e = Error::Domain("zero speed".into()).at_time(3.0).at_time(9.0);
        assert_eq!(e.failing_time(), Some(3.0));
        assert!(e.is_domain());
    }

    #[test]
    fn invalid_input_is_not_domain() {
        assert!(!Error::InvalidInput("bad norm".into()).is_domain());
    }
}
