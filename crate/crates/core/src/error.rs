use thiserror::Error;

/// Failures reported by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument out of domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: invalid parameter {name} = {value} ({reason})")]
    InvalidParameter {
        op: &'static str,
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{op}: lower parameter {value} is a pole of the series")]
    Pole { op: &'static str, value: f64 },

    #[error("{op}: series did not converge within {terms} terms (last term {last_term:e}, partial sum {partial_sum:e})")]
    Convergence {
        op: &'static str,
        terms: usize,
        last_term: f64,
        partial_sum: f64,
    },

    #[error(
        "{op}: quadrature did not converge (estimate {estimate:e}, error bound {error_bound:e})"
    )]
    Quadrature {
        op: &'static str,
        estimate: f64,
        error_bound: f64,
    },

    #[error("{op}: a = {a} lies within {distance:e} of an integer; use the quadrature evaluator")]
    PoleProximity {
        op: &'static str,
        a: f64,
        distance: f64,
    },

    #[error("{op}: closed form is ill-conditioned ({digits_lost:.1} digits lost); use the quadrature evaluator")]
    IllConditioned { op: &'static str, digits_lost: f64 },

    #[error("{op}: {detail}")]
    NoSolution { op: &'static str, detail: String },

    #[error("{op}: overflow in log-space evaluation")]
    Overflow { op: &'static str },
}

impl Error {
    /// Name of the operation that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::InvalidParameter { op, .. }
            | Error::Pole { op, .. }
            | Error::Convergence { op, .. }
            | Error::Quadrature { op, .. }
            | Error::PoleProximity { op, .. }
            | Error::IllConditioned { op, .. }
            | Error::NoSolution { op, .. }
            | Error::Overflow { op } => op,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
