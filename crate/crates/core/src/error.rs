use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value while evaluating at parameter {param}")]
    Evaluation { param: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input{}: {reason}", fmt_node(*.index))]
    Degenerate { reason: String, index: Option<usize> },

    /// Curvature fell below the frame threshold, so N and B are undefined.
    #[error("degenerate Frenet frame at parameter {param}{}: curvature {kappa:e} is below threshold", fmt_node(*.index))]
    DegenerateFrame {
        param: f64,
        kappa: f64,
        index: Option<usize>,
    },

    #[error("zero speed at parameter {param}{}", fmt_node(*.index))]
    DegenerateSpeed { param: f64, index: Option<usize> },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },
}

fn fmt_node(index: Option<usize>) -> String {
    match index {
        Some(i) => format!(" (node {i})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(reason: impl Into<String>) -> Self {
        Error::Degenerate {
            reason: reason.into(),
            index: None,
        }
    }

    /// Attaches a grid node index to errors that carry one.
    pub fn at_node(self, node: usize) -> Self {
        match self {
            Error::Degenerate { reason, .. } => Error::Degenerate {
                reason,
                index: Some(node),
            },
            Error::DegenerateFrame { param, kappa, .. } => Error::DegenerateFrame {
                param,
                kappa,
                index: Some(node),
            },
            Error::DegenerateSpeed { param, .. } => Error::DegenerateSpeed {
                param,
                index: Some(node),
            },
            other => other,
        }
    }

    /// True for the frame and speed degeneracies that downstream code may
    /// record per node instead of aborting.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::Degenerate { .. } | Error::DegenerateFrame { .. } | Error::DegenerateSpeed { .. }
        )
    }
}
