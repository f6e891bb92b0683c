//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration (mesh dimension, step counts, theta range, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Index past the end of a mesh/space container.
    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// Two objects built over different meshes or spaces were combined.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A direct factorization hit a numerically zero pivot.
    #[error("singular linear system while {0}")]
    Singular(String),

    /// The iterative solve for one implicit step did not contract.
    #[error("linear solver stalled at step {step}: residual {residual:.3e} after {iters} iterations")]
    LinearSolveStalled {
        step: usize,
        iters: usize,
        residual: f64,
    },

    /// Picard iteration exhausted its iteration budget.
    #[error(
        "Picard iteration did not converge at step {step}: relative increment {residual:.3e} \
         after {iters} iterations (history {history:?}); consider a smaller time step"
    )]
    PicardNoConvergence {
        step: usize,
        iters: usize,
        residual: f64,
        history: Vec<f64>,
    },

    /// A local-energy test function violated its admissibility conditions.
    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),

    /// Snapshot file I/O or format violation.
    #[error("snapshot error: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
