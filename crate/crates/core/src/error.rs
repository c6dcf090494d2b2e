//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed exact/float scalar modes without an explicit cast")]
    MixedMode,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("interior product of a 0-form")]
    DegreeZero,

    #[error("3-form is not positive")]
    NotPositive,

    #[error("form is not closed (d\u{3c6} \u{2260} 0)")]
    NotClosed,

    #[error("Q-operator routes disagree: formula vs \u{3b8}-solve")]
    QSolveInconsistent,

    #[error("structure is not a semi-algebraic soliton")]
    NotSoliton,

    #[error("matrix is not an automorphism of the Lie algebra")]
    NotAutomorphism,

    #[error("Jacobi identity fails on {failures} basis triple(s), first at ({i},{j},{k})")]
    JacobiFailure {
        failures: usize,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("positivity lost at t = {0}")]
    PositivityLost(f64),

    #[error("closedness drift exceeded tolerance at t = {0} (step size too large)")]
    ClosednessDrift(f64),

    #[error("trajectory residuals too large to fit a soliton scaling law")]
    NotASolitonTrajectory,

    #[error("unknown catalog algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
