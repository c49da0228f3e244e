use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("iteration budget exhausted before convergence")]
    NoConvergence,
    #[error("a smaller (l, p) already satisfies the preperiodicity relation")]
    NotMinimal,
    #[error("landing cycle is not repelling (|lambda| <= 1)")]
    NotRepelling,
    #[error("periodic-point continuation jumped out of the seeded basin")]
    BasinJump,
    #[error("A0 vanishes; parameter is strictly periodic, not Misiurewicz")]
    DegenerateA0,
    #[error("transversality coefficient B0 vanishes")]
    DegenerateB0,
    #[error("transversality pair degenerate: |B0| too close to |B0'|")]
    DegenerateTransversality,
    #[error("real-linear map not invertible: |Q| = |Q'|")]
    NotInvertible,
    #[error("requested zoom depth exceeds double-precision range")]
    RangeExceeded,
    #[error("membership grid contains no bounded pixels")]
    EmptySet,
    #[error("point set is empty")]
    EmptyInput,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable process exit codes for the CLI surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence => 2,
            Error::NotRepelling => 3,
            Error::NotMinimal => 4,
            Error::DegenerateA0
            | Error::DegenerateB0
            | Error::DegenerateTransversality
            | Error::NotInvertible => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
