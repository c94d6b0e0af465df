//! File formats, end-to-end checks and the command-line front end for the
//! arithmetic types of singular del Pezzo surfaces over finite fields.

pub mod checks;
pub mod cli;
pub mod format;

use delpezzo_core::blowdown::BlowdownError;
use delpezzo_core::count::CountError;
use delpezzo_core::gf::GfError;
use delpezzo_core::planeconf::PlaneError;
use delpezzo_core::quadmod::QuadError;
use delpezzo_core::synth4::SynthError;
use delpezzo_core::typetab::TypeError;
use delpezzo_core::zeta::ZetaError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("q must be a prime power, written p^m or as an integer: {0:?}")]
    BadQ(String),
    #[error("field modulus {0:?} differs from the canonical modulus {1:?}")]
    Modulus(Vec<u32>, Vec<u32>),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Blowdown(#[from] BlowdownError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit status: 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BadQ(_) | Error::Usage(_) | Error::Modulus(..) | Error::Json(_) => 2,
            Error::Type(TypeError::UnknownType(..)) | Error::Synth(SynthError::UnknownType(_)) => 2,
            Error::Blowdown(BlowdownError::UnknownType(_)) => 2,
            _ => 1,
        }
    }
}
