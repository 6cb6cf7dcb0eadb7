pub mod biseries;
pub mod error;
pub mod exec;
pub mod expansion;
pub mod identities;
pub mod integration;
pub mod operators;
pub mod opmatrix;
pub mod poly;
pub mod psi;
pub mod random;
pub mod scalar;
pub mod special;
pub mod star;
pub mod umbral;
pub mod verify;

pub use biseries::BiSeries;
pub use error::{Error, Result};
pub use exec::Exec;
pub use opmatrix::OpMatrix;
pub use poly::Poly;
pub use psi::{Preset, PsiSequence, RationalFunction};
pub use scalar::{rat, Scalar};
