pub mod abelian;
pub mod cache;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod matgroup;
pub mod predict;
pub mod ring;
pub mod scalar;
pub mod torus;
pub mod verify;
pub mod weyl;
pub mod workbench;

pub use chartab::Character;
pub use error::{Error, Result};

/// Cyclotomic integers with machine-word coefficients.
pub type Cyclo = cyclo::Cyclotomic<i64>;
