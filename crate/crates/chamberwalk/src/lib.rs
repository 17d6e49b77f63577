//! Radial random walks on the chambers of thick A~2 buildings.
//!
//! The crate combines exact arithmetic in the affine Hecke algebra of type
//! A~2, explicit principal series and induced representations, numerical
//! Plancherel integration over the torus, and local limit asymptotics for
//! the simple walk, with Monte Carlo simulation as an independent check.

pub mod error;
pub mod field;
pub mod hecke;
pub mod io;
pub mod limit;
pub mod par;
pub mod plancherel;
pub mod reps;
pub mod walks;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{ComplexField, Field, Quad, QuadraticField};
pub use hecke::{Basis, HeckeAlgebra, HeckeElement};
pub use par::Exec;
pub use weyl::{Affine, Lattice, Word, W0};
