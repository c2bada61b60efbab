//! Exact symbolic engine for classical affine W-algebras.
//!
//! The crate builds Poisson vertex algebras as differential polynomial
//! algebras over `Q(k)`, realizes W-algebras as joint kernels of screening
//! operators, and checks the loop-group realization identities at finite
//! truncation.

pub mod diffpoly;
pub mod error;
pub mod field;
pub mod lambda;
pub mod liealg;
pub mod linalg;
pub mod loopgeo;
pub mod pva;
pub mod ratfunc;
pub mod sample;
pub mod screening;
pub mod upoly;
pub mod weight;

pub use diffpoly::{DiffPoly, Factor, Monomial, Side, Var, VarTable};
pub use error::{Error, Result};
pub use field::{q, qi, Field, Q};
pub use liealg::{grade, named_algebra, principal_triple, AdxGrading, LieAlgebra, SimpleLieAlgebra, Sl2Triple};
pub use loopgeo::LoopSetup;
pub use pva::Pva;
pub use ratfunc::RatFunc;
pub use screening::Screening;
pub use weight::HalfInt;
