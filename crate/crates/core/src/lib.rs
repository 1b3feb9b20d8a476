//! Exact verification kernel for highest-root graded simple Lie algebras,
//! principal contact bundles and their Hamiltonian calculus.
//!
//! Everything is computed over the Gaussian rationals ℚ(i); there is no
//! floating point anywhere, so every check is an exact equality.

pub mod adjoint;
pub mod contact;
pub mod error;
pub mod exterior;
pub mod laurent;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod sample;
pub mod rational;
pub mod rootsys;
pub mod scalar;

pub use error::{AlgebraError, Error};
pub use laurent::LaurentPoly;
pub use poly::{var_table, MultiPoly, Vars};
pub use rational::RationalFunction;
pub use scalar::ExactScalar;
