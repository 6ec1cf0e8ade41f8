//! Exact computations with chord and Jacobi diagrams, Lie algebra weight
//! systems and the Vogel algebra.

pub mod error;
pub mod diagrams;
pub mod relations;
pub mod weights;
pub mod lambda;
pub mod kernel;
pub mod cli;

pub use error::{Error, Result};

pub type Q = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}
