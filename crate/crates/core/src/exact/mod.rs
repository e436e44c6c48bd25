//! Exact scalars, linear algebra, and t-polynomials.

pub mod cyclotomic;
pub mod linalg;
mod poly;
pub mod rational;
pub mod tpoly;

pub use cyclotomic::{CycNum, CyclotomicField};
pub use linalg::{CycMatrix, Field, Matrix, SparseEchelon, SparseVec};
pub use rational::Rational;
pub use tpoly::TPoly;
