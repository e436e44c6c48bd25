//! Exact computation of the cohomology rings attached to a linear global
//! quotient orbifold `[V/Γ]`.

pub mod error;
pub mod exact;
pub mod group;
pub mod inertia;
pub mod multivector;
pub mod weyl;
pub mod classical_ring;
pub mod cochain;
pub mod cr_model;
pub mod deformed_ring;
pub mod presets;
pub mod cli;

pub use error::{Error, Result};
