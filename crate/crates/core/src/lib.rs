//! Exact topological invariants of the moduli spaces `R_{g,n}` of rank-2
//! parabolic bundles with all weights `1/4`.

pub mod betti;
pub mod error;
pub mod euler;
pub mod exact;
pub mod orthopoly;
pub mod relations;
pub mod verify;

pub use error::{Error, Result};
