//! Exact arithmetic for higher-rank Drinfeld `F_q[T]`-modules.
//!
//! The crate covers finite-field towers, twisted polynomial rings, Drinfeld
//! modules and their reductions, basic J-invariants and their valuations,
//! and the matrix model of the endomorphism ring of the supersingular
//! module `T + τ^r` used to count CM embeddings.

pub mod arith;
pub mod cli;
pub mod drinfeld;
pub mod endo;
pub mod error;
pub mod ffield;
pub mod jinv;
pub mod polyring;
pub mod ring;
pub mod twisted;

pub use error::{Error, Result};
