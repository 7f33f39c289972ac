//! Demazure roots of affine toric varieties and their restriction to
//! subtori.
//!
//! The crate covers the whole pipeline: cones and their duals
//! ([`cones`]), Demazure roots ([`demazure`]), derivations of the
//! semigroup algebra ([`lnd`]), restriction of roots along a subtorus
//! ([`restriction`]) and the complete picture for toric surfaces
//! ([`surface`]). All arithmetic is exact. The [`cli`] module backs the
//! `toric-roots` binary.

pub mod cli;
pub mod cones;
pub mod demazure;
pub mod error;
pub mod lattice;
pub mod lnd;
pub mod restriction;
pub mod surface;

pub use cones::{Cone, Hyperplane, RelativePosition};
pub use demazure::DemazureRoot;
pub use error::{Error, Result};
pub use lattice::{Int, LatticeMap, LatticeVector, Rational, RationalVector};
