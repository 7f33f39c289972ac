//! Derivations of the semigroup algebra `K[ω_M]`.
//!
//! Derivations are described by their action on characters rather than
//! through a presentation of the algebra, so the Leibniz rule is a property
//! to test rather than a construction constraint.

mod algebra;
mod decompose;
mod derivation;
mod oracle;

pub use algebra::AlgebraElement;
pub use decompose::{decompose, DecompositionReport, HomogeneousDecomposition, PieceReport};
pub use derivation::{Derivation, DerivationFile, Descriptor, DescriptorSpec, GeneratorTable, TwoParameter};
pub use oracle::{nilpotency_oracle, observed_degree, Homogeneity, NilpotencyVerdict};
