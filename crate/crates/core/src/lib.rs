//! Exact computation of graded Lie invariants of finitely presented groups.
//!
//! The crate covers Poincaré polynomials and their generating functions,
//! lower central series ranks, Hall-basis computations in free Lie algebras,
//! Alexander invariants via Fox calculus, Chen ranks and resonance varieties.
//! Everything is exact: rationals for small objects, pairs of random 31-bit
//! prime fields (with agreement checks) for large eliminations.

pub mod error;
pub mod numeric;
pub mod combinatorics;
pub mod groups;
pub mod cohomology;
pub mod groebner;
pub mod lie;
pub mod alexander;
pub mod resonance;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{
    BiSeries, LaurentPoly, Mono, MultiPoly, PrimeField, Scalar, SparseMatrix, UniPoly,
    UniRationalFunction,
};
pub use combinatorics::RankTable;
pub use groups::{GroupPresentation, Word};
pub use cohomology::TwoStepAlgebra;
pub use groebner::{Ideal, MonomialOrder};
pub use lie::{GradedDims, HallBasis, LiePresentation};
pub use alexander::{ModulePresentation, Provenance, ThetaSeries};
pub use resonance::{AomotoMatrix, LinearSubspaceParam};
