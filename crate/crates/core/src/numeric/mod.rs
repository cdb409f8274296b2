//! Exact arithmetic: rationals, prime fields, polynomials, series, matrices.

mod scalar;
mod fp;
mod mono;
mod poly;
mod laurent;
mod univariate;
mod biseries;
mod matrix;
pub mod sparse;

pub use scalar::{int, is_integer, rat, scalar_to_string, Scalar};
pub use fp::{random_primes, PrimeField};
pub use mono::{Mono, MAX_VARS};
pub use poly::MultiPoly;
pub use laurent::LaurentPoly;
pub use univariate::{series_expand, UniPoly, UniRationalFunction};
pub use biseries::{truncated_exp, BiSeries};
pub use matrix::{
    bareiss_det, certified_rank, det_laplace, minors, rank, rank_mod_p, rank_rational,
    Entry, SparseMatrix,
};
pub use matrix::{binom, nullspace, rref, subsets};
