//! Computations with vector-valued Siegel modular forms for the Weil
//! representation of an even lattice.
//!
//! The building blocks, bottom up:
//!
//! * [`lattice`]: even lattices, their discriminant groups `L'/L` (via Smith
//!   normal form), the Q/Z-valued quadratic form, tuples and moment matrices;
//! * [`cyclotomic`]: exact arithmetic in `Q(zeta_M)`, `M = lcm(8, N)`, where
//!   all Weil-matrix entries live;
//! * [`metaplectic`]: the double cover of `Sp_2g(Z)` with an exact branch bit
//!   for the automorphy factor, generators, words, Klingen star;
//! * [`weilrep`]: the genus-g Weil representation on `C[(L'/L)^g]`;
//! * [`expansion`]: truncated Fourier expansions, Siegel lowering operator,
//!   coefficient symmetries, cusp tests, GL reduction of indices;
//! * [`series`]: truncated Eisenstein and Poincare series, Petersson
//!   constants, the unfolding discrepancy demonstration;
//! * [`doubling`]: coprime symmetric pairs, rank strata, representative sets,
//!   essential parts, Fourier-Jacobi degeneration checks;
//! * [`cycles`]: the formal algebra of special-cycle symbols and its exact
//!   Moebius inversion.
//!
//! [`jsonio`], [`session`] and [`selftest`] carry the byte-stable JSON
//! formats, the CLI session plumbing, and the built-in invariant battery.
//!
//! Everything structural is exact (big rationals, cyclotomic integers,
//! Gaussian rationals); floating point only enters in the series evaluators
//! and quadrature, with reported truncation estimates.

pub mod cycles;
pub mod cyclotomic;
pub mod doubling;
pub mod error;
pub mod expansion;
pub mod jsonio;
pub mod lattice;
pub mod linalg;
pub mod metaplectic;
pub mod rat;
pub mod selftest;
pub mod series;
pub mod session;
pub mod weilrep;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
