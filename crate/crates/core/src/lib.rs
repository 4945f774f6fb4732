//! Exact computational toolkit for vexillary matrix Schubert varieties.
//!
//! The crate covers the permutation combinatorics (diagrams, essential sets,
//! the `P`/`C` descents), sparse exact polynomials with term orders, a
//! Buchberger engine, Schubert determinantal ideals, geometric vertex
//! decompositions, subword complexes and pipe dreams, set-valued tableaux,
//! Hilbert series and K-polynomials, and the poisoning criterion for
//! diagonal Groebner bases.

pub mod detideal;
pub mod error;
pub mod groebner;
pub mod gvd;
pub mod invariants;
pub mod perm;
pub mod poison;
pub mod poly;
pub mod subword;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
pub use groebner::{Budget, GroebnerBasis, Ideal};
pub use perm::{Cell, Flag, Partition, Permutation, RankArray};
pub use poly::{Monomial, Poly, TermOrder, Var};
