//! Exact combinatorics of partitioned permutohedra.
//!
//! The crate computes h-polynomials and gamma vectors of the partitioned
//! permutohedra `P_n(K)` three independent ways (gamma expansion of the
//! descent polynomial of `W(K)`, and descent counts over the tilde and hat
//! minimal coset representatives), implements the descent-preserving
//! bijection `Theta` between valley-hopping classes and `W(K)`, and carries
//! the RSK / Kostka machinery that links the same numbers to tableaux.

pub mod combinatorics;
pub mod error;
pub mod hopping;
pub mod parabolic;
pub mod poly;
pub mod tableaux;
pub mod theta;
pub mod verify;

pub use combinatorics::{Permutation, Word};
pub use error::{Error, Result};
pub use parabolic::{Bound, Composition, Filter, KSubset};
pub use poly::{GammaMethod, GammaVector, IntPolynomial};
