//! Chromatic nonsymmetric polynomials of Dyck graphs.
//!
//! The crate computes the descent-weighted generating function of restricted
//! proper colorings of a Dyck graph (built from a partial Dyck path) two ways:
//! by direct enumeration of colorings, and as a sum of fundamental slide
//! polynomials indexed by reduced weak descent compositions of permutations.
//! Around that core it provides the stable (nonpositive color) truncations,
//! the fundamental quasisymmetric expansion, key polynomials and a search for
//! non-key-positive instances.
//!
//! Everything is exact: coefficients are arbitrary precision integers and all
//! identities are checked on finite variable windows.

pub mod chromatic;
pub mod cli;
pub mod compositions;
pub mod dyck;
pub mod error;
pub mod keys;
pub mod partitions;
pub mod perm;
pub mod polynomial;
pub mod slide;

pub use compositions::{StrongComposition, WeakComposition, Window};
pub use dyck::{DyckGraph, PartialDyckPath, RestrictionMap};
pub use error::{Error, Result};
pub use polynomial::{TCoefficient, TPolynomial};
pub use slide::SlideExpansion;
