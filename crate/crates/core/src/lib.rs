//! Exact computation in the quasi-split special unitary group
//! `G = SU_2n(L, h)` of a quadratic extension `L = Q(√d)`, with points in
//! finite products of truncated polynomial algebras.
//!
//! The crate covers the root subgroups `X_α` and their Chevalley commutator
//! constants, the Steinberg group as a word algebra with its evaluation map
//! to matrices, and constructive decompositions of group elements into root
//! elements (including congruence levels and the Levi splitting).

pub mod algebra;
pub mod constants;
pub mod decomposition;
pub mod error;
pub mod group;
pub mod random;
pub mod roots;
pub mod steinberg;
pub mod verify;

pub use algebra::{
    AlgebraElement, AlgebraSpec, QuadElement, RadicalLevel, Rational, Sign, SpecRef,
};
pub use error::{Error, Result};
pub use group::{Coord, GroupElement, Matrix};
pub use roots::{ChainTerm, Root};
pub use steinberg::{SteinbergWord, Symbol};
