//! Exact symbolic linear representations of virtual and welded braid
//! groups, and of their pure (basis-conjugating) subgroups.
//!
//! Everything is computed over exact rings: multivariate Laurent
//! polynomials with integer coefficients, and group algebras whose elements
//! are finite sums of canonical group elements with Laurent coefficients.
//! Group elements are canonicalized through their action on a free group,
//! which is faithful for the welded family, so every equality decided here
//! is a theorem, not a numerical observation.
//!
//! Module layering, bottom up:
//!
//! - [`words`]: signed generator words, free reduction, free-group
//!   automorphisms, and the conjugation-permutation action of braid-like
//!   generators.
//! - [`presentations`]: relator catalogs for the braid, symmetric, virtual,
//!   welded, twin, and pure welded families, the basis-conjugating words
//!   ξ_{i,j}, and the projection to the symmetric group.
//! - [`laurent`]: sparse exact Laurent-polynomial arithmetic in the
//!   parameters `a`, `b`, and leveled families `t`, `s`, `t[r]`.
//! - [`galgebra`]: canonical group-algebra elements and dense matrices over
//!   them, with the augmentation maps that turn symbolic matrices into
//!   Laurent ones.
//! - [`fox`]: free differential calculus and the derivative action on the
//!   relative augmentation ideal, used as an independent oracle.
//! - [`burau`]: the deformed permutation-style matrices of the virtual
//!   family over the welded group algebra, plus their evaluated forms.
//! - [`gassner`]: closed-form matrices for basis-conjugating generators,
//!   their evaluated forms, and the iterated block construction.
//! - [`verify`]: the relator-verification engine with substitution
//!   analysis.
//! - [`cli`]: the command-line front end.

pub mod burau;
pub mod cli;
pub mod error;
pub mod fox;
pub mod galgebra;
pub mod gassner;
pub mod laurent;
pub mod presentations;
pub mod verify;
pub mod words;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
