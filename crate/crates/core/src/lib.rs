//! Search and verification library for translation hyperovals in semifield
//! planes of even order.
//!
//! A presemifield multiplication on GF(2^n) yields a spread set
//! C = {R_y : y in GF(2^n)} of linearized polynomials. The plane it
//! coordinatises contains a translation hyperoval exactly when some
//! GF(2)-linear map stands in a prescribed rank relation to C — either a
//! "shears-side" map f with rank(f - R_y) >= n - 1 for all y, or a
//! "non-shears-side" map g of rank n - 1 with rank(g - R_y^{-1}) >= n - 1
//! for all nonzero y. This crate provides:
//!
//! * exact GF(2^n) arithmetic with fixed default moduli ([`field`]),
//! * bit-packed GF(2) linear algebra with early-exit rank tests ([`binmat`]),
//! * linearized polynomials, Dickson matrices and determinant profiles
//!   ([`linpoly`]),
//! * presemifield specs, spread sets and machine-verified coefficient
//!   symmetries ([`semifield`]),
//! * the projective-geometry layer that certifies a found map as a
//!   translation hyperoval ([`geometry`]),
//! * the symmetry-reduced exhaustive search with checkpointing and
//!   deterministic reports ([`search`]).
//!
//! The search core runs data-parallel under the default `parallel` feature
//! (rayon); a sequential fallback is always compiled and the two produce
//! byte-identical reports.

pub mod binmat;
pub mod field;
pub mod geometry;
pub mod linpoly;
pub mod search;
pub mod semifield;

pub use binmat::BinaryMatrix;
pub use field::{FieldContext, FieldElement};
pub use linpoly::{DicksonMatrix, LinearizedPoly};
pub use semifield::{PresemifieldSpec, SpreadSet};
