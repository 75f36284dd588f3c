//! Exact-arithmetic machinery for classifying primitive integer solutions
//! of `x^2 + y^3 = z^10`.
//!
//! Everything here is computed over exact big integers and rationals; no
//! floating point appears anywhere. The crate is `no_std` (with `alloc`)
//! so the algorithmic core stays free of IO; serialization and the CLI
//! live in the companion `decic` crate.
//!
//! Module map:
//! - [`arith`]: integers, rationals, dense univariate polynomials over a
//!   generic field, number fields and staged extensions, projective points
//!   and rational self-maps of the line.
//! - [`modp`]: univariate polynomial factorization over prime fields.
//! - [`padic`]: Newton polygons, Hensel lifting and p-adic value-class
//!   computation by residue-disc subdivision.
//! - [`elliptic`]: short Weierstrass models, invariants, the group law,
//!   rational torsion, quadratic twists and 2-isogenies.
//! - [`modular`]: the explicit X0(5) j-map, twist covers of the j-line and
//!   related model data.
//! - [`obstruction`]: p-adic images of the j-invariant map on primitive
//!   triples and the local intersection test.
//! - [`numfield`]: Dedekind's criterion, quadratic field enumeration and
//!   splitting fingerprints.
//! - [`search`]: exhaustive searches for primitive triples and small
//!   rational points on genus-2 curves.
//! - [`moebius`]: Moebius transformations, three-point interpolation and
//!   Galois descent of rational maps.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod elliptic;
pub mod modp;
pub mod modular;
pub mod moebius;
pub mod numfield;
pub mod obstruction;
pub mod padic;
pub mod search;

pub use arith::{Field, Int, Poly, Rat, UniPoly};
