//! Exact certification of the lattice, fibre and characteristic-2 computations
//! behind the bound of 12 singular points on non-supersingular quartic surfaces.
//!
//! The crate is split by subject:
//!
//! * [`lattice`]: ADE root lattices, roots, complements, primitive closures,
//!   discriminant groups and the extended (affine) fibre lattices.
//! * [`fiber`]: Kodaira fibre data, disjoint-curve counts on dual graphs and
//!   the wild-ramification budget enumerator.
//! * [`char2`]: binary fields, polynomials over them and Weierstrass models in
//!   characteristic 2.
//! * [`quartic`]: the explicit 12-node quartic family, its singular points and
//!   non-reduced plane sections.
//! * [`verify`]: the end-to-end checks bundled by `verify-all`.
//!
//! Everything is exact: integers, rationals and finite-field elements only.

pub mod certificate;
pub mod char2;
pub mod error;
pub mod fiber;
pub mod lattice;
pub mod quartic;
pub mod verify;

pub use certificate::Status;
pub use error::{Error, Result};
