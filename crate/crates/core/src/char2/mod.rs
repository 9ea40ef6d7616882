//! Characteristic 2: binary fields, polynomials in one variable over them and
//! Weierstrass models of elliptic K3 surfaces.

mod field;
mod poly;
mod weierstrass;

pub use field::{is_irreducible_gf2, parse_hex, BinaryField};
pub use poly::{Place, PolyGF2k};
pub use weierstrass::{
    classify_additive_normal_form, classify_by_b_invariants, normal_form_parts, t23_argument,
    wild_ramification_at, AdditiveType, NormalFormParts, PlaceClass, PlaceReport, T23Certificate,
    WeierstrassModel, WildRamification, WEIGHTS,
};
