//! Exact polynomial algebra for permanental ideals.
//!
//! The crate builds the ideal `P_t(X)` of `t×t` subpermanents of a generic,
//! symmetric or Hankel matrix `X` and answers questions about it with exact
//! arithmetic over the rationals or a prime field:
//!
//! * reduced Gröbner bases and normal forms ([`groebner`], [`ideal`]);
//! * colon ideals, intersections, contractions and degree slices ([`ops`]);
//! * α-invariants of colon quotients and v-numbers ([`vnum`]);
//! * replay of a corpus of known identities ([`verify`]).
//!
//! ```
//! use permv::ops::colon_poly;
//! use permv::{permanental_ideal, Ideal, Rationals, ShapeSpec};
//!
//! let shape: ShapeSpec = "hankel:2x4".parse().unwrap();
//! let i = permanental_ideal(&shape, Rationals).unwrap();
//! let f = i.ring().parse("x_2*x_4").unwrap();
//! let colon = colon_poly(&i, &f).unwrap();
//! let vars = Ideal::parse(i.ring(), "x_1, x_2, x_3, x_4, x_5").unwrap();
//! assert!(colon.equals(&vars).unwrap());
//! ```
//!
//! Everything generic over the coefficient field takes a [`Field`] value.
//! [`with_field!`] dispatches on a runtime [`FieldSpec`].

pub mod classification;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod ops;
pub mod parse;
pub mod permanental;
pub mod ring;
pub mod verify;
pub mod vnum;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use groebner::{buchberger, is_groebner_basis, GroebnerBasis, Limits, Selection};
pub use ideal::{member, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use ring::{Polynomial, Ring, Term};
pub use permanental::{build_matrix, permanental_ideal, shape_order, Family, ShapeSpec, SymbolicMatrix};
