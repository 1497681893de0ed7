//! The chapters of `book/` as modules, so `cargo test --doc` runs every
//! listing against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/groebner.md")]
pub mod groebner {}

#[doc = include_str!("../../../book/src/ideal-ops.md")]
pub mod ideal_ops {}

#[doc = include_str!("../../../book/src/permanental.md")]
pub mod permanental {}

#[doc = include_str!("../../../book/src/vnumbers.md")]
pub mod vnumbers {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
