//! Exact computations in the adjoint representation of the split Lie algebra
//! of type E8 over the integers, and Galois-group certification for the
//! characteristic polynomials that arise.
//!
//! The pipeline runs root system → Chevalley basis → group element
//! `Ad(g)` → characteristic polynomial `det(T − Ad(g))` → strip `(T − 1)^8`
//! → factorization patterns modulo primes → Weyl-group cycle types →
//! certificate.

pub mod certify;
pub mod chevalley;
pub mod error;
pub mod exactpoly;
pub mod groupelem;
pub mod matrix;
pub mod rootsystem;
pub mod weyl;
pub mod zp;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/chevalley.md")]
    mod chevalley {}
    #[doc = include_str!("../../../book/src/element.md")]
    mod element {}
    #[doc = include_str!("../../../book/src/charpoly.md")]
    mod charpoly {}
    #[doc = include_str!("../../../book/src/galois.md")]
    mod galois {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/walks.md")]
    mod walks {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
