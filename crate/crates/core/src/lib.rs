//! Word-indexed metabelian algebras.
//!
//! The one-generator algebra `A` in which every product containing two
//! copies of `a^2` vanishes has a basis `a, a^2 u(L_a, R_a)` indexed by binary
//! words `u`. Quotienting by the words that are not factors of a periodic or
//! Sturmian word gives algebras whose codimension sequences grow linearly or
//! quadratically. This crate builds those algebras exactly and computes
//! their codimensions, cocharacter multiplicities and growth.

pub mod algebra;
pub mod codim;
pub mod error;
pub mod variety;
pub mod words;

pub use error::{Error, Result};
