//! Exact decision procedure for (σx, σy)-summability of bivariate rational
//! functions over Q.
//!
//! A rational function `f(x, y)` is summable when `f = Δx g + Δy h` for
//! rational `g`, `h`, where `Δx g = g(x + 1, y) - g(x, y)` and likewise for
//! `y`. [`decide::decide`] answers the question and, for summable input,
//! returns a certificate `(g, h)` that has already been checked by exact
//! substitution.

pub mod bpoly;
pub mod decide;
pub mod dispersion;
pub mod error;
pub mod expr;
pub mod factor;
pub mod gcd;
pub mod kernel;
pub mod linalg;
pub mod poly;
pub mod qx;
pub mod rat;
pub mod ratfunc;
pub mod reduction;
pub mod residues;
pub mod ring;
pub mod upoly;

pub use bpoly::{BPoly, Mono, Var};
pub use error::{Error, Result};
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use upoly::{UFrac, UPoly};
