//! Exact stratification of parametric polynomial systems by geometric
//! fiber count, with per-stratum univariate representations, ordered real
//! fiber sections, and projection-based stratification of single
//! polynomials.

pub mod error;
pub mod rat;
pub mod monomial;
pub mod domain;
pub mod poly;
pub mod upoly;
pub mod gcd;
pub mod ratfun;
pub mod matrix;
pub mod io;
pub mod subres;
pub mod zerodim;
pub mod rur;
pub mod parametric;
pub mod realroots;
pub mod collins;

pub use error::{Error, Result};
pub use monomial::{Ctx, Monomial, MonomialOrder};
pub use poly::{MPoly, MPolyDom};
pub use rat::Rat;
pub use ratfun::{RatFun, RatFunDom};
pub use upoly::{QPoly, UPoly};
