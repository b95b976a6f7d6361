//! W-function orthonormal systems and their differentiation matrices.
//!
//! A W-function is φ_n = √w · p_n where p_n are the orthonormal polynomials
//! of a weight w. The crate covers four weights (Laguerre, ultraspherical,
//! generalized Hermite, Konoplev), the skew-symmetric matrix
//! D_{m,n} = ∫ φ′_m φ_n dx, its separable structure and linear-time products,
//! and the convergence experiments built on top.

pub mod diffmatrix;
pub mod error;
pub mod expansion;
pub mod fastops;
pub mod io;
pub mod orthopoly;
pub mod special;
pub mod weights;
pub mod wfunctions;

pub use error::{Error, Result};
pub use weights::{FamilyKind, WeightFamily};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/wfunctions.md")]
    mod wfunctions {}
    #[doc = include_str!("../../../book/src/diffmatrix.md")]
    mod diffmatrix {}
    #[doc = include_str!("../../../book/src/fastops.md")]
    mod fastops {}
    #[doc = include_str!("../../../book/src/expansions.md")]
    mod expansions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
