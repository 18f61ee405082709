//! Symbolic-numeric checks for quantum Podleś spheres.
//!
//! The crate builds the relevant *-algebras as rewriting systems ([`ncalg`]), represents them by
//! truncated banded operators ([`trunc_rep`]), and certifies identities between them numerically:
//! the Casimir splitting ([`casimir`]), the adjoint quantum group action ([`uq_action`]) and the
//! Morita chain between the spheres ([`morita`]).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the `*F64` aliases below are
//! the instantiations the CLI uses.

#![allow(clippy::needless_range_loop)]

pub mod casimir;
pub mod error;
pub mod linalg;
pub mod morita;
pub mod ncalg;
pub mod qcore;
pub mod report;
pub mod scalar;
pub mod trunc_rep;
pub mod uq_action;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type QParamsF64 = qcore::QParams<f64>;
pub type QParamsF32 = qcore::QParams<f32>;
pub type CMatrixF64 = linalg::CMatrix<f64>;
pub type CMatrixF32 = linalg::CMatrix<f32>;
pub type NCPolyF64 = ncalg::NCPoly<f64>;
pub type PresentationF64 = ncalg::Presentation<f64>;
pub type TruncatedRepF64 = trunc_rep::TruncatedRep<f64>;
pub type ImplementingRepF64 = uq_action::ImplementingRep<f64>;
pub type EigenDataF64 = casimir::EigenData<f64>;
pub type BasisChangeF64 = morita::BasisChange<f64>;
