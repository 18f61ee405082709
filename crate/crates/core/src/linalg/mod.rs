//! Dense complex matrices and the small dense solvers used by the checks.

mod eigen;
mod matrix;
mod svd;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::CMatrix;
pub use svd::{svd, Svd};
