//! Dense complex matrices, a Jacobi Hermitian eigensolver, matrix functions,
//! norms and class predicates.

mod class;
mod eigen;
mod interval;
mod matrix;
mod tridiag;

pub use class::{classify, default_class_tol, ClassSet, OperatorClass};
pub use eigen::{
    abs_value, eigen_enclosure, eigen_pad, hermitian_eigen, lambda_max, lambda_min, op_norm,
    psd_sqrt, HermitianEigen, MAX_SWEEPS, OFF_DIAGONAL_TOL, PAD_HALF_WIDTH,
};
pub use tridiag::{hermitian_eigenvalues, top_eigenpair};
pub use interval::Interval;
pub use matrix::{inner, vec_norm, ComplexMatrix, C64};
