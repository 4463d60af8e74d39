//! Small dense complex linear algebra: matrices, Hermitian eigensolver, Haar sampling.

mod eigen;
mod matrix;
mod random;

pub use eigen::{eigh, Eigh, JACOBI_TOL};
pub use matrix::CMatrix;
pub use random::{haar_state, haar_unitary};
