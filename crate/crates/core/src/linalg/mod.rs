//! Exact rational dense linear algebra.
//!
//! Every hom-object, action map, coend and end in the crate is a
//! [`Matrix`] over [`Rational`]. There is no floating point anywhere.

mod echelon;
mod matrix;
mod rational;

pub use echelon::{
    cokernel, inverse, is_injective, is_isomorphism, kernel_subspace, rank, rref, solve, Echelon,
    SubquotientPresentation,
};
pub use matrix::{Matrix, SparseVec};
pub(crate) use matrix::axpy;
pub use rational::{format_rational, int, one, parse_rational, ratio, zero, Rational};

use crate::error::Result;

pub fn mat_compose(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.compose(b)
}

pub fn mat_kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kron(b)
}

pub fn mat_direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    a.direct_sum(b)
}

pub fn mat_dual(a: &Matrix) -> Matrix {
    a.dual()
}
