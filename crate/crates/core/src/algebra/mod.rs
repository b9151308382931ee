//! Exact scalar arithmetic and exact matrix rank.

mod cyclotomic;
mod matrix;
mod rational;

pub use cyclotomic::{cyc_normalize, cyclotomic_polynomial, CyclotomicNumber, Poly};
pub use matrix::{
    bareiss_rank, in_span, matrix_rank, EliminationDomain, ExactMatrix, ExactVector, Matrix,
};
pub use rational::Rational;
