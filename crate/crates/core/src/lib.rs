//! Fast and accurate solution of Bernstein–Vandermonde linear systems.
//!
//! The coefficient matrix `A` of the Lagrange interpolation problem in the
//! Bernstein basis of degree `n` is strictly totally positive whenever the
//! nodes satisfy `0 < x_1 < ... < x_{n+1} < 1`. Its inverse then admits a
//! factorization into bidiagonal factors
//!
//! ```text
//! A^{-1} = G_1 G_2 ... G_n D^{-1} F_n ... F_2 F_1
//! ```
//!
//! whose entries have closed forms in the nodes. This crate computes those
//! entries in `O(n^2)` flops without forming `A`, and applies the factors to
//! right-hand sides in another `O(n^2)`. Every subtraction in the first stage
//! acts on input data only, so the factorization is computed to high relative
//! accuracy.
//!
//! Alongside the structured solver the crate carries the baselines it is
//! compared against (dense Neville elimination and partial-pivoting LU), an
//! exact rational reference, and the conditioning tools (one-sided Jacobi SVD,
//! Chan–Foulser number) used to study accuracy.
//!
//! # Indexing
//!
//! All public indices are 0-based. Row `i` of a Bernstein–Vandermonde matrix
//! belongs to node `x_{i+1}` in 1-based notation and column `j` holds the basis
//! function `b_j^{(n)}`. A multiplier written `m_{i,j}` in 1-based notation is
//! `lower(i - 1, j - 1)` here.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bernstein;
pub mod elimination;
mod error;
pub mod exact;
pub mod experiments;
mod factorization;
mod linalg;
mod nodes;
pub mod solve;
pub mod structured;
mod wide;

pub use error::{Error, Result};
pub use factorization::BidiagonalFactorization;
pub use linalg::{DenseMatrix, Vector};
pub use nodes::NodeSet;
pub use solve::{condition_inf, inverse, solve, solve_dual};
pub use structured::{factorize, factorize_dual};
