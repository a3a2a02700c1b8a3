//! Exact enumeration of discrete excursions and meanders of bounded height.
//!
//! For a finite step set `S` with formal weights, the generating function of
//! excursions of height at most `k` is `F_k / F_{k+1}` where `F_k` is the
//! determinant of the band matrix `1 - A_{k-1}`. This crate computes those
//! polynomials two ways (determinants and a transfer matrix on `a`-subsets),
//! derives the rational generating functions `N(z)/D(z)` of the sequence
//! `F_k` and its meander analogues, handles the factorisation that occurs for
//! symmetric step sets, and checks all of it against brute-force path
//! counting.
//!
//! Module map:
//! - [`ring`]: sparse integer polynomials, series, gcd.
//! - [`model`]: step sets, `β_s`, band matrices.
//! - [`linalg`]: fraction-free determinants and cofactors.
//! - [`transfer`]: subsets, the transfer matrix `T`, `D(z)`, `N(z)`.
//! - [`meander`]: the shifted system `T̃`, `U`, `F_{k,ℓ}`, `D̃`, `Ñ`.
//! - [`symmetric`]: `F_k^±` and the folded identities.
//! - [`oracle`]: dynamic-programming counts and permutation sums.
//! - [`cli`]: the batch front end.

pub mod cli;
pub mod linalg;
pub mod meander;
pub mod model;
pub mod oracle;
pub mod ring;
pub mod symmetric;
pub mod transfer;

pub use linalg::PolyMatrix;
pub use model::StepModel;
pub use ring::{MPoly, VarName};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] ring::RingError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Transfer(#[from] transfer::TransferError),
    #[error(transparent)]
    Symmetric(#[from] symmetric::SymmetricError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}

/// Binomial coefficient as a `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
