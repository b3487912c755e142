//! Quadric model of anti-de Sitter space and the causal structure of the
//! BTZ black hole: the singularity `t² = y²`, the black hole, the free
//! region and its horizon, for AdS₃, AdS₄ and AdS₅.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ads;
pub mod ambient;
pub mod causal;
mod error;
pub mod horizon;
pub mod lie;
pub mod tol;

pub use error::Error;
