//! Fermion-to-qubit mappings built from ternary trees.
//!
//! The adaptive construction in [`hatt`] grows the tree around a given
//! Hamiltonian; [`baselines`] has the fixed mappings it is compared against.

pub mod apply;
pub mod baselines;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod fermion;
pub mod hatt;
pub mod mapping;
pub mod pauli;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
