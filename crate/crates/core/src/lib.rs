//! Multi-parameter Hecke algebras of Coxeter systems.
//!
//! The crate covers the word problem for Coxeter groups, exact and floating
//! point arithmetic in the Hecke algebra `C_q[W]`, truncated matrix models of
//! the regular and Fock representations, the creation/diagonal/annihilation
//! decomposition of reduced operators in right-angled graph products, and
//! classifiers for simplicity and nuclearity of the reduced Hecke C*-algebra.

pub mod classifier;
pub mod coxeter;
pub mod error;
pub mod fock;
pub mod hecke;
pub mod khintchine;
pub mod scalar;

pub use error::{Error, Result};

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
