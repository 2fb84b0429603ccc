//! Exact symbolic engine for the q-Onsager algebra, its quantum-adjoint
//! operator calculus and the Lusztig automorphism.

pub mod adjoint;
pub mod currentalg;
pub mod error;
pub mod freealg;
pub mod onsager;
pub mod qcoeff;
pub mod repn;
pub mod report;
pub mod rewrite;

pub use error::{Error, Result};
