//! Exact computation of the Néron–Severi lattice of the superspecial
//! abelian surface `E × E` in odd characteristic, its Chern class map into
//! `H¹(A, Ω¹)` and the kernel of that map over `F_p`.

pub mod arith;
pub mod chern;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod quat;
pub mod report;

pub use error::{Error, Result};
