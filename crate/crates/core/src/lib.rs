//! Exact computations with Weil characters, class fusion and restriction
//! tests for the symplectic groups Sp_{2n}(q), q even, at enumerable sizes.

pub mod chartab;
pub mod classify;
pub mod error;
pub mod field;
pub mod fusion;
pub mod grp;
pub mod qpoly;
pub mod weil;

pub use error::{Error, Result};
