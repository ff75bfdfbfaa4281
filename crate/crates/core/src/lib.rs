//! Numerical first moment of `L(s0, f x chi) conj L(s0, chi)` over even
//! primitive Dirichlet characters modulo a prime.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod lfunc;
pub mod maass;
pub mod moment;
pub mod special;
pub mod store;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
