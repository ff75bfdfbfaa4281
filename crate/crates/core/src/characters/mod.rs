//! Dirichlet characters modulo a prime, Gauss and Kloosterman sums, and the
//! closed-form evaluations of the character sums that appear when a product
//! of two approximate functional equations is averaged over even primitive
//! characters.
//!
//! Characters are indexed by `j in 0..q-1` through a discrete-log table for
//! the least primitive root `g`: `chi_j(g^k) = e(jk/(q-1))`. All values are
//! read from precomputed root-of-unity tables.

mod gauss;
mod identities;
mod table;

pub use gauss::{gauss_product_identity, gauss_sum, kloosterman};
pub use identities::closed;
pub use identities::{
    gauss_square_identity, gauss_twisted_sum, inverse_twisted_sum, orthogonality_sum, IdentityCheck,
};
pub use table::{Character, CharacterTable, Parity, PrimeModulus};

/// Sign choice in the `±` sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn apply(self, x: i64) -> i64 {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}
