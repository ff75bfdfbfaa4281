use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::arith;
use crate::error::{Error, Result};

/// A prime modulus `q >= 3` together with its least primitive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeModulus {
    q: u64,
    g: u64,
}

impl PrimeModulus {
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 {
            arith::check_prime(q)?;
            return Err(Error::ModulusTooSmall(q));
        }
        let g = arith::primitive_root(q)?;
        Ok(Self { q, g })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn phi(&self) -> u64 {
        self.q - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    All,
}

/// Every Dirichlet character modulo a prime, backed by a discrete-log table.
///
/// Immutable after construction; shareable across threads.
#[derive(Debug)]
pub struct CharacterTable {
    modulus: PrimeModulus,
    /// `dlog[a]` is `k` with `g^k = a (mod q)`; `dlog[0]` is unused.
    dlog: Vec<u32>,
    /// `e(k/(q-1))` for `k in 0..q-1`.
    char_roots: Vec<Complex64>,
    /// `e(a/q)` for `a in 0..q`.
    add_roots: Vec<Complex64>,
    gauss: OnceLock<Vec<Complex64>>,
}

fn unit_roots(n: u64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
        .collect()
}

impl CharacterTable {
    pub fn new(q: u64) -> Result<Self> {
        let modulus = PrimeModulus::new(q)?;
        let mut dlog = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for k in 0..q - 1 {
            dlog[x as usize] = k as u32;
            x = x * modulus.g % q;
        }
        Ok(Self {
            modulus,
            dlog,
            char_roots: unit_roots(q - 1),
            add_roots: unit_roots(q),
            gauss: OnceLock::new(),
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn q(&self) -> u64 {
        self.modulus.q
    }

    pub fn phi(&self) -> u64 {
        self.modulus.phi()
    }

    /// Reduces an arbitrary integer into `0..q`.
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.q() as i64) as u64
    }

    /// Discrete log of `a`, or `None` when `q | a`.
    pub fn dlog(&self, a: i64) -> Option<u32> {
        match self.reduce(a) {
            0 => None,
            r => Some(self.dlog[r as usize]),
        }
    }

    /// `e(a/q)`.
    pub fn e_q(&self, a: i64) -> Complex64 {
        self.add_roots[self.reduce(a) as usize]
    }

    /// `e(k/(q-1))`.
    pub(crate) fn char_root(&self, k: u64) -> Complex64 {
        self.char_roots[(k % self.phi()) as usize]
    }

    pub fn character(&self, index: usize) -> Character<'_> {
        assert!(
            (index as u64) < self.phi(),
            "character index {index} out of range mod {}",
            self.q()
        );
        Character { table: self, index }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> {
        (0..self.phi() as usize).map(move |j| self.character(j))
    }

    /// Indices `j` of the characters matching the parity and primitivity filters.
    pub fn enumerate(&self, parity: Parity, primitive_only: bool) -> Vec<usize> {
        self.characters()
            .filter(|c| !primitive_only || c.is_primitive())
            .filter(|c| match parity {
                Parity::Even => c.is_even(),
                Parity::Odd => !c.is_even(),
                Parity::All => true,
            })
            .map(|c| c.index())
            .collect()
    }

    /// Gauss sums of every character, indexed like the characters.
    pub fn gauss_sums(&self) -> &[Complex64] {
        self.gauss.get_or_init(|| {
            self.characters()
                .map(|chi| super::gauss::gauss_sum_direct(&chi))
                .collect()
        })
    }

    /// `S(a, b; q)` from the additive root table.
    pub fn kloosterman(&self, a: i64, b: i64) -> f64 {
        let q = self.q() as i64;
        let (a, b) = (a.rem_euclid(q), b.rem_euclid(q));
        (1..q)
            .map(|x| {
                let xinv = arith::inv_mod(x, q).expect("unit mod prime");
                self.e_q((a * x + b * xinv) % q).re
            })
            .sum()
    }
}

/// One character `chi_j` of a [`CharacterTable`].
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    table: &'a CharacterTable,
    index: usize,
}

impl<'a> Character<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    /// `chi(n)`, zero when `q | n`.
    pub fn value(&self, n: i64) -> Complex64 {
        match self.table.dlog(n) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => self.table.char_root(self.index as u64 * k as u64),
        }
    }

    /// `chi` on the residue classes `0..q`, handy for bucketed sums.
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.table.q() as i64).map(|a| self.value(a)).collect()
    }

    pub fn conj(&self) -> Character<'a> {
        let phi = self.table.phi() as usize;
        self.table.character((phi - self.index) % phi)
    }

    /// `chi(-1) = e(j/2)`, so `chi_j` is even exactly when `j` is even.
    pub fn is_even(&self) -> bool {
        self.index % 2 == 0
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// Modulo a prime every non-principal character is primitive.
    pub fn is_primitive(&self) -> bool {
        !self.is_principal()
    }

    pub fn gauss_sum(&self) -> Complex64 {
        self.table.gauss_sums()[self.index]
    }
}
