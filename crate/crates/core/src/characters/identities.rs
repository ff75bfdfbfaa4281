use num_complex::Complex64;

use super::table::CharacterTable;
use super::{Parity, Sign};
use crate::arith;
use crate::error::{Error, Result};
use crate::sum::csum;

/// Both sides of a character-sum identity.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IdentityCheck {
    pub direct: Complex64,
    pub closed: Complex64,
}

impl IdentityCheck {
    pub fn gap(&self) -> f64 {
        (self.direct - self.closed).norm()
    }
}

fn require_coprime(t: &CharacterTable, m: u64, n: u64) -> Result<()> {
    let q = t.q();
    if m % q == 0 || n % q == 0 {
        return Err(Error::NotCoprime { m, n, q });
    }
    Ok(())
}

fn even_primitive_sum(t: &CharacterTable, f: impl Fn(usize) -> Complex64) -> Complex64 {
    csum(t.enumerate(Parity::Even, true).into_iter().map(f))
}

fn all_primitive_sum(t: &CharacterTable, f: impl Fn(usize) -> Complex64) -> Complex64 {
    csum(t.enumerate(Parity::All, true).into_iter().map(f))
}

/// Closed forms on residue classes, shared with the moment engine.
///
/// Every function assumes its residues are units mod `q`.
pub mod closed {
    use super::*;

    /// `sum over even primitive chi of conj chi(m) chi(n)`.
    pub fn orthogonality(t: &CharacterTable, m: i64, n: i64) -> f64 {
        let phi = t.phi() as f64;
        let (m, n) = (t.reduce(m), t.reduce(n));
        Sign::BOTH
            .iter()
            .map(|&s| {
                let hit = t.reduce(s.apply(n as i64)) == m;
                if hit {
                    phi - 1.0
                } else {
                    -1.0
                }
            })
            .sum::<f64>()
            / 2.0
    }

    /// `sum over all primitive chi of chi(a) tau(conj chi) = phi e(a/q) + 1`.
    pub fn gauss_twisted(t: &CharacterTable, a: i64) -> Complex64 {
        t.e_q(a) * t.phi() as f64 + 1.0
    }

    /// `sum over all primitive chi of chi(a) tau(chi) = phi e(conj a/q) + 1`.
    pub fn inverse_twisted(t: &CharacterTable, a: i64) -> Complex64 {
        let q = t.q() as i64;
        let ainv = arith::inv_mod(a, q).expect("unit residue");
        t.e_q(ainv) * t.phi() as f64 + 1.0
    }

    /// `sum over even primitive chi of conj chi(mn) tau(chi)^2`.
    pub fn gauss_square(t: &CharacterTable, mn: i64) -> f64 {
        let phi = t.phi() as f64;
        0.5 * phi * (t.kloosterman(1, mn) + t.kloosterman(1, -mn)) - 1.0
    }
}

/// `sum over even primitive chi of chi(n) conj chi(m)` against
/// `1/2 sum_± [phi 1_{m = ±n} - 1]`.
pub fn orthogonality_sum(t: &CharacterTable, m: u64, n: u64) -> Result<IdentityCheck> {
    require_coprime(t, m, n)?;
    let (m, n) = (m as i64, n as i64);
    let direct = even_primitive_sum(t, |j| {
        let chi = t.character(j);
        chi.value(n) * chi.value(m).conj()
    });
    Ok(IdentityCheck {
        direct,
        closed: closed::orthogonality(t, m, n).into(),
    })
}

/// `sum over all primitive chi of chi(±mn) tau(conj chi)` against
/// `phi e(±mn/q) + 1`.
pub fn gauss_twisted_sum(t: &CharacterTable, m: u64, n: u64, sign: Sign) -> Result<IdentityCheck> {
    require_coprime(t, m, n)?;
    let a = sign.apply(arith::mul_mod(m, n, t.q()) as i64);
    let direct = all_primitive_sum(t, |j| {
        let chi = t.character(j);
        chi.value(a) * chi.conj().gauss_sum()
    });
    Ok(IdentityCheck {
        direct,
        closed: closed::gauss_twisted(t, a),
    })
}

/// `sum over all primitive chi of chi(±m conj n) tau(chi)` against
/// `phi e(±n conj m/q) + 1`.
pub fn inverse_twisted_sum(
    t: &CharacterTable,
    m: u64,
    n: u64,
    sign: Sign,
) -> Result<IdentityCheck> {
    require_coprime(t, m, n)?;
    let q = t.q();
    let ninv = arith::inv_mod(n as i64, q as i64).expect("unit") as u64;
    let a = sign.apply(arith::mul_mod(m, ninv, q) as i64);
    let direct = all_primitive_sum(t, |j| {
        let chi = t.character(j);
        chi.value(a) * chi.gauss_sum()
    });
    Ok(IdentityCheck {
        direct,
        closed: closed::inverse_twisted(t, a),
    })
}

/// `sum over even primitive chi of conj chi(mn) tau(chi)^2` against
/// `1/2 phi sum_± S(1, ±mn; q) - 1`.
pub fn gauss_square_identity(t: &CharacterTable, m: u64, n: u64) -> Result<IdentityCheck> {
    require_coprime(t, m, n)?;
    let mn = arith::mul_mod(m, n, t.q()) as i64;
    let direct = even_primitive_sum(t, |j| {
        let chi = t.character(j);
        let g = chi.gauss_sum();
        chi.value(mn).conj() * g * g
    });
    Ok(IdentityCheck {
        direct,
        closed: closed::gauss_square(t, mn).into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn e(x: f64) -> Complex64 {
        Complex64::from_polar(1.0, TAU * x)
    }

    fn table(q: u64) -> CharacterTable {
        CharacterTable::new(q).unwrap()
    }

    #[test]
    fn orthogonality_examples() {
        let t = table(7);
        for (m, n, want) in [(2, 2, 2.0), (2, 5, 2.0), (2, 3, -1.0)] {
            let c = orthogonality_sum(&t, m, n).unwrap();
            assert!((c.closed - want).norm() < 1e-14);
            assert!((c.direct - want).norm() < 1e-12);
        }
    }

    #[test]
    fn gauss_twisted_examples() {
        let c = gauss_twisted_sum(&table(5), 1, 1, Sign::Plus).unwrap();
        assert!((c.closed - (e(0.2) * 4.0 + 1.0)).norm() < 1e-13);
        assert!(c.gap() < 1e-10);
        let c = gauss_twisted_sum(&table(5), 2, 3, Sign::Plus).unwrap();
        assert!((c.closed - (e(0.2) * 4.0 + 1.0)).norm() < 1e-13);
        assert!(c.gap() < 1e-10);
        let c = gauss_twisted_sum(&table(7), 1, 1, Sign::Minus).unwrap();
        assert!((c.closed - (e(-1.0 / 7.0) * 6.0 + 1.0)).norm() < 1e-13);
        assert!(c.gap() < 1e-10);
    }

    #[test]
    fn inverse_twisted_examples() {
        let c = inverse_twisted_sum(&table(5), 2, 1, Sign::Plus).unwrap();
        assert!((c.closed - (e(0.6) * 4.0 + 1.0)).norm() < 1e-13);
        assert!(c.gap() < 1e-10);
        let c = inverse_twisted_sum(&table(5), 1, 1, Sign::Plus).unwrap();
        assert!((c.closed - (e(0.2) * 4.0 + 1.0)).norm() < 1e-13);
        let c = inverse_twisted_sum(&table(7), 3, 2, Sign::Minus).unwrap();
        assert!((c.closed - (e(4.0 / 7.0) * 6.0 + 1.0)).norm() < 1e-13);
        assert!(c.gap() < 1e-10);
    }

    #[test]
    fn gauss_square_examples() {
        let t = table(5);
        let c = gauss_square_identity(&t, 1, 1).unwrap();
        let want = 2.0 * (t.kloosterman(1, 1) + t.kloosterman(1, -1)) - 1.0;
        assert!((c.closed - want).norm() < 1e-13);
        assert!(c.gap() < 1e-9);
        assert!(gauss_square_identity(&table(11), 2, 3).unwrap().gap() < 1e-9);
        assert!(gauss_square_identity(&table(7), 1, 6).unwrap().gap() < 1e-9);
    }

    #[test]
    fn coprimality_is_enforced() {
        let t = table(7);
        assert!(matches!(
            orthogonality_sum(&t, 7, 1),
            Err(Error::NotCoprime { .. })
        ));
        assert!(gauss_twisted_sum(&t, 1, 14, Sign::Plus).is_err());
        assert!(inverse_twisted_sum(&t, 21, 1, Sign::Minus).is_err());
        assert!(gauss_square_identity(&t, 1, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn all_identities_hold(
            qi in 0usize..25,
            m in 1u64..10_000,
            n in 1u64..10_000,
        ) {
            let primes: Vec<u64> = (3..=101).filter(|&q| arith::is_prime(q)).collect();
            let q = primes[qi % primes.len()];
            prop_assume!(m % q != 0 && n % q != 0);
            let t = table(q);
            prop_assert!(orthogonality_sum(&t, m, n).unwrap().gap() <= 1e-9);
            prop_assert!(gauss_square_identity(&t, m, n).unwrap().gap() <= 1e-9);
            for s in Sign::BOTH {
                prop_assert!(gauss_twisted_sum(&t, m, n, s).unwrap().gap() <= 1e-9);
                prop_assert!(inverse_twisted_sum(&t, m, n, s).unwrap().gap() <= 1e-9);
            }
        }
    }
}
