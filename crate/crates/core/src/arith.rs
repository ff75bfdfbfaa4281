//! Small-integer modular arithmetic.

use crate::error::{Error, Result};

/// Smallest prime factor of `n` (for `n >= 2`), by trial division.
pub fn smallest_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

/// Rejects composites with the smallest factor as witness.
pub fn check_prime(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::NotPrime { n, witness: n });
    }
    let w = smallest_factor(n);
    if w != n {
        return Err(Error::NotPrime { n, witness: w });
    }
    Ok(())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_factor(n);
        out.push(p);
        while n % p == 0 {
            n /= p;
        }
    }
    out
}

/// Least primitive root of the prime `q`, found by ascending search.
pub fn primitive_root(q: u64) -> Result<u64> {
    check_prime(q)?;
    if q < 3 {
        return Err(Error::ModulusTooSmall(q));
    }
    let phi = q - 1;
    let factors = prime_divisors(phi);
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, phi / p, q) != 1))
        .ok_or_else(|| Error::Validation(format!("no primitive root found mod {q}")))
}

/// Number of divisors of `n`.
pub fn divisor_count(mut n: u64) -> u64 {
    let mut count = 1;
    while n > 1 {
        let p = smallest_factor(n);
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        count *= e + 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: u64, q: u64) -> u64 {
        let mut x = g % q;
        let mut k = 1;
        while x != 1 {
            x = x * g % q;
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_roots_match_exhaustive_order_search() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 101] {
            let brute = (2..q).find(|&g| order(g, q) == q - 1).unwrap();
            assert_eq!(primitive_root(q).unwrap(), brute, "q = {q}");
        }
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(3).unwrap(), 2);
    }

    #[test]
    fn composite_rejected_with_witness() {
        match primitive_root(91) {
            Err(Error::NotPrime { n: 91, witness: 7 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(primitive_root(2), Err(Error::ModulusTooSmall(2))));
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(-1, 7), Some(6));
        assert_eq!(inv_mod(4, 6), None);
        assert_eq!(inv_mod(2, 9), Some(5));
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(97), 2);
    }
}
