use num_complex::Complex64;

use super::MomentTables;
use crate::arith;
use crate::characters::{closed, CharacterTable, Sign};
use crate::error::Result;
use crate::sum::{csum, ComplexSum};

/// Sub-terms of the diagonal cross term.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Diagnostics {
    /// `sum_± sum_{(m,q)=1} conj(c_m) sum_{n = ±m (q)} a_n`.
    pub s11: Complex64,
    /// The `n = m` part of `s11`; approximates `L(2 sigma0, f)`.
    pub s11_diagonal: Complex64,
    /// `s11` without its `n = m` part.
    pub s11_off_diagonal: Complex64,
    /// `sum_{(m,q)=1} conj(c_m) sum_{(n,q)=1} a_n`.
    pub s12: Complex64,
}

/// The four cross terms of the AFE product summed over characters through
/// closed forms, with no character enumerated.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClosedForm {
    pub s1: Complex64,
    pub s2: Complex64,
    pub s3: Complex64,
    pub s4: Complex64,
    pub diagnostics: Diagnostics,
}

impl ClosedForm {
    pub fn total(&self) -> Complex64 {
        csum([self.s1, self.s2, self.s3, self.s4])
    }
}

/// `out[r] = sum_{n = r (q)} terms[n-1]`, optionally conjugated; `out[0]`
/// (multiples of `q`) is left at zero because every kernel vanishes there.
fn buckets(terms: &[Complex64], q: u64, conj: bool) -> Vec<Complex64> {
    let mut acc = vec![ComplexSum::new(); q as usize];
    for (i, &t) in terms.iter().enumerate() {
        let r = (i as u64 + 1) % q;
        if r != 0 {
            acc[r as usize].add(if conj { t.conj() } else { t });
        }
    }
    acc.iter().map(ComplexSum::value).collect()
}

/// `sum_{r, s units} x[r] y[s] k(r, s)` in a fixed order.
fn pair_sum(x: &[Complex64], y: &[Complex64], k: impl Fn(u64, u64) -> Complex64) -> Complex64 {
    let q = x.len() as u64;
    let mut acc = ComplexSum::new();
    for r in 1..q {
        for s in 1..q {
            acc.add(x[r as usize] * y[s as usize] * k(r, s));
        }
    }
    acc.value()
}

/// `k[a]` for every residue `a`, with `k[0] = 0`.
fn residue_kernel(t: &CharacterTable, k: impl Fn(i64) -> Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); t.q() as usize];
    for a in 1..t.q() {
        out[a as usize] = k(a as i64);
    }
    out
}

/// Even part `1/2 sum_± k(±a)` of a kernel over all primitive characters.
fn even_part(k: impl Fn(i64) -> Complex64) -> impl Fn(i64) -> Complex64 {
    move |a| Sign::BOTH.iter().map(|s| k(s.apply(a))).sum::<Complex64>() * 0.5
}

/// The cross terms of `sum_chi L(s0, f x chi) conj L(s0, chi)` from the AFE
/// tables, with the character sums replaced by orthogonality, the twisted
/// Gauss sum, the inverse twist (after `tau(conj chi) tau(chi)^2 = q tau(chi)`)
/// and the Kloosterman evaluation of `sum conj chi(mn) tau(chi)^2`.
pub fn s_terms_closed_form(tables: &MomentTables) -> Result<ClosedForm> {
    let t = &tables.table;
    let q = t.q();
    let phi = t.phi() as f64;
    let (dir, tw) = (&tables.dirichlet, &tables.twisted);

    let c = buckets(dir.first_terms(), q, true);
    let d = buckets(dir.dual_terms(), q, true);
    let a = buckets(tw.first_terms(), q, false);
    let b = buckets(tw.dual_terms(), q, false);

    let k2 = residue_kernel(t, even_part(|x| closed::gauss_twisted(t, x)));
    let k3 = residue_kernel(t, even_part(|x| closed::inverse_twisted(t, x)));
    let k4 = residue_kernel(t, |x| closed::gauss_square(t, x).into());
    let mul = |r: u64, s: u64| arith::mul_mod(r, s, q) as usize;
    let inv = |s: u64| arith::inv_mod(s as i64, q as i64).expect("unit residue") as u64;

    let s1 = pair_sum(&c, &a, |r, s| closed::orthogonality(t, r as i64, s as i64).into());
    let s2 = dir.root().conj() * pair_sum(&d, &a, |r, s| k2[mul(r, s)]);
    let s3 = dir.root().conj()
        * tw.root()
        * q as f64
        * pair_sum(&d, &b, |r, s| k3[mul(r, inv(s))]);
    let s4 = tw.root() * pair_sum(&c, &b, |r, s| k4[mul(r, s)]);

    let s11 = csum((1..q).flat_map(|r| {
        let (c, a) = (&c, &a);
        Sign::BOTH
            .into_iter()
            .map(move |sg| c[r as usize] * a[t.reduce(sg.apply(r as i64)) as usize])
    }));
    let s12 = csum(c.iter().copied()) * csum(a.iter().copied());
    let n = dir.first_terms().len().min(tw.first_terms().len());
    let s11_diagonal = csum(
        (1..=n)
            .filter(|&k| k as u64 % q != 0)
            .map(|k| dir.first_terms()[k - 1].conj() * tw.first_terms()[k - 1]),
    );
    debug_assert!((s1 - (s11 * (phi / 2.0) - s12)).norm() <= 1e-9 * (1.0 + s1.norm()));
    Ok(ClosedForm {
        s1,
        s2,
        s3,
        s4,
        diagnostics: Diagnostics {
            s11,
            s11_diagonal,
            s11_off_diagonal: s11 - s11_diagonal,
            s12,
        },
    })
}
