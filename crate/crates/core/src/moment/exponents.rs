//! Exponent bookkeeping for the error terms: the dominance threshold
//! `M(sigma0)`, the balancing parameters `beta1, beta2`, the quadratic that
//! compares the last error term with its predecessor, and the q- and
//! tau-exponents of the four error terms.
//!
//! Every formula is written once over [`Field`] and evaluated both in `f64`
//! and exactly in rationals.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational arithmetic for the closed-form constants.
pub type Rational = Ratio<i128>;

/// Admissible Ramanujan exponent `7/64`.
pub const THETA: f64 = 7.0 / 64.0;

pub trait Field:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn int(n: i64) -> Self;
    fn frac(n: i64, d: i64) -> Self {
        Self::int(n) / Self::int(d)
    }
}

impl Field for f64 {
    fn int(n: i64) -> Self {
        n as f64
    }
}

impl Field for Rational {
    fn int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }
}

fn exact_theta() -> Rational {
    Rational::new(7, 64)
}

fn check_range<F: Field>(sigma0: F, theta: F) -> Result<()> {
    let ok = sigma0 >= F::frac(1, 2) && sigma0 < F::int(1) && theta >= F::int(0) && theta <= F::frac(7, 64);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "need 1/2 <= sigma0 < 1 and 0 <= theta <= 7/64".into(),
        ))
    }
}

fn ratio<F: Field>(num: F, den: F, branch: usize) -> Result<F> {
    if den > F::int(0) {
        Ok(num / den)
    } else {
        Err(Error::Validation(format!("M(sigma0) branch {branch} has a non-positive denominator")))
    }
}

/// The four branches of `M(sigma0)`.
pub fn m_branches<F: Field>(sigma0: F, theta: F) -> Result<[F; 4]> {
    check_range(sigma0, theta)?;
    let (one, two, three, five) = (F::int(1), F::int(2), F::int(3), F::int(5));
    let s = sigma0;
    let inner = s * (two + two * theta + s - two * s * theta);
    Ok([
        two * (one - s),
        ratio(three - three * s + two * theta, three * s - one - two * theta, 2)?,
        ratio(one - s, s, 3)?,
        ratio(five + five * theta - inner, -one - theta + inner, 4)?,
    ])
}

fn max_of<F: Field>(xs: [F; 4]) -> F {
    xs.into_iter().fold(xs[0], |m, x| if x > m { x } else { m })
}

/// `M(sigma0)`: the main term dominates once `q >> tau^{M(sigma0)}`.
pub fn m_exponent(sigma0: f64, theta: f64) -> Result<f64> {
    Ok(max_of(m_branches(sigma0, theta)?))
}

pub fn m_exponent_exact(sigma0: Rational, theta: Rational) -> Result<Rational> {
    Ok(max_of(m_branches(sigma0, theta)?))
}

/// `beta1 = sigma0 (1 - 2 theta) / (2 (1 + theta))`,
/// `beta2 = (1 + 4 theta) / (2 (1 + theta))`, with the two balancing
/// equations they solve written as `lhs - rhs`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BetaParams<F> {
    pub beta1: F,
    pub beta2: F,
    pub balance_gaps: [F; 2],
}

fn beta_generic<F: Field>(sigma0: F, theta: F) -> Result<BetaParams<F>> {
    check_range(sigma0, theta)?;
    let (half, one, two, four) = (F::frac(1, 2), F::int(1), F::int(2), F::int(4));
    let s = sigma0;
    let beta1 = s * (one - two * theta) / (two * (one + theta));
    let beta2 = (one + four * theta) / (two * (one + theta));
    let rhs = (one - beta1) * s + half;
    let first = half + (one - s) * beta1 + beta2 * s;
    let second = one + (one - s) * beta1 - (one - s) * beta2 + (two - beta2) * theta;
    Ok(BetaParams {
        beta1,
        beta2,
        balance_gaps: [first - rhs, second - rhs],
    })
}

/// The balancing parameters; fails if either equation is off by more than
/// `1e-12`.
pub fn beta_params(sigma0: f64, theta: f64) -> Result<BetaParams<f64>> {
    let b = beta_generic(sigma0, theta)?;
    if let Some(g) = b.balance_gaps.iter().find(|g| g.abs() > 1e-12) {
        return Err(Error::Validation(format!("balancing equation off by {g:e}")));
    }
    Ok(b)
}

pub fn beta_params_exact(sigma0: Rational, theta: Rational) -> Result<BetaParams<Rational>> {
    beta_generic(sigma0, theta)
}

/// `g(sigma0) - (87/52 - 87/52 sigma0 + 37/26 theta) = -a sigma0^2 + b sigma0
/// - c`, completed to `-a (sigma0 - v)^2 + maximum`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminant {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub vertex: Rational,
    pub maximum: Rational,
}

impl Discriminant {
    pub fn eval(&self, sigma0: Rational) -> Rational {
        -self.a * sigma0 * sigma0 + self.b * sigma0 - self.c
    }
}

/// The exponent gap between the last two error terms as a quadratic in
/// `sigma0`, at the admissible `theta`.
pub fn discriminant() -> Discriminant {
    let theta = exact_theta();
    let (one, two) = (Rational::int(1), Rational::int(2));
    let a = (one - two * theta) / (two * (one + theta));
    let b = Rational::new(35, 52);
    let c = Rational::new(9, 52) + Rational::new(37, 26) * theta;
    let vertex = b / (two * a);
    Discriminant {
        a,
        b,
        c,
        vertex,
        maximum: a * vertex * vertex - c,
    }
}

/// Exponent of the `sigma0`-dependent part of the last error term,
/// `g(sigma0) = 3/2 - (1 + sigma0 (1 - 2 theta) / (2 (1 + theta))) sigma0`.
pub fn g_exponent<F: Field>(sigma0: F, theta: F) -> F {
    let (one, two) = (F::int(1), F::int(2));
    F::frac(3, 2) - (one + sigma0 * (one - two * theta) / (two * (one + theta))) * sigma0
}

/// Predicted size of the four error terms as `q^a tau^b`, epsilons taken as
/// zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Envelope {
    pub sigma0: f64,
    pub theta: f64,
    pub q_exponents: [f64; 4],
    pub tau_exponents: [f64; 4],
    /// Largest q-exponent; the slope a residual could reach.
    pub q_exponent: f64,
}

impl Envelope {
    pub fn new(sigma0: f64, theta: f64) -> Result<Self> {
        check_range(sigma0, theta)?;
        let r = 1.0 - sigma0;
        let g = g_exponent(sigma0, theta);
        let q_exponents = [0.25, 1.5 * r + theta, 0.5 + 0.5 * r, g];
        let tau_exponents = [1.5 * r, 1.5 * r + theta, 0.5 * r, 1.0 + g];
        Ok(Self {
            sigma0,
            theta,
            q_exponents,
            tau_exponents,
            q_exponent: max_of(q_exponents),
        })
    }

    /// `sum_i q^{a_i} tau^{b_i}`, all implied constants set to 1.
    pub fn size(&self, q: f64, tau: f64) -> f64 {
        (0..4)
            .map(|i| q.powf(self.q_exponents[i]) * tau.powf(self.tau_exponents[i]))
            .sum()
    }
}
