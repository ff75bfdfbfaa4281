use std::sync::OnceLock;

use crate::arith;
use crate::error::{Error, Result};

/// Label under which the bundled fixture is known to the fetch client.
pub const BUNDLED_LABEL: &str = "sl2z-even-1";

const BUNDLED_FIXTURE: &str = include_str!("../../data/maass_r13_78_even.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A Hecke-Maass cusp form for `SL(2, Z)` given by its spectral parameter and
/// Hecke eigenvalues `lambda(1..=N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaassForm {
    spectral_parameter: f64,
    /// `lambda[n]` for `n in 0..=N`; index 0 holds 0.
    lambda: Vec<f64>,
    /// Decimal text of each coefficient as read, for bit-exact round trips.
    decimals: Vec<String>,
    source: String,
    precision_digits: u32,
    parity: Parity,
    spectral_text: String,
}

impl MaassForm {
    /// Builds a form from raw parts without validation.
    pub fn from_parts(
        spectral_text: String,
        decimals: Vec<String>,
        source: String,
        precision_digits: u32,
        parity: Parity,
    ) -> Result<Self> {
        let spectral_parameter = spectral_text.trim().parse::<f64>().map_err(|e| {
            Error::InvalidParameter(format!("spectral parameter {spectral_text:?}: {e}"))
        })?;
        let mut lambda = Vec::with_capacity(decimals.len() + 1);
        lambda.push(0.0);
        for (i, d) in decimals.iter().enumerate() {
            lambda.push(d.parse::<f64>().map_err(|e| {
                Error::InvalidParameter(format!("lambda({}) = {d:?}: {e}", i + 1))
            })?);
        }
        Ok(Self {
            spectral_parameter,
            lambda,
            decimals,
            source,
            precision_digits,
            parity,
            spectral_text,
        })
    }

    /// Builds a form from floating-point coefficients `lambda(1..)`.
    pub fn from_coefficients(
        spectral_parameter: f64,
        coefficients: &[f64],
        source: impl Into<String>,
        precision_digits: u32,
        parity: Parity,
    ) -> Result<Self> {
        let decimals = coefficients.iter().map(|x| format!("{x:?}")).collect();
        Self::from_parts(
            format!("{spectral_parameter:?}"),
            decimals,
            source.into(),
            precision_digits,
            parity,
        )
    }

    pub fn spectral_parameter(&self) -> f64 {
        self.spectral_parameter
    }

    pub fn spectral_text(&self) -> &str {
        &self.spectral_text
    }

    /// Number of stored coefficients `N`.
    pub fn depth(&self) -> usize {
        self.lambda.len() - 1
    }

    /// `lambda(n)` for `1 <= n <= N`.
    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    /// All coefficients with `lambda[0] = 0` so that `lambda[n]` is `lambda(n)`.
    pub fn coefficients(&self) -> &[f64] {
        &self.lambda
    }

    pub fn decimals(&self) -> &[String] {
        &self.decimals
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Tolerance `10^{-(precision - 2)}` for Hecke checks.
    pub fn hecke_tolerance(&self) -> f64 {
        10f64.powi(-(self.precision_digits as i32 - 2))
    }

    /// Fails with the required depth when `lambda(n)` for `n <= required` is
    /// not available.
    pub fn require_depth(&self, required: usize) -> Result<()> {
        if required > self.depth() {
            return Err(Error::DepthExceeded {
                required,
                available: self.depth(),
            });
        }
        Ok(())
    }

    /// Checks `lambda(1) = 1` and `lambda(m) lambda(n) = sum_{d | (m,n)}
    /// lambda(mn/d^2)` for every `m <= n` with `mn <= N`.
    pub fn validate_hecke(&self) -> Result<()> {
        let tol = self.hecke_tolerance();
        if self.depth() == 0 {
            return Err(Error::Validation("form has no coefficients".into()));
        }
        if (self.lambda[1] - 1.0).abs() > tol {
            return Err(Error::Validation(format!(
                "lambda(1) = {} but must equal 1",
                self.lambda[1]
            )));
        }
        if self.lambda.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("non-finite coefficient".into()));
        }
        let n_max = self.depth();
        for m in 2..=n_max {
            if m * m > n_max {
                break;
            }
            for n in m..=n_max / m {
                let g = arith::gcd(m as u64, n as u64) as usize;
                let rhs: f64 = if g == 1 {
                    self.lambda[m * n]
                } else {
                    (1..=g)
                        .filter(|d| g % d == 0)
                        .map(|d| self.lambda[m * n / (d * d)])
                        .sum()
                };
                let defect = (self.lambda[m] * self.lambda[n] - rhs).abs();
                if defect > tol {
                    return Err(Error::HeckeViolation {
                        m,
                        n,
                        defect,
                        tolerance: tol,
                    });
                }
            }
        }
        Ok(())
    }

    /// A copy truncated to the first `n` coefficients.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        self.require_depth(n)?;
        let mut out = self.clone();
        out.lambda.truncate(n + 1);
        out.decimals.truncate(n);
        Ok(out)
    }

    /// `sup |lambda(n)|` over the stored range.
    pub fn max_abs(&self) -> f64 {
        self.lambda.iter().fold(0.0, |a, x| a.max(x.abs()))
    }
}

/// The bundled first even Maass form, parsed and validated once.
pub fn bundled_form() -> &'static MaassForm {
    static FORM: OnceLock<MaassForm> = OnceLock::new();
    FORM.get_or_init(|| {
        let form = super::fixture::parse_fixture(BUNDLED_FIXTURE, "<bundled>")
            .expect("bundled fixture parses");
        form.validate_hecke().expect("bundled fixture satisfies Hecke relations");
        form
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_form_is_valid_and_deep() {
        let f = bundled_form();
        assert_eq!(f.lambda(1), 1.0);
        assert!(f.depth() >= 200_000);
        assert_eq!(f.parity(), Parity::Even);
        assert!((f.spectral_parameter() - 13.779751351890738).abs() < 1e-12);
        assert!(f.precision_digits() >= 12);
    }

    #[test]
    fn multiplicativity_and_prime_recursion() {
        let f = bundled_form();
        let tol = f.hecke_tolerance();
        for (m, n) in [(2, 3), (4, 9), (7, 11), (8, 125), (13, 17)] {
            assert!((f.lambda(m) * f.lambda(n) - f.lambda(m * n)).abs() < tol);
        }
        for p in [2usize, 3, 5, 7] {
            let mut pk = p;
            while pk * p * p <= 1000 {
                let lhs = f.lambda(p) * f.lambda(pk * p);
                let rhs = f.lambda(pk * p * p) + f.lambda(pk);
                assert!((lhs - rhs).abs() < tol, "p={p} p^k={pk}");
                pk *= p;
            }
        }
    }

    #[test]
    fn perturbed_coefficient_is_caught() {
        let f = bundled_form().truncated(2000).unwrap();
        let mut coeffs = f.coefficients()[1..].to_vec();
        coeffs[5] += 1e-2;
        let bad = MaassForm::from_coefficients(f.spectral_parameter(), &coeffs, "test", 13, Parity::Even)
            .unwrap();
        match bad.validate_hecke() {
            Err(Error::HeckeViolation { m, n, .. }) => assert_eq!(m * n % 6, 0),
            other => panic!("expected Hecke violation, got {other:?}"),
        }
    }

    #[test]
    fn depth_errors_name_requirement() {
        let f = bundled_form();
        match f.require_depth(f.depth() + 1) {
            Err(Error::DepthExceeded { required, available }) => {
                assert_eq!(required, f.depth() + 1);
                assert_eq!(available, f.depth());
            }
            other => panic!("{other:?}"),
        }
    }
}
