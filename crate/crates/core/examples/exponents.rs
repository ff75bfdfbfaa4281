//! Exact exponent bookkeeping at theta = 7/64.

use moment_forge::moment::{beta_params_exact, discriminant, m_exponent, m_exponent_exact, Envelope, Rational, THETA};

fn main() -> moment_forge::Result<()> {
    let theta = Rational::new(7, 64);
    let half = Rational::new(1, 2);
    println!("M(1/2) = {}", m_exponent_exact(half, theta)?);
    for sigma in [0.5, 0.6, 0.75, 0.9] {
        println!("M({sigma}) = {:.6}", m_exponent(sigma, THETA)?);
    }
    let b = beta_params_exact(half, theta)?;
    println!("beta1 = {}, beta2 = {}, balance gaps {} and {}", b.beta1, b.beta2, b.balance_gaps[0], b.balance_gaps[1]);
    let d = discriminant();
    println!("-{} s^2 + {} s - {}: vertex {}, maximum {}", d.a, d.b, d.c, d.vertex, d.maximum);
    let e = Envelope::new(0.5, THETA)?;
    println!("q exponents {:?}, largest {:.4}", e.q_exponents, e.q_exponent);
    Ok(())
}
