//! Moments `∫_{S^{d-1}} |⟨u,v⟩|^p |⟨w,v⟩|^q dv` for orthonormal `u, w`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// `2π^{(d−1)/2} Γ((p+1)/2) / Γ((d+p)/2)`, via log-Gamma.
pub fn sphere_moment(d: usize, p: f64) -> Result<f64> {
    check(d, p, 0.0)?;
    let (d, p) = (d as f64, p);
    let log = std::f64::consts::LN_2 + 0.5 * (d - 1.0) * std::f64::consts::PI.ln() + libm::lgamma(0.5 * (p + 1.0))
        - libm::lgamma(0.5 * (d + p));
    Ok(log.exp())
}

/// `2π^{(d−2)/2} Γ((p+1)/2) Γ((q+1)/2) / Γ((d+p+q)/2)`, via log-Gamma.
pub fn sphere_moment2(d: usize, p: f64, q: f64) -> Result<f64> {
    check(d, p, q)?;
    let d = d as f64;
    let log = std::f64::consts::LN_2
        + 0.5 * (d - 2.0) * std::f64::consts::PI.ln()
        + libm::lgamma(0.5 * (p + 1.0))
        + libm::lgamma(0.5 * (q + 1.0))
        - libm::lgamma(0.5 * (d + p + q));
    Ok(log.exp())
}

fn check(d: usize, p: f64, q: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("sphere moments need d ≥ 2, got {d}")));
    }
    if p <= -1.0 || q <= -1.0 || !p.is_finite() || !q.is_finite() {
        return Err(Error::OutOfRange(format!("exponents must exceed -1, got p = {p}, q = {q}")));
    }
    Ok(())
}

/// An exact value `coeff · √π^sqrt_pi_power`.
///
/// Gamma at positive half-integers stays in this set, so integer-exponent
/// sphere moments are represented exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtPiMonomial {
    pub coeff: Rational,
    pub sqrt_pi_power: i64,
}

impl SqrtPiMonomial {
    fn mul(self, other: Self) -> Self {
        Self {
            coeff: self.coeff * other.coeff,
            sqrt_pi_power: self.sqrt_pi_power + other.sqrt_pi_power,
        }
    }

    fn recip(self) -> Self {
        Self {
            coeff: Rational::one() / self.coeff,
            sqrt_pi_power: -self.sqrt_pi_power,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.sqrt().powi(self.sqrt_pi_power as i32)
    }
}

/// `Γ(n/2)` for `n ≥ 1`.
pub fn gamma_half(n: u64) -> SqrtPiMonomial {
    assert!(n >= 1);
    if n.is_multiple_of(2) {
        // (n/2 - 1)!
        let f = (1..n / 2).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
        SqrtPiMonomial { coeff: Rational::from_integer(f), sqrt_pi_power: 0 }
    } else {
        // Γ(1/2) = √π, Γ(x + 1) = x Γ(x)
        let mut coeff = Rational::one();
        let mut m = 1;
        while m < n {
            coeff *= Rational::new(BigInt::from(m), BigInt::from(2));
            m += 2;
        }
        SqrtPiMonomial { coeff, sqrt_pi_power: 1 }
    }
}

/// Exact form of [`sphere_moment`] for integer `p ≥ 0`.
pub fn sphere_moment_exact(d: usize, p: u64) -> Result<SqrtPiMonomial> {
    check(d, p as f64, 0.0)?;
    let two = SqrtPiMonomial { coeff: Rational::from_integer(2.into()), sqrt_pi_power: d as i64 - 1 };
    Ok(two.mul(gamma_half(p + 1)).mul(gamma_half(d as u64 + p).recip()))
}

/// Exact form of [`sphere_moment2`] for integers `p, q ≥ 0`.
pub fn sphere_moment2_exact(d: usize, p: u64, q: u64) -> Result<SqrtPiMonomial> {
    check(d, p as f64, q as f64)?;
    let two = SqrtPiMonomial { coeff: Rational::from_integer(2.into()), sqrt_pi_power: d as i64 - 2 };
    Ok(two
        .mul(gamma_half(p + 1))
        .mul(gamma_half(q + 1))
        .mul(gamma_half(d as u64 + p + q).recip()))
}

/// `ω_n = 2π^{n/2} / Γ(n/2)`, the surface area of `S^{n-1}`.
pub fn omega(n: usize) -> f64 {
    assert!(n >= 1);
    omega_exact(n).to_f64()
}

pub fn omega_exact(n: usize) -> SqrtPiMonomial {
    SqrtPiMonomial { coeff: Rational::from_integer(2.into()), sqrt_pi_power: n as i64 }
        .mul(gamma_half(n as u64).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn omega_values() {
        assert!((omega(1) - 2.0).abs() < 1e-15);
        assert!((omega(2) - 2.0 * PI).abs() < 1e-14);
        assert!((omega(3) - 4.0 * PI).abs() < 1e-13);
        assert!((omega(4) - 2.0 * PI * PI).abs() < 1e-13);
    }

    #[test]
    fn zero_exponent_is_total_measure() {
        for d in 2..9 {
            assert!((sphere_moment(d, 0.0).unwrap() - omega(d)).abs() < 1e-12 * omega(d));
            assert_eq!(sphere_moment_exact(d, 0).unwrap().to_f64(), omega(d));
            assert!((sphere_moment2(d, 0.0, 0.0).unwrap() - omega(d)).abs() < 1e-12 * omega(d));
        }
    }

    #[test]
    fn three_dim_first_moment_is_two_pi() {
        let e = sphere_moment_exact(3, 1).unwrap();
        assert_eq!(e, SqrtPiMonomial { coeff: Rational::from_integer(2.into()), sqrt_pi_power: 2 });
        assert!((sphere_moment(3, 1.0).unwrap() - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_path_matches_exact_path() {
        for d in 2..9 {
            for p in 0..5u64 {
                let a = sphere_moment(d, p as f64).unwrap();
                let b = sphere_moment_exact(d, p).unwrap().to_f64();
                assert!((a - b).abs() < 1e-12 * b);
                for q in 0..4u64 {
                    let a = sphere_moment2(d, p as f64, q as f64).unwrap();
                    let b = sphere_moment2_exact(d, p, q).unwrap().to_f64();
                    assert!((a - b).abs() < 1e-12 * b);
                }
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(sphere_moment(3, -1.0).is_err());
        assert!(sphere_moment2(3, 0.5, -1.5).is_err());
        assert!(sphere_moment(1, 0.0).is_err());
        assert!(sphere_moment(3, -0.5).is_ok());
    }
}
