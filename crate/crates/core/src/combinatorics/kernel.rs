//! The Grassmannian kernel `φ_A(U) = Σ_p α_p ⟨A,U⟩_p²`, which satisfies
//! `∫ φ_A(U) ⟨U,B⟩² dν(U) = ⟨A,B⟩²` for all `B` of the same dimension.

use super::constants::alpha_explicit;
use crate::error::{Error, Result};
use crate::grassmann::{products, Subspace};
use crate::scalar::Real;

/// Coefficients `α(n, k)` cached for repeated kernel evaluations.
#[derive(Clone, Debug)]
pub struct GrassmannKernel<T> {
    ambient_dim: usize,
    dim: usize,
    alpha: Vec<T>,
}

impl<T: Real> GrassmannKernel<T> {
    pub fn new(ambient_dim: usize, dim: usize) -> Result<Self> {
        let alpha = alpha_explicit::<T>(ambient_dim, dim)?.alpha;
        Ok(Self { ambient_dim, dim, alpha })
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    /// `φ_A(U)`.
    pub fn eval(&self, a: &Subspace<T>, u: &Subspace<T>) -> Result<T> {
        if a.ambient_dim() != self.ambient_dim || a.dim() != self.dim {
            return Err(Error::DimMismatch(format!(
                "kernel for G({},{}) applied to G({},{})",
                self.ambient_dim,
                self.dim,
                a.ambient_dim(),
                a.dim()
            )));
        }
        let p = products(a, u)?;
        Ok(self
            .alpha
            .iter()
            .zip(&p)
            .map(|(&al, &x)| al * x * x)
            .sum())
    }
}
