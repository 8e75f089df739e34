use crate::combinatorics::{omega, GrassmannKernel};
use crate::error::{Error, Result};
use crate::grassmann::{det_projection, hyperplane_section, intersect_with_hyperplane, Subspace, AMBIGUOUS_BAND, ZERO_BRANCH};

fn check_flag(e: &Subspace<f64>, u: &[f64], big_u: &Subspace<f64>) -> Result<()> {
    let d = e.ambient_dim();
    if u.len() != d || big_u.ambient_dim() != d {
        return Err(Error::DimMismatch("E, u and U must share the ambient space".into()));
    }
    if big_u.dim() + e.dim() != d {
        return Err(Error::DimMismatch(format!("dim U = {} but d − dim E = {}", big_u.dim(), d - e.dim())));
    }
    Ok(())
}

/// `⟨u^⊥ ∩ U, u^⊥ ∩ E^⊥⟩² / ‖u|E^⊥‖^{d−k−2}`, and 0 for `u ∈ E`.
///
/// For `k = d − 1` both sections are trivial and the value is `‖u|E^⊥‖`.
pub fn th1_integrand(e: &Subspace<f64>, u: &[f64], big_u: &Subspace<f64>) -> Result<f64> {
    check_flag(e, u, big_u)?;
    Ok(th1_with_complement(&e.complement(), u, big_u))
}

pub(crate) fn th1_with_complement(e_perp: &Subspace<f64>, u: &[f64], big_u: &Subspace<f64>) -> f64 {
    let s = e_perp.projection_norm(u);
    if s <= ZERO_BRANCH {
        return 0.0;
    }
    let a = hyperplane_section(e_perp, u);
    let w = hyperplane_section(big_u, u);
    let c = det_projection(&w, &a).expect("sections of equal dimension");
    // ‖u|E^⊥‖^{−(d−k−2)} with d − k = dim E^⊥
    c * c * s.powi(2 - e_perp.dim() as i32)
}

/// The kernel `g` for a fixed `E`, with `E^⊥` and the coefficients
/// `α(d−1, d−1−k)` precomputed.
#[derive(Clone, Debug)]
pub struct GKernel {
    e_perp: Subspace<f64>,
    kernel: GrassmannKernel<f64>,
    inv_omega: f64,
}

impl GKernel {
    pub fn new(e: &Subspace<f64>) -> Result<Self> {
        let (d, k) = (e.ambient_dim(), e.dim());
        super::check_k(d, k)?;
        Ok(Self {
            e_perp: e.complement(),
            kernel: GrassmannKernel::new(d - 1, d - 1 - k)?,
            inv_omega: 1.0 / omega(d - k),
        })
    }

    pub fn e_perp(&self) -> &Subspace<f64> {
        &self.e_perp
    }

    /// `g(u, U)` with `φ` evaluated in the coordinates of an orthonormal
    /// basis of `u^⊥`.
    pub fn eval(&self, u: &[f64], big_u: &Subspace<f64>) -> Result<f64> {
        self.eval_in_frame(u, big_u, None)
    }

    /// As [`GKernel::eval`], with an explicit basis `frame` of `u^⊥`.
    pub fn eval_in_frame(&self, u: &[f64], big_u: &Subspace<f64>, frame: Option<&Subspace<f64>>) -> Result<f64> {
        let d = self.e_perp.ambient_dim();
        let k = d - self.e_perp.dim();
        if u.len() != d || big_u.ambient_dim() != d || big_u.dim() != d - k {
            return Err(Error::DimMismatch("g needs u ∈ R^d and U of dimension d − k".into()));
        }
        let s = self.e_perp.projection_norm(u);
        if s <= ZERO_BRANCH {
            return Ok(0.0);
        }
        if s < AMBIGUOUS_BAND {
            return Err(Error::DegenerateConfiguration(format!("‖u|E^⊥‖ = {s:e}")));
        }
        let owned;
        let frame = match frame {
            Some(f) => f,
            None => {
                owned = Subspace::line(u)?.complement();
                &owned
            }
        };
        let a = intersect_with_hyperplane(&self.e_perp, u)?.in_frame(frame)?;
        let w = hyperplane_section(big_u, u).in_frame(frame)?;
        let phi = self.kernel.eval(&a, &w)?;
        Ok(self.inv_omega * s.powi(k as i32 + 2 - d as i32) * phi)
    }
}

/// `g(E; u, U)`: 0 for `u ∈ E`, otherwise
/// `ω_{d−k}⁻¹ ‖u|E^⊥‖^{k−d+2} φ(U ∩ u^⊥)` with `φ` the Grassmannian kernel
/// of `E^⊥ ∩ u^⊥` inside `u^⊥`.
pub fn g_kernel(e: &Subspace<f64>, u: &[f64], big_u: &Subspace<f64>) -> Result<f64> {
    check_flag(e, u, big_u)?;
    GKernel::new(e)?.eval(u, big_u)
}
