//! Flag measures `τ_k`, `ψ_k` of a polytope and the estimators of the
//! projection function `v_k(P, E) = V_k(P | E)` built on them.
//!
//! All estimators integrate against unnormalized measures: a proposal `u`
//! uniform on the unit sphere of `F^⊥` carries weight `V_k(F) ω_{d−k} / n`
//! when it lands in the normal cone `n(P, F)`, and facets (whose normal cone
//! is a single point of `H⁰`-measure one) are evaluated exactly.

mod driver;
mod estimators;
mod integrands;

use serde::Serialize;

use crate::combinatorics::omega;
use crate::error::{Error, Result};
use crate::grassmann::{det_projection, sample_grassmannian, sample_grassmannian_containing_line, FlagElement, Subspace};
use crate::mc::MCEstimate;
use crate::polytope::{ConeSampler, Polytope};
use crate::rng::RandomStream;

pub use estimators::{exchange_comparison, v_dminus1_exact, v_k_prop31, v_k_th1, v_k_th2, ExchangeComparison};
pub use integrands::{g_kernel, th1_integrand, GKernel};

/// `det_projection(tangent(F), E)` at or below this violates general position.
pub const GENERAL_POSITION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct WeightedFlagSample {
    pub flag: FlagElement<f64>,
    pub weight: f64,
    pub face_id: usize,
}

/// Checks that `dim E` is a valid `k` and that no `k`-face of `P` has a
/// tangent space meeting `E^⊥` nontrivially.
pub fn check_general_position(p: &Polytope, e: &Subspace<f64>) -> Result<()> {
    let (d, k) = (p.dim(), e.dim());
    check_k(d, k)?;
    if e.ambient_dim() != d {
        return Err(Error::DimMismatch(format!("E in R^{} for a polytope in R^{d}", e.ambient_dim())));
    }
    for (i, f) in p.faces(k).iter().enumerate() {
        let c = det_projection(&f.tangent, e)?;
        if c <= GENERAL_POSITION_TOL {
            return Err(Error::GeneralPositionViolated(format!("⟨E, F⟩ = {c:e} at {k}-face {i}")));
        }
    }
    Ok(())
}

/// Uniform random `k`-subspace in general position with respect to `P`,
/// resampling up to `attempts` times.
pub fn random_general_position_subspace(
    p: &Polytope,
    k: usize,
    attempts: usize,
    rng: &mut RandomStream,
) -> Result<Subspace<f64>> {
    check_k(p.dim(), k)?;
    let mut last = Error::GeneralPositionViolated("no attempts made".into());
    for _ in 0..attempts {
        let e = sample_grassmannian(p.dim(), k, rng);
        match check_general_position(p, &e) {
            Ok(()) => return Ok(e),
            Err(err) => last = err,
        }
    }
    Err(last)
}

pub(crate) fn check_k(d: usize, k: usize) -> Result<()> {
    if k == 0 || k >= d {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={}", d.saturating_sub(1))));
    }
    Ok(())
}

fn sample_flags(
    p: &Polytope,
    k: usize,
    n_per_face: u64,
    rng: &RandomStream,
    with_density: bool,
) -> Result<Vec<WeightedFlagSample>> {
    check_k(p.dim(), k)?;
    let d = p.dim();
    let om = omega(d - k);
    let mut out = Vec::new();
    for (i, f) in p.faces(k).iter().enumerate() {
        let mut rng = rng.substream(i as u64);
        let sampler = ConeSampler::new(p, f)?;
        if k + 1 == d {
            let u = sampler.sample(&mut rng)?;
            let flag = FlagElement::new(u.clone(), Subspace::line(&u)?)?;
            out.push(WeightedFlagSample { flag, weight: f.volume, face_id: i });
            continue;
        }
        let w = f.volume * om / n_per_face as f64;
        for (u, ok) in sampler.proposals(n_per_face, &mut rng) {
            if !ok {
                continue;
            }
            let (subspace, weight) = if with_density {
                let s = sample_grassmannian_containing_line(&u, d - k, &mut rng);
                let c = det_projection(&s, &f.normal_span)?;
                (s, w * c * c)
            } else {
                (f.normal_span.clone(), w)
            };
            out.push(WeightedFlagSample { flag: FlagElement::new(u, subspace)?, weight, face_id: i });
        }
    }
    Ok(out)
}

/// Weighted flags whose weights sum to an estimate of `τ_k(P, ·)`: `u` in
/// the normal cone of a `k`-face `F`, `U = F^⊥`.
pub fn sample_tau(p: &Polytope, k: usize, n_per_face: u64, rng: &RandomStream) -> Result<Vec<WeightedFlagSample>> {
    sample_flags(p, k, n_per_face, rng, false)
}

/// Weighted flags for `ψ_k(P, ·)`: `u` as for `τ_k`, `U` uniform through
/// `u`, weighted by the density `⟨U, F^⊥⟩²`.
pub fn sample_psi(p: &Polytope, k: usize, n_per_face: u64, rng: &RandomStream) -> Result<Vec<WeightedFlagSample>> {
    sample_flags(p, k, n_per_face, rng, true)
}

/// Total mass of `τ_k(P, ·)`; the target is `ω_{d−k} V_k(P)`.
pub fn tau_mass(p: &Polytope, k: usize, n_per_face: u64, rng: &RandomStream) -> Result<MCEstimate> {
    check_k(p.dim(), k)?;
    driver::total(p, k, n_per_face, rng, |_, _, _, _| Ok(1.0))
}

/// Total mass of `ψ_k(P, ·)`; the target is `ω_{d−k} V_k(P) / C(d−1, k)`.
pub fn psi_mass(p: &Polytope, k: usize, n_per_face: u64, rng: &RandomStream) -> Result<MCEstimate> {
    check_k(p.dim(), k)?;
    let q = p.dim() - k;
    driver::total(p, k, n_per_face, rng, |_, f, u, rng| {
        let s = sample_grassmannian_containing_line(u, q, rng);
        Ok(det_projection(&s, &f.normal_span)?.powi(2))
    })
}
