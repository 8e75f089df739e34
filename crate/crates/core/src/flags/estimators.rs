use serde::Serialize;

use super::driver::per_face;
use super::integrands::{th1_with_complement, GKernel};
use super::{check_general_position, check_k};
use crate::combinatorics::omega;
use crate::error::Result;
use crate::grassmann::{det_projection, sample_grassmannian_containing_line, Subspace, ZERO_BRANCH};
use crate::mc::MCEstimate;
use crate::polytope::{surface_area_measure_atoms, Polytope};
use crate::rng::RandomStream;

/// Both cone-integral estimators on the same samples.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeComparison {
    pub prop31: MCEstimate,
    pub th1: MCEstimate,
    /// Largest per-sample relative difference between the two integrands.
    pub max_relative_gap: f64,
}

/// Runs the face-formula and τ section-integral estimators on one set of
/// normal-cone samples, so they differ only by the pointwise exchange identity.
pub fn exchange_comparison(
    p: &Polytope,
    e: &Subspace<f64>,
    n_per_face: u64,
    rng: &RandomStream,
) -> Result<ExchangeComparison> {
    check_general_position(p, e)?;
    let (d, k) = (p.dim(), e.dim());
    let e_perp = e.complement();
    let inv_omega = 1.0 / omega(d - k);
    let overlap: Vec<f64> = p
        .faces(k)
        .iter()
        .map(|f| det_projection(&f.tangent, e).map(|c| c * c))
        .collect::<Result<_>>()?;
    let tallies = per_face(p, k, n_per_face, rng, |i, face, u, _| {
        let s = e_perp.projection_norm(u);
        let a = if s <= ZERO_BRANCH { 0.0 } else { overlap[i] * s.powi(k as i32 - d as i32) };
        let b = th1_with_complement(&e_perp, u, &face.normal_span);
        let gap = (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        Ok([a * inv_omega, b * inv_omega, if a == b { 0.0 } else { gap }])
    })?;
    let seed = rng.seed();
    Ok(ExchangeComparison {
        prop31: MCEstimate::sum(tallies.iter().map(|t| t.integrals[0]), seed),
        th1: MCEstimate::sum(tallies.iter().map(|t| t.integrals[1]), seed),
        max_relative_gap: tallies.iter().map(|t| t.max_abs[2]).fold(0.0, f64::max),
    })
}

/// `v_k(P, E)` from the face formula
/// `ω_{d−k}⁻¹ Σ_F ⟨E,F⟩² V_k(F) ∫_{n(P,F)} ‖u|E^⊥‖^{k−d}`.
pub fn v_k_prop31(p: &Polytope, e: &Subspace<f64>, n_per_face: u64, rng: &RandomStream) -> Result<MCEstimate> {
    Ok(exchange_comparison(p, e, n_per_face, rng)?.prop31)
}

/// `v_k(P, E)` as the `τ_k` integral of the section integrand; uses the
/// same samples as [`v_k_prop31`] for equal arguments.
pub fn v_k_th1(p: &Polytope, e: &Subspace<f64>, n_per_face: u64, rng: &RandomStream) -> Result<MCEstimate> {
    Ok(exchange_comparison(p, e, n_per_face, rng)?.th1)
}

/// `v_k(P, E)` as the `ψ_k` integral of the kernel `g`.
pub fn v_k_th2(p: &Polytope, e: &Subspace<f64>, n_per_face: u64, rng: &RandomStream) -> Result<MCEstimate> {
    check_general_position(p, e)?;
    let (d, k) = (p.dim(), e.dim());
    let g = GKernel::new(e)?;
    let tallies = per_face(p, k, n_per_face, rng, |_, face, u, rng| {
        let big_u = if k + 1 == d {
            face.normal_span.clone()
        } else {
            sample_grassmannian_containing_line(u, d - k, rng)
        };
        let c = det_projection(&big_u, &face.normal_span)?;
        Ok([c * c * g.eval(u, &big_u)?])
    })?;
    Ok(MCEstimate::sum(tallies.into_iter().map(|t| t.integrals[0]), rng.seed()))
}

/// `v_{d−1}(P, x^⊥) = ½ Σ_F V_{d−1}(F) |⟨x, n_F⟩|` over facets.
pub fn v_dminus1_exact(p: &Polytope, x: &[f64]) -> Result<f64> {
    check_k(p.dim(), p.dim() - 1)?;
    Ok(0.5
        * surface_area_measure_atoms(p)
            .iter()
            .map(|(n, a)| a * crate::linalg::dot(x, n).abs())
            .sum::<f64>())
}
