//! Per-face Monte Carlo integration over normal cones.

use rayon::prelude::*;

use crate::combinatorics::omega;
use crate::error::Result;
use crate::mc::{Accumulator, MCEstimate};
use crate::polytope::{ConeSampler, Face, Polytope};
use crate::rng::RandomStream;

/// Per-face tallies of `N` integrands evaluated on the same samples.
pub(crate) struct FaceTally<const N: usize> {
    /// Estimates of `V_k(F) ∫_{n(P,F)} f_j dH^{d−1−k}`.
    pub integrals: [MCEstimate; N],
    /// Largest `|f_j|` seen, unscaled.
    pub max_abs: [f64; N],
}

/// Integrates `f` over the normal cone of every `k`-face, face `i` drawing
/// from substream `i`. `f` receives the face index, the face, the accepted
/// normal `u`, and the face's stream for any further sampling.
pub(crate) fn per_face<const N: usize, F>(
    p: &Polytope,
    k: usize,
    n: u64,
    rng: &RandomStream,
    f: F,
) -> Result<Vec<FaceTally<N>>>
where
    F: Fn(usize, &Face, &[f64], &mut RandomStream) -> Result<[f64; N]> + Sync,
{
    let d = p.dim();
    let om = omega(d - k);
    let seed = rng.seed();
    p.faces(k)
        .par_iter()
        .enumerate()
        .map(|(i, face)| {
            let mut rng = rng.substream(i as u64);
            let sampler = ConeSampler::new(p, face)?;
            if k + 1 == d {
                let u = sampler.sample(&mut rng)?;
                let v = f(i, face, &u, &mut rng)?;
                return Ok(FaceTally {
                    integrals: v.map(|x| MCEstimate::exact(face.volume * x)),
                    max_abs: v.map(f64::abs),
                });
            }
            let scale = face.volume * om;
            let mut acc: [Accumulator; N] = std::array::from_fn(|_| Accumulator::default());
            let mut max_abs = [0.0; N];
            for _ in 0..n {
                let (u, ok) = sampler.propose(&mut rng);
                if !ok {
                    acc.iter_mut().for_each(|a| a.push(0.0));
                    continue;
                }
                let v = f(i, face, &u, &mut rng)?;
                for j in 0..N {
                    acc[j].push(scale * v[j]);
                    max_abs[j] = f64::max(max_abs[j], v[j].abs());
                }
            }
            Ok(FaceTally { integrals: acc.map(|a| a.estimate(seed)), max_abs })
        })
        .collect()
}

/// Sum over faces of a single integrand.
pub(crate) fn total<F>(p: &Polytope, k: usize, n: u64, rng: &RandomStream, f: F) -> Result<MCEstimate>
where
    F: Fn(usize, &Face, &[f64], &mut RandomStream) -> Result<f64> + Sync,
{
    let tallies = per_face(p, k, n, rng, |i, face, u, rng| Ok([f(i, face, u, rng)?]))?;
    Ok(MCEstimate::sum(tallies.into_iter().map(|t| t.integrals[0]), rng.seed()))
}
