use std::f64::consts::PI;

use rand::Rng;

use super::lattice::{Face, Polytope, INCIDENCE_TOL};
use crate::error::{Error, Result};
use crate::grassmann::sample_sphere_in_subspace;
use crate::linalg::dot;
use crate::mc::{Accumulator, MCEstimate};
use crate::rng::RandomStream;

/// Proposal budget before a normal cone is declared empty.
pub const MAX_PROPOSALS: u64 = 1_000_000;

/// Rejection sampler for the unit normal cone `n(P, F)`.
///
/// Proposals are uniform on the unit sphere of `F`'s normal span, so the
/// acceptance probability is the external angle of `P` at `F`.
#[derive(Clone, Debug)]
pub struct ConeSampler<'a> {
    polytope: &'a Polytope,
    face: &'a Face,
    anchor: &'a [f64],
    tol: f64,
}

impl<'a> ConeSampler<'a> {
    pub fn new(polytope: &'a Polytope, face: &'a Face) -> Result<Self> {
        if face.dim >= polytope.dim() {
            return Err(Error::OutOfRange(format!("face of dimension {} has no normal cone", face.dim)));
        }
        let scale = polytope.vertices().iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
        Ok(Self {
            polytope,
            face,
            anchor: &polytope.vertices()[face.vertex_ids[0]],
            tol: INCIDENCE_TOL * scale,
        })
    }

    pub fn face(&self) -> &Face {
        self.face
    }

    /// Whether the unit vector `u ⊥ F` is an outer normal of `P` along `F`.
    pub fn accepts(&self, u: &[f64]) -> bool {
        dot(u, self.anchor) >= self.polytope.support(u) - self.tol
    }

    fn is_facet(&self) -> bool {
        self.face.dim + 1 == self.polytope.dim()
    }

    fn facet_normal(&self) -> &[f64] {
        &self.polytope.facets()[self.face.incident_facet_ids[0]].normal
    }

    /// One proposal and whether it was accepted. A facet's normal span is a
    /// line, whose unit sphere is the outer normal and its negative.
    pub fn propose(&self, rng: &mut RandomStream) -> (Vec<f64>, bool) {
        let u: Vec<f64> = if self.is_facet() {
            let n = self.facet_normal();
            if rng.random::<bool>() { n.to_vec() } else { n.iter().map(|x| -x).collect() }
        } else {
            sample_sphere_in_subspace(&self.face.normal_span, rng).expect("normal span is nonzero")
        };
        let ok = self.accepts(&u);
        (u, ok)
    }

    /// `n` proposals. For facets both antipodal points are enumerated in turn
    /// instead of drawn, so the accept rate is exactly 1/2 when `n` is even.
    pub fn proposals(&self, n: u64, rng: &mut RandomStream) -> Vec<(Vec<f64>, bool)> {
        if self.is_facet() {
            let out = self.facet_normal().to_vec();
            let inward: Vec<f64> = out.iter().map(|x| -x).collect();
            return (0..n).map(|i| if i % 2 == 0 { (out.clone(), true) } else { (inward.clone(), false) }).collect();
        }
        (0..n).map(|_| self.propose(rng)).collect()
    }

    /// A uniform sample from `n(P, F)`.
    pub fn sample(&self, rng: &mut RandomStream) -> Result<Vec<f64>> {
        if self.is_facet() {
            return Ok(self.facet_normal().to_vec());
        }
        for _ in 0..MAX_PROPOSALS {
            let (u, ok) = self.propose(rng);
            if ok {
                return Ok(u);
            }
        }
        Err(Error::EmptyCone(self.face.vertex_ids[0]))
    }

    /// Monte Carlo acceptance rate over `n` proposals.
    pub fn accept_rate(&self, n: u64, rng: &mut RandomStream) -> MCEstimate {
        let mut acc = Accumulator::default();
        for (_, ok) in self.proposals(n, rng) {
            acc.push(if ok { 1.0 } else { 0.0 });
        }
        acc.estimate(rng.seed())
    }
}

/// `sample_normal_cone` in free-function form.
pub fn sample_normal_cone(p: &Polytope, face: &Face, rng: &mut RandomStream) -> Result<Vec<f64>> {
    ConeSampler::new(p, face)?.sample(rng)
}

/// External angle `H^{d−1−k}(n(P,F)) / ω_{d−k}` of `P` at the `k`-face `F`.
///
/// Exact for facets (1/2) and for faces of codimension 2 (the exterior
/// dihedral angle over `2π`); Monte Carlo with `n` proposals otherwise.
pub fn external_angle(p: &Polytope, face: &Face, n: u64, rng: &mut RandomStream) -> Result<MCEstimate> {
    let d = p.dim();
    match d.checked_sub(face.dim) {
        Some(1) => Ok(MCEstimate::exact(0.5)),
        Some(2) => {
            let [a, b] = face.incident_facet_ids[..] else {
                return Err(Error::Hull(format!("ridge in {} facets", face.incident_facet_ids.len())));
            };
            let c = dot(&p.facets()[a].normal, &p.facets()[b].normal).clamp(-1.0, 1.0);
            Ok(MCEstimate::exact(c.acos() / (2.0 * PI)))
        }
        Some(_) if n > 0 => Ok(ConeSampler::new(p, face)?.accept_rate(n, rng)),
        Some(_) => Err(Error::Invalid("external angle needs at least one proposal".into())),
        None => Err(Error::OutOfRange(format!("face dimension {} exceeds {d}", face.dim))),
    }
}
