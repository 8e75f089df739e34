use num_traits::{ToPrimitive, Zero};

use super::tally::{agreement, Outcome, Tally};
use super::{Check, RunConfig, Suite};
use crate::combinatorics::{
    alpha_times_d, binom, c_closed, c_montecarlo, identity_lhs, identity_rhs, kernel_equation_montecarlo, omega,
    recursion_factors, sphere_moment2, sphere_moment2_exact, sphere_moment_montecarlo,
};
use crate::error::Result;
use crate::flags::{exchange_comparison, psi_mass, random_general_position_subspace, tau_mass, v_dminus1_exact, v_k_th2};
use crate::grassmann::{det_projection, products, sample_grassmannian, sample_sphere, Subspace};
use crate::mc::MCEstimate;
use crate::polytope::{boundary_lemma_check, fixtures, intrinsic_volume, project_and_volume, Polytope};
use crate::rng::RandomStream;
use crate::scalar::Rational;

pub static CHECKS: [Check; 11] = [
    Check { id: "01-alpha-times-d", criterion: 1, suite: Suite::Combinatorics, summary: "α·D = e_0 exactly, 3 ≤ d ≤ 8", run: alpha_times_d_check },
    Check { id: "02-binomial-identity", criterion: 2, suite: Suite::Combinatorics, summary: "binomial identity equals C(i,k) exactly, 0 ≤ i ≤ k ≤ d ≤ 8", run: binomial_identity },
    Check { id: "03-c-recursions", criterion: 3, suite: Suite::Combinatorics, summary: "c recursions and k ↔ d−k symmetry, exact", run: c_recursions },
    Check { id: "04-c-montecarlo", criterion: 4, suite: Suite::Combinatorics, summary: "Monte Carlo c constants, d ≤ 5", run: c_monte_carlo },
    Check { id: "05-kernel-equation", criterion: 5, suite: Suite::Grassmann, summary: "∫ φ_A(U)⟨U,B⟩² = ⟨A,B⟩², n ∈ {3,4}", run: kernel_equation },
    Check { id: "06-surface-area-formula", criterion: 6, suite: Suite::Projections, summary: "k = d−1 projection from facet atoms, 1e-9", run: surface_area_formula },
    Check { id: "07-four-way-agreement", criterion: 7, suite: Suite::Projections, summary: "direct, face formula, τ and ψ integrals agree", run: four_way_agreement },
    Check { id: "08-mass-identities", criterion: 8, suite: Suite::Masses, summary: "total masses of τ_k and ψ_k", run: mass_identities },
    Check { id: "09-product-parseval", criterion: 9, suite: Suite::Grassmann, summary: "Σ_i ⟨A,B⟩_i² = 1, d ≤ 6", run: product_parseval },
    Check { id: "10-sphere-moments", criterion: 10, suite: Suite::SphereMoments, summary: "sphere moments, closed form vs Monte Carlo", run: sphere_moments },
    Check { id: "11-boundary-lemma", criterion: 11, suite: Suite::Projections, summary: "boundary lemma on random 3-polytopes", run: boundary_lemma },
];

/// Substream index reserved for random fixture generation.
const FIXTURE_STREAM: u64 = 999_999;

/// Sample-count multiplier for the single retry of a failed comparison.
const RETRY_FACTOR: u64 = 4;

enum Comparison {
    Estimates(String, MCEstimate, MCEstimate),
    Close(String, f64, f64, f64),
    Failed(String),
}

impl Comparison {
    fn holds(&self, sigma: f64) -> bool {
        match self {
            Self::Estimates(_, a, b) => agreement(a, b, sigma).1,
            Self::Close(_, a, b, tol) => (a - b).abs() <= *tol,
            Self::Failed(_) => false,
        }
    }

    fn record(self, t: &mut Tally, sigma: f64) {
        match self {
            Self::Estimates(label, a, b) => {
                t.push_estimates(label, &a, &b, sigma);
            }
            Self::Close(label, a, b, tol) => t.push_close(label, a, b, tol),
            Self::Failed(label) => t.push(label, f64::NAN, f64::NAN, 0.0, 0.0, 0, false),
        }
    }
}

fn run_or_fail(label: &str, r: Result<Vec<Comparison>>) -> Vec<Comparison> {
    r.unwrap_or_else(|e| vec![Comparison::Failed(format!("{label}: {e}"))])
}

/// Runs `attempt(1, base.substream(0))`; if any comparison fails it is
/// rerun once as `attempt(4, base.substream(1))` and only the rerun counts.
fn with_retry<F>(t: &mut Tally, sigma: f64, base: &RandomStream, attempt: F)
where
    F: Fn(u64, &RandomStream) -> Vec<Comparison>,
{
    let first = attempt(1, &base.substream(0));
    let result = if first.iter().all(|c| c.holds(sigma)) {
        first
    } else {
        t.note_retry();
        attempt(RETRY_FACTOR, &base.substream(1))
    };
    result.into_iter().for_each(|c| c.record(t, sigma));
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn alpha_times_d_check(_: &RunConfig, _: u64) -> Outcome {
    let mut t = Tally::default();
    for d in 3..=8 {
        for k in 1..d {
            match alpha_times_d::<Rational>(d, k) {
                Ok(v) => {
                    let exact = v.iter().enumerate().all(|(i, x)| if i == 0 { *x == Rational::from_integer(1.into()) } else { x.is_zero() });
                    let err = v.iter().enumerate().map(|(i, x)| (to_f64(x) - if i == 0 { 1.0 } else { 0.0 }).abs()).fold(0.0, f64::max);
                    t.push_exact(format!("(d,k) = ({d},{k})"), err, 0.0, exact);
                }
                Err(e) => t.push(format!("(d,k) = ({d},{k}): {e}"), f64::NAN, 0.0, 0.0, 0.0, 0, false),
            }
        }
    }
    t.outcome("max |α·D − e_0| over all (d,k)")
}

fn binomial_identity(_: &RunConfig, _: u64) -> Outcome {
    let mut t = Tally::default();
    for d in 0..=8i64 {
        for k in 0..=d {
            for i in 0..=k {
                let rhs: Rational = identity_rhs(k, i);
                match identity_lhs::<Rational>(d, k, i) {
                    Ok(lhs) => t.push_exact(format!("(d,k,i) = ({d},{k},{i})"), to_f64(&lhs), to_f64(&rhs), lhs == rhs),
                    Err(e) => t.push(format!("(d,k,i) = ({d},{k},{i}): {e}"), f64::NAN, to_f64(&rhs), 0.0, 0.0, 0, false),
                }
            }
        }
    }
    t.outcome("identity left side vs C(i,k)")
}

fn c_recursions(_: &RunConfig, _: u64) -> Outcome {
    let mut t = Tally::default();
    let c = |d: usize, k: usize, i: usize| c_closed::<Rational>(d, k, i).expect("valid (d,k,i)");
    let mut exact = |label: String, a: Rational, b: Rational| t.push_exact(label, to_f64(&a), to_f64(&b), a == b);
    for d in 1..=8usize {
        for k in 1..=d / 2 {
            let (ik, jk) = recursion_factors::<Rational>(d, k).expect("2k ≤ d");
            for i in 0..k {
                exact(format!("c^{d}_{{{k},{i}}} = I c^{}_{{{},{i}}}", d - 1, k - 1), c(d, k, i), ik.clone() * c(d - 1, k - 1, i));
            }
            exact(format!("c^{d}_{{{k},{k}}} = J c^{}_{{{},{}}}", d - 1, k - 1, k - 1), c(d, k, k), jk * c(d - 1, k - 1, k - 1));
        }
        for k in 0..=d {
            for i in 0..=k.min(d - k) {
                exact(format!("c^{d}_{{{k},{i}}} = c^{d}_{{{},{i}}}", d - k), c(d, k, i), c(d, d - k, i));
            }
        }
    }
    // Iterating the second recursion down to c^k_{0,0} = 1.
    for k in 1..=4usize {
        let product = (0..k).fold(Rational::from_integer(1.into()), |acc, s| {
            acc * recursion_factors::<Rational>(2 * k - s, k - s).expect("2k ≤ d").1
        });
        exact(format!("c^{}_{{{k},{k}}} as a product of J factors", 2 * k), c(2 * k, k, k), product);
    }
    t.outcome("recursions and symmetry")
}

fn c_monte_carlo(cfg: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let root = RandomStream::new(seed, 4);
    let mut j = 0;
    for d in 2..=5usize {
        for k in 1..d {
            for i in 0..=k.min(d - k) {
                let exact = MCEstimate::exact(to_f64(&c_closed::<Rational>(d, k, i).expect("valid")));
                with_retry(&mut t, cfg.sigma, &root.substream(j), |mult, s| {
                    let label = format!("c^{d}_{{{k},{i}}}");
                    run_or_fail(&label, (|| {
                        let est = c_montecarlo(d, k, i, cfg.grassmannian_samples * mult, &mut s.clone())?;
                        Ok(vec![Comparison::Estimates(label.clone(), est, exact)])
                    })())
                });
                j += 1;
            }
        }
    }
    t.outcome("Monte Carlo vs closed form")
}

fn kernel_equation(cfg: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let root = RandomStream::new(seed, 5);
    for n in [3usize, 4] {
        for pair in 0..10u64 {
            let base = root.substream(100 * n as u64 + pair);
            let m = 1 + pair as usize % (n - 1);
            let mut g = base.substream(2);
            let a = sample_grassmannian::<f64, _>(n, m, &mut g);
            let b = sample_grassmannian::<f64, _>(n, m, &mut g);
            let target = MCEstimate::exact(det_projection(&a, &b).expect("same dims").powi(2));
            with_retry(&mut t, cfg.sigma, &base, |mult, s| {
                let label = format!("G({n},{m}) pair {pair}");
                run_or_fail(&label, (|| {
                    let est = kernel_equation_montecarlo(&a, &b, cfg.grassmannian_samples * mult, &mut s.clone())?;
                    Ok(vec![Comparison::Estimates(label.clone(), est, target)])
                })())
            });
        }
    }
    t.outcome("∫ φ_A(U)⟨U,B⟩² vs ⟨A,B⟩²")
}

fn named_fixtures(d: usize, rng: &mut RandomStream, with_random: bool) -> Result<Vec<(String, Polytope)>> {
    let mut out = vec![(format!("cube{d}"), fixtures::cube(d)?), (format!("simplex{d}"), fixtures::simplex(d)?)];
    if with_random {
        out.push((format!("random{d}"), fixtures::random_gaussian(d, 2 * d * d, rng)?));
    }
    Ok(out)
}

fn surface_area_formula(_: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut rng = RandomStream::new(seed, 6);
    for d in 3..=5 {
        let bodies = match named_fixtures(d, &mut rng, true) {
            Ok(b) => b,
            Err(e) => {
                t.push(format!("fixtures d={d}: {e}"), f64::NAN, f64::NAN, 0.0, 0.0, 0, false);
                continue;
            }
        };
        for (name, p) in bodies {
            for j in 0..20 {
                let x = sample_sphere::<f64, _>(d, &mut rng);
                let label = format!("{name} direction {j}");
                let e = Subspace::line(&x).expect("unit vector").complement();
                match (v_dminus1_exact(&p, &x), project_and_volume(&p, &e)) {
                    (Ok(a), Ok(b)) => t.push_close(label, a, b, 1e-9),
                    (Err(e), _) | (_, Err(e)) => t.push(format!("{label}: {e}"), f64::NAN, f64::NAN, 0.0, 0.0, 0, false),
                }
            }
        }
    }
    t.outcome("½ Σ area·|⟨x,n⟩| vs V_{d−1}(P | x^⊥)")
}

fn four_way_agreement(cfg: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let root = RandomStream::new(seed, 7);
    let mut fixture_rng = root.substream(FIXTURE_STREAM);
    for &d in &cfg.dims {
        let bodies = match named_fixtures(d, &mut fixture_rng, false) {
            Ok(b) => b,
            Err(e) => {
                t.push(format!("fixtures d={d}: {e}"), f64::NAN, f64::NAN, 0.0, 0.0, 0, false);
                continue;
            }
        };
        for (bi, (name, p)) in bodies.iter().enumerate() {
            for k in 1..d {
                for trial in 0..5u64 {
                    let base = root.substream(((d * 10 + bi) * 10 + k) as u64 * 10 + trial);
                    let e = match random_general_position_subspace(p, k, 100, &mut base.substream(2)) {
                        Ok(e) => e,
                        Err(err) => {
                            t.push(format!("{name} k={k} E#{trial}: {err}"), f64::NAN, f64::NAN, 0.0, 0.0, 0, false);
                            continue;
                        }
                    };
                    let tag = format!("{name} k={k} E#{trial}");
                    with_retry(&mut t, cfg.sigma, &base, |mult, s| {
                        run_or_fail(&tag, (|| {
                            let n = cfg.samples_per_face * mult;
                            let n_th2 = if k + 3 <= d { 10 * n } else { n };
                            let direct = MCEstimate::exact(project_and_volume(p, &e)?);
                            let ex = exchange_comparison(p, &e, n, &s.substream(0))?;
                            let th2 = v_k_th2(p, &e, n_th2, &s.substream(1))?;
                            let named = [("direct", direct), ("face formula", ex.prop31), ("τ integral", ex.th1), ("ψ integral", th2)];
                            let mut out = vec![Comparison::Close(format!("{tag}: per-sample exchange gap"), ex.max_relative_gap, 0.0, 1e-10)];
                            for a in 0..named.len() {
                                for b in a + 1..named.len() {
                                    out.push(Comparison::Estimates(
                                        format!("{tag}: {} vs {}", named[a].0, named[b].0),
                                        named[a].1,
                                        named[b].1,
                                    ));
                                }
                            }
                            Ok(out)
                        })())
                    });
                }
            }
        }
    }
    t.outcome("pairwise agreement of the four routes")
}

fn mass_identities(cfg: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let root = RandomStream::new(seed, 8);
    let mut fixture_rng = root.substream(FIXTURE_STREAM);
    for &d in &cfg.dims {
        let bodies = match named_fixtures(d, &mut fixture_rng, false) {
            Ok(b) => b,
            Err(e) => {
                t.push(format!("fixtures d={d}: {e}"), f64::NAN, f64::NAN, 0.0, 0.0, 0, false);
                continue;
            }
        };
        for (bi, (name, p)) in bodies.iter().enumerate() {
            for k in 1..d {
                let base = root.substream(((d * 10 + bi) * 10 + k) as u64);
                let tag = format!("{name} k={k}");
                let is_cube = name.starts_with("cube");
                with_retry(&mut t, cfg.sigma, &base, |mult, s| {
                    run_or_fail(&tag, (|| {
                        let n = cfg.samples_per_face * mult;
                        let angle_sum = intrinsic_volume(p, k, n, &s.substream(0))?;
                        let mut out = Vec::new();
                        let v_k = if is_cube {
                            let exact = MCEstimate::exact(binom::<f64>(d as i64, k as i64));
                            out.push(Comparison::Estimates(format!("{tag}: angle-sum V_k vs C(d,k)"), angle_sum, exact));
                            exact
                        } else {
                            angle_sum
                        };
                        let om = omega(d - k);
                        let tau = tau_mass(p, k, n, &s.substream(1))?;
                        out.push(Comparison::Estimates(format!("{tag}: τ mass vs ω V_k"), tau, v_k.scaled(om)));
                        let psi = psi_mass(p, k, n, &s.substream(2))?;
                        let factor = om / binom::<f64>(d as i64 - 1, k as i64);
                        out.push(Comparison::Estimates(format!("{tag}: ψ mass vs ω V_k / C(d−1,k)"), psi, v_k.scaled(factor)));
                        Ok(out)
                    })())
                });
            }
        }
    }
    t.outcome("flag-measure total masses")
}

fn product_parseval(_: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut rng = RandomStream::new(seed, 9);
    for d in 1..=6usize {
        for k in 0..=d {
            for j in 0..1000 {
                let a = sample_grassmannian::<f64, _>(d, k, &mut rng);
                let b = sample_grassmannian::<f64, _>(d, k, &mut rng);
                let label = format!("G({d},{k}) pair {j}");
                match products(&a, &b) {
                    Ok(p) => t.push_close(label, p.iter().map(|x| x * x).sum(), 1.0, 1e-10),
                    Err(e) => t.push(format!("{label}: {e}"), f64::NAN, 1.0, 0.0, 0.0, 0, false),
                }
            }
        }
    }
    t.outcome("Σ_i ⟨A,B⟩_i² vs 1")
}

fn sphere_moments(cfg: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let root = RandomStream::new(seed, 10);
    for d in 3..=5usize {
        for p in 0..=3u64 {
            for q in [0u64, 2] {
                let label = format!("(d,p,q) = ({d},{p},{q})");
                let exact = sphere_moment2_exact(d, p, q).expect("valid exponents").to_f64();
                let via_gamma = sphere_moment2(d, p as f64, q as f64).expect("valid exponents");
                t.push_close(format!("{label}: log-Gamma vs exact"), via_gamma, exact, 1e-12 * exact);
                let base = root.substream(100 * d as u64 + 10 * p + q);
                with_retry(&mut t, cfg.sigma, &base, |mult, s| {
                    let n = 10 * cfg.grassmannian_samples * mult;
                    let est = sphere_moment_montecarlo(d, p as f64, q as f64, n, &mut s.clone());
                    vec![Comparison::Estimates(label.clone(), est, MCEstimate::exact(exact))]
                });
            }
        }
    }
    t.outcome("sphere moments")
}

fn boundary_lemma(_: &RunConfig, seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut rng = RandomStream::new(seed, 11);
    for j in 0..10 {
        let p = match fixtures::random_gaussian(3, 20, &mut rng) {
            Ok(p) => p,
            Err(e) => {
                t.push(format!("polytope {j}: {e}"), f64::NAN, 1.0, 0.0, 0.0, 0, false);
                continue;
            }
        };
        let l = sample_grassmannian::<f64, _>(3, 1 + j % 2, &mut rng);
        for eps in [0.1, 0.3] {
            let label = format!("polytope {j}, dim L = {}, eps = {eps}", l.dim());
            match boundary_lemma_check(&p, &l, eps, 1000, &mut rng) {
                Ok(ok) => t.push(label, if ok { 1.0 } else { 0.0 }, 1.0, 0.0, 0.0, 1000, ok),
                Err(e) => t.push(format!("{label}: {e}"), f64::NAN, 1.0, 0.0, 0.0, 0, false),
            }
        }
    }
    t.outcome("boundary distance within eps · diameter")
}
