use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::operator::ReducedOperator;
use super::xd::jd;
use crate::coxeter::{indices_with_sigma, CoxeterSystem, GroupElement, Letter, SimplicialGraph};
use crate::error::{Error, Result};
use crate::fock::{norm_lower_bound, represent_element, BallBasis, FockSpace, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::hecke::{HeckeAlgebra, HeckeElement, MultiParameter};
use crate::scalar::Scalar;

/// `d · (#Cliq(Γ))^3 · Π_s |p_s(q)|`, and the same with signed `p_s`.
pub fn paper_constant(graph: &SimplicialGraph, q: &MultiParameter, d: usize) -> (f64, f64) {
    let c = graph.clique_count() as f64;
    let base = d as f64 * c * c * c;
    let n = graph.vertex_count();
    (base * q.abs_p_product(0..n), base * q.p_product(0..n))
}

#[derive(Clone, Debug)]
pub struct HaagerupConfig {
    pub q: MultiParameter,
    pub d: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleRatio {
    pub index: usize,
    pub seed: u64,
    pub l2_norm: f64,
    pub norm_estimate: f64,
    pub ratio: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HaagerupReport {
    pub system: String,
    pub q: Vec<String>,
    pub d: usize,
    pub n: usize,
    pub samples: usize,
    pub empirical_max_ratio: f64,
    pub paper_constant: f64,
    pub signed_paper_constant: f64,
    /// The constant vanishes (some `q_s = 1`), so the bound says nothing.
    pub degenerate: bool,
    pub flagged_samples: Vec<usize>,
    pub ratios: Vec<SampleRatio>,
}

impl HaagerupReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,seed,l2_norm,norm_estimate,ratio,converged\n");
        for r in &self.ratios {
            out.push_str(&format!(
                "{},{},{:.17e},{:.17e},{:.17e},{}\n",
                r.index, r.seed, r.l2_norm, r.norm_estimate, r.ratio, r.converged
            ));
        }
        out
    }
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

/// A random element of `chi_d`: independent standard complex Gaussian
/// coefficients on every word of length `d`.
pub fn random_homogeneous(
    algebra: &Arc<HeckeAlgebra<Complex64>>,
    words: &[GroupElement],
    seed: u64,
) -> HeckeElement<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    HeckeElement::from_terms(algebra, words.iter().map(|w| (w.clone(), complex_gaussian(&mut rng))))
}

/// Ratios `||x|| / ||x||_2` for random `x` of degree `d`, with the operator
/// norm estimated from below on the ball of radius `n`. Sample `i` uses seed
/// `seed + i`.
pub fn haagerup_experiment(system: &Arc<CoxeterSystem>, cfg: &HaagerupConfig) -> Result<HaagerupReport> {
    if !system.is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    if cfg.d > cfg.n {
        return Err(Error::DegreeExceedsRadius {
            degree: cfg.d,
            radius: cfg.n,
        });
    }
    let algebra = HeckeAlgebra::<Complex64>::new(system.clone(), cfg.q.clone())?;
    let basis = BallBasis::new(system.clone(), cfg.n, cfg.cap)?;
    let words: Vec<GroupElement> = basis.elements().iter().filter(|g| g.len() == cfg.d).cloned().collect();
    let ratios = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i as u64);
            let x = random_homogeneous(&algebra, &words, seed);
            let l2 = x.l2_norm();
            let est = norm_lower_bound(&represent_element(&x, &basis)?, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER);
            Ok(SampleRatio {
                index: i,
                seed,
                l2_norm: l2,
                norm_estimate: est.estimate,
                ratio: if l2 > 0.0 { est.estimate / l2 } else { 0.0 },
                converged: est.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (constant, signed) = paper_constant(system.graph(), &cfg.q, cfg.d);
    let degenerate = constant == 0.0;
    let flagged_samples = if degenerate {
        Vec::new()
    } else {
        ratios.iter().filter(|r| r.ratio > constant).map(|r| r.index).collect()
    };
    Ok(HaagerupReport {
        system: system.names().join(","),
        q: cfg.q.values().iter().map(ToString::to_string).collect(),
        d: cfg.d,
        n: cfg.n,
        samples: cfg.samples,
        empirical_max_ratio: ratios.iter().map(|r| r.ratio).fold(0.0, f64::max),
        paper_constant: constant,
        signed_paper_constant: signed,
        degenerate,
        flagged_samples,
        ratios,
    })
}

/// Largest deviation of `<p_idx j_d(T_v), j_d(T_w)>` from
/// `δ(v = w) Π_{s ∈ Γ0} p_s^2`, over the indices where `sigma^v` exists.
pub fn orthogonality_residual<S: Scalar>(
    space: &FockSpace,
    algebra: &HeckeAlgebra<S>,
    v: &[Letter],
    w: &[Letter],
) -> Result<f64> {
    let xv = jd(space, &ReducedOperator::hecke(space, algebra, v)?);
    let xw = jd(space, &ReducedOperator::hecke(space, algebra, w)?);
    if xv.degree() != xw.degree() {
        return Err(Error::DimensionMismatch(format!(
            "degrees {} and {}",
            xv.degree(),
            xw.degree()
        )));
    }
    let same = space.system().reduce(v)? == space.system().reduce(w)?;
    let mut worst = 0.0f64;
    for idx in indices_with_sigma(space.graph(), v).keys() {
        let lhs = xv.project(idx).inner(&xw)?;
        let expected = if same {
            idx.g0().iter().fold(S::one(), |acc, s| {
                let p = algebra.p(s as Letter).clone();
                acc * p.clone() * p
            })
        } else {
            S::zero()
        };
        worst = worst.max((lhs - expected).abs_sq().sqrt());
    }
    Ok(worst)
}

/// `(#Cliq(Γ))^3 (d + 1)`, the bound on the number of indices at which a
/// word of length `d` has a rearrangement.
pub fn block_count_bound(graph: &SimplicialGraph, d: usize) -> usize {
    let c = graph.clique_count();
    c * c * c * (d + 1)
}

/// The largest number of indices with a rearrangement over reduced words
/// of length `d`.
pub fn max_block_count(system: &CoxeterSystem, d: usize, cap: usize) -> Result<usize> {
    if !system.is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    let graph = system.graph();
    Ok(system
        .enumerate_ball(d, cap)?
        .iter()
        .filter(|g| g.len() == d)
        .map(|g| indices_with_sigma(graph, g.word()).len())
        .max()
        .unwrap_or(0))
}
