use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChingReport {
    pub samples: usize,
    /// Samples with both sides zero, left out of the maximum.
    pub skipped: usize,
    pub max_ratio: f64,
    pub ratios: Vec<f64>,
}

type GroupVector = BTreeMap<GroupElement, Complex64>;

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `lambda_{g^{-1}} x lambda_g`.
fn conjugate(system: &CoxeterSystem, x: &GroupVector, g: &GroupElement) -> Result<GroupVector> {
    let gi = system.inverse(g);
    let mut out = GroupVector::new();
    for (w, c) in x {
        let v = system.multiply(&system.multiply(&gi, w)?, g)?;
        *out.entry(v).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    Ok(out)
}

fn distance(x: &GroupVector, y: &GroupVector) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    x.keys()
        .chain(y.keys().filter(|k| !x.contains_key(*k)))
        .map(|k| (x.get(k).unwrap_or(&zero) - y.get(k).unwrap_or(&zero)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Ratios `||x - tau(x)||_2 / (14 max_i ||x - lambda_{g_i^{-1}} x lambda_{g_i}||_2)`
/// for Gaussian `x` supported on the ball of radius `radius`. Sample `i` uses
/// seed `seed + i`.
pub fn ching_inequality_test(
    system: &CoxeterSystem,
    elements: &[GroupElement],
    radius: usize,
    samples: usize,
    seed: u64,
) -> Result<ChingReport> {
    let ball = system.enumerate_ball(radius, crate::coxeter::DEFAULT_BALL_CAP)?;
    let mut ratios = Vec::with_capacity(samples);
    let mut skipped = 0;
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let x: GroupVector = ball.iter().map(|w| (w.clone(), gaussian(&mut rng))).collect();
        let lhs = x
            .iter()
            .filter(|(w, _)| !w.is_identity())
            .map(|(_, c)| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let mut worst = 0.0f64;
        for g in elements {
            worst = worst.max(distance(&x, &conjugate(system, &x, g)?));
        }
        let rhs = 14.0 * worst;
        if rhs == 0.0 {
            skipped += 1;
            continue;
        }
        ratios.push(lhs / rhs);
    }
    Ok(ChingReport {
        samples,
        skipped,
        max_ratio: ratios.iter().copied().fold(0.0, f64::max),
        ratios,
    })
}

/// `| ||sum xi_i||^2 + sum_{i<j} ||xi_i - xi_j||^2 - (n+1) sum ||xi_i||^2 |`.
pub fn parallelogram_residual(vectors: &[Vec<Complex64>]) -> f64 {
    let sq = |v: &[Complex64]| v.iter().map(Complex64::norm_sqr).sum::<f64>();
    let dim = vectors.first().map_or(0, Vec::len);
    let total: Vec<Complex64> = (0..dim).map(|k| vectors.iter().map(|v| v[k]).sum()).collect();
    let mut lhs = sq(&total);
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let d: Vec<Complex64> = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a - b).collect();
            lhs += sq(&d);
        }
    }
    let rhs = vectors.len() as f64 * vectors.iter().map(|v| sq(v)).sum::<f64>();
    (lhs - rhs).abs()
}

/// Largest residual over `samples` random tuples of `count` Gaussian vectors
/// in `C^dim`.
pub fn parallelogram_identity_test(samples: usize, count: usize, dim: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let v: Vec<Vec<Complex64>> = (0..count)
                .map(|_| (0..dim).map(|_| gaussian(&mut rng)).collect())
                .collect();
            parallelogram_residual(&v)
        })
        .fold(0.0, f64::max)
}
