use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::sparse::SparseOperator;
use crate::scalar::Scalar;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0;

/// Result of [`norm_lower_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    pub estimate: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Compressed row storage for repeated products.
struct Csr {
    rows: usize,
    start: Vec<usize>,
    col: Vec<usize>,
    val: Vec<Complex64>,
}

impl Csr {
    fn new(op: &SparseOperator<Complex64>) -> Self {
        let mut start = vec![0; op.rows() + 1];
        let mut col = Vec::with_capacity(op.nnz());
        let mut val = Vec::with_capacity(op.nnz());
        for (r, c, v) in op.entries() {
            start[r + 1] += 1;
            col.push(c);
            val.push(*v);
        }
        for r in 0..op.rows() {
            start[r + 1] += start[r];
        }
        Csr {
            rows: op.rows(),
            start,
            col,
            val,
        }
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in self.start[r]..self.start[r + 1] {
                acc += self.val[i] * x[self.col[i]];
            }
            y[r] = acc;
        }
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Power iteration on `A* A` from a seeded Gaussian start vector. The
/// returned value is `sqrt` of the best Rayleigh quotient seen, hence a lower
/// bound for the operator norm of the compression and of the operator it
/// compresses.
pub fn norm_lower_bound<S: Scalar>(op: &SparseOperator<S>, tol: f64, max_iter: usize) -> NormEstimate {
    norm_lower_bound_seeded(op, tol, max_iter, DEFAULT_SEED)
}

pub fn norm_lower_bound_seeded<S: Scalar>(
    op: &SparseOperator<S>,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> NormEstimate {
    let a = op.to_complex();
    if a.nnz() == 0 || a.cols() == 0 {
        return NormEstimate {
            estimate: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let fwd = Csr::new(&a);
    let back = Csr::new(&a.adjoint());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..a.cols())
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect();
    let n0 = norm(&v);
    v.iter_mut().for_each(|x| *x /= n0);
    let mut av = vec![Complex64::new(0.0, 0.0); a.rows()];
    let mut w = vec![Complex64::new(0.0, 0.0); a.cols()];
    let mut best = 0.0f64;
    let mut previous = f64::NAN;
    for it in 1..=max_iter {
        fwd.apply(&v, &mut av);
        // Rayleigh quotient of A*A at the unit vector v
        let rq = av.iter().map(Complex64::norm_sqr).sum::<f64>();
        best = best.max(rq);
        back.apply(&av, &mut w);
        let nw = norm(&w);
        if nw == 0.0 {
            return NormEstimate {
                estimate: best.sqrt(),
                iterations: it,
                converged: true,
            };
        }
        if (rq - previous).abs() <= tol * rq {
            return NormEstimate {
                estimate: best.sqrt(),
                iterations: it,
                converged: true,
            };
        }
        previous = rq;
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / nw;
        }
    }
    NormEstimate {
        estimate: best.sqrt(),
        iterations: max_iter,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let zero = SparseOperator::<Complex64>::zeros(3, 3);
        assert_eq!(
            norm_lower_bound(&zero, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).estimate,
            0.0
        );
        let d = SparseOperator::diagonal(vec![Complex64::new(3.0, 0.0); 4]);
        let e = norm_lower_bound(&d, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER);
        assert!((e.estimate - 3.0).abs() < 1e-12 && e.converged);
    }

    #[test]
    fn rectangular() {
        // [[3, 4]] has norm 5
        let op = SparseOperator::from_triplets(
            1,
            2,
            [(0, 0, Complex64::new(3.0, 0.0)), (0, 1, Complex64::new(4.0, 0.0))],
        )
        .unwrap();
        let e = norm_lower_bound(&op, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER);
        assert!((e.estimate - 5.0).abs() < 1e-9);
    }
}
