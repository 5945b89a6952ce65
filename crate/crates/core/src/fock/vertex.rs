use num_complex::Complex64;

use super::space::LocalMatrix;
use crate::error::{Error, Result};

/// `C^X` with a faithful state given by positive point weights.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianVertexAlgebra {
    weights: Vec<f64>,
}

impl AbelianVertexAlgebra {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidParameter(
                "a vertex algebra needs at least two points".into(),
            ));
        }
        if weights.iter().any(|&w| w.is_nan() || w <= 0.0) {
            return Err(Error::InvalidParameter("state weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("state weights sum to {total}, not 1")));
        }
        Ok(AbelianVertexAlgebra { weights })
    }

    /// The Hecke vertex `C_q[Z_2]`: weights `1/(1+q)` and `q/(1+q)`.
    pub fn hecke(q: f64) -> Result<Self> {
        AbelianVertexAlgebra::new(vec![1.0 / (1.0 + q), q / (1.0 + q)])
    }

    /// Values of `T_s` at the two points of [`Self::hecke`].
    pub fn hecke_generator(q: f64) -> Vec<f64> {
        vec![q.sqrt(), -1.0 / q.sqrt()]
    }

    pub fn point_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn state(&self, f: &[f64]) -> f64 {
        self.weights.iter().zip(f).map(|(w, x)| w * x).sum()
    }

    fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weights.iter().zip(f).zip(g).map(|((w, a), b)| w * a * b).sum()
    }

    /// Orthonormal basis of `L^2(C^X, phi)` starting with the unit, obtained
    /// by Gram-Schmidt on `1, 1_{x_0}, ..., 1_{x_{N-2}}`.
    pub fn orthonormal_basis(&self) -> Vec<Vec<f64>> {
        let n = self.point_count();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut candidates = vec![vec![1.0; n]];
        for x in 0..n - 1 {
            let mut e = vec![0.0; n];
            e[x] = 1.0;
            candidates.push(e);
        }
        for mut f in candidates {
            for b in &basis {
                let c = self.inner(&f, b);
                f.iter_mut().zip(b).for_each(|(a, bb)| *a -= c * bb);
            }
            let norm = self.inner(&f, &f).sqrt();
            f.iter_mut().for_each(|a| *a /= norm);
            basis.push(f);
        }
        basis
    }

    /// Matrix of multiplication by `f` in [`Self::orthonormal_basis`].
    pub fn multiplication_matrix(&self, f: &[f64]) -> Result<LocalMatrix<Complex64>> {
        if f.len() != self.point_count() {
            return Err(Error::DimensionMismatch(format!(
                "function has {} values, algebra has {} points",
                f.len(),
                self.point_count()
            )));
        }
        let e = self.orthonormal_basis();
        let n = e.len();
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v: f64 = (0..n).map(|x| self.weights[x] * f[x] * e[j][x] * e[i][x]).sum();
                        Complex64::new(v, 0.0)
                    })
                    .collect()
            })
            .collect())
    }
}
