use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::system::CoxeterSystem;
use super::word::GroupElement;
use crate::error::{Error, Result};

/// Default cap on the number of elements a ball may contain.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

impl CoxeterSystem {
    /// Every element of length at most `radius`, sorted by `(length, lex)`.
    pub fn enumerate_ball(&self, radius: usize, cap: usize) -> Result<Vec<GroupElement>> {
        let mut out = vec![GroupElement::identity()];
        let mut level = vec![GroupElement::identity()];
        for len in 1..=radius {
            let mut next = BTreeSet::new();
            for g in &level {
                for s in 0..self.rank() as u8 {
                    if self.ends_with(g, s) {
                        continue;
                    }
                    let h = self.right_mul_gen(g, s)?;
                    debug_assert_eq!(h.len(), len);
                    next.insert(h);
                }
            }
            if out.len() + next.len() > cap {
                return Err(Error::BallTooLarge { radius, cap });
            }
            level = next.into_iter().collect();
            out.extend(level.iter().cloned());
            if level.is_empty() {
                break;
            }
        }
        Ok(out)
    }

    /// Growth coefficients by multidegree up to total degree `max_degree`.
    pub fn growth_coefficients(&self, max_degree: usize, cap: usize) -> Result<GrowthSeries> {
        let ball = self.enumerate_ball(max_degree, cap)?;
        let mut coefficients = BTreeMap::new();
        for g in &ball {
            *coefficients.entry(g.letter_counts(self.rank())).or_insert(0u64) += 1;
        }
        Ok(GrowthSeries {
            rank: self.rank(),
            max_degree,
            coefficients,
        })
    }
}

/// Truncated multivariate growth series `sum_w z_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    pub rank: usize,
    pub max_degree: usize,
    /// Multidegree (exponent per generator) to count.
    pub coefficients: BTreeMap<Vec<u32>, u64>,
}

impl GrowthSeries {
    /// Single-variable specialization: number of elements of each length.
    pub fn by_length(&self) -> Vec<u64> {
        let mut out = vec![0; self.max_degree + 1];
        for (alpha, &c) in &self.coefficients {
            let d: u32 = alpha.iter().sum();
            if (d as usize) <= self.max_degree {
                out[d as usize] += c;
            }
        }
        out
    }

    pub fn coefficient(&self, alpha: &[u32]) -> u64 {
        self.coefficients.get(alpha).copied().unwrap_or(0)
    }

    /// Evaluate the truncated series at a real point.
    pub fn evaluate(&self, z: &[f64]) -> f64 {
        self.coefficients
            .iter()
            .map(|(alpha, &c)| c as f64 * alpha.iter().zip(z).map(|(&a, &x)| x.powi(a as i32)).product::<f64>())
            .sum()
    }

    /// Root-test estimate `c_n^{-1/n}` of the single-variable radius from the
    /// last non-zero coefficient. Heuristic: no error bound is available.
    pub fn radius_estimate(&self) -> Option<f64> {
        let counts = self.by_length();
        let (n, &c) = counts.iter().enumerate().rev().find(|(n, &c)| *n > 0 && c > 0)?;
        Some((c as f64).powf(-1.0 / n as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::system::Exponent;

    #[test]
    fn small_balls() {
        let d = CoxeterSystem::dihedral(Exponent::Infinite).unwrap();
        assert_eq!(d.enumerate_ball(0, 10).unwrap(), vec![GroupElement::identity()]);
        let ball = d.enumerate_ball(2, 100).unwrap();
        let words: Vec<&[u8]> = ball.iter().map(|g| g.word()).collect();
        assert_eq!(words, vec![&[][..], &[0], &[1], &[0, 1], &[1, 0]]);
        assert_eq!(CoxeterSystem::free(3).enumerate_ball(3, 100).unwrap().len(), 22);
    }

    #[test]
    fn finite_group_ball_saturates() {
        let a2 = CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap();
        assert_eq!(a2.enumerate_ball(10, 100).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = CoxeterSystem::free(3);
        assert!(matches!(sys.enumerate_ball(6, 50), Err(Error::BallTooLarge { .. })));
    }

    #[test]
    fn growth_by_length() {
        let d = CoxeterSystem::dihedral(Exponent::Infinite).unwrap();
        assert_eq!(d.growth_coefficients(4, 100).unwrap().by_length(), vec![1, 2, 2, 2, 2]);
        let f = CoxeterSystem::free(3);
        assert_eq!(
            f.growth_coefficients(4, 1000).unwrap().by_length(),
            vec![1, 3, 6, 12, 24]
        );
    }
}
