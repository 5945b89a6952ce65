use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ball::GrowthSeries;
use super::system::CoxeterSystem;
use crate::error::{Error, Result};

/// The family `Z_2^{k_1} * ... * Z_2^{k_l}` with its closed-form growth series
/// `W(z) = (sum_m prod_i (1 + z_i^{(m)})^{-1} - (l - 1))^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelianProduct {
    blocks: Vec<usize>,
}

impl FreeAbelianProduct {
    pub fn new(blocks: &[usize]) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidSystem("block sizes must be positive".into()));
        }
        Ok(FreeAbelianProduct {
            blocks: blocks.to_vec(),
        })
    }

    /// Recognise a right-angled system whose commutation graph is a disjoint
    /// union of complete graphs. Generators need not be grouped contiguously.
    pub fn detect(system: &CoxeterSystem) -> Option<(Self, Vec<Vec<usize>>)> {
        if !system.is_right_angled() {
            return None;
        }
        let graph = system.graph();
        let mut seen = vec![false; system.rank()];
        let mut groups = Vec::new();
        for v in 0..system.rank() {
            if seen[v] {
                continue;
            }
            let mut block = graph.neighbors(v);
            block.insert(v);
            if !graph.is_clique(block) {
                return None;
            }
            for u in block.iter() {
                let mut closed = graph.neighbors(u);
                closed.insert(u);
                if closed != block {
                    return None;
                }
                seen[u] = true;
            }
            groups.push(block.to_vec());
        }
        let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        Some((FreeAbelianProduct { blocks: sizes }, groups))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn free_factor_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn system(&self) -> CoxeterSystem {
        CoxeterSystem::free_abelian_product(&self.blocks).expect("blocks validated")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {len}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// `sum_m prod_i (1 + z_i^{(m)})^{-1}`; generators ordered block by block.
    pub fn region_value(&self, z: &[f64]) -> Result<f64> {
        self.check_len(z.len())?;
        let mut total = 0.0;
        let mut start = 0;
        for &k in &self.blocks {
            total += z[start..start + k].iter().map(|x| 1.0 / (1.0 + x)).product::<f64>();
            start += k;
        }
        Ok(total)
    }

    /// Exact version of [`Self::region_value`].
    pub fn region_value_exact(&self, z: &[BigRational]) -> Result<BigRational> {
        self.check_len(z.len())?;
        let one = BigRational::one();
        let mut total = BigRational::zero();
        let mut start = 0;
        for &k in &self.blocks {
            let mut prod = one.clone();
            for x in &z[start..start + k] {
                prod /= &one + x;
            }
            total += prod;
            start += k;
        }
        Ok(total)
    }

    /// `l - 1`.
    pub fn threshold(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Closed-form value of the growth series at a real point.
    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        let denom = self.region_value(z)? - self.threshold() as f64;
        if denom <= 0.0 {
            return Err(Error::Pole(format!("denominator {denom} is not positive")));
        }
        Ok(1.0 / denom)
    }

    /// Membership in the convergence region `z in [0,1]^S` with
    /// `sum_m prod_i (1 + z_i)^{-1} > l - 1`.
    pub fn in_region(&self, z: &[f64]) -> Result<bool> {
        if z.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Ok(false);
        }
        Ok(self.region_value(z)? > self.threshold() as f64)
    }

    /// Taylor coefficients of the closed form up to total degree `max_degree`,
    /// computed by multivariate power-series inversion.
    pub fn taylor_coefficients(&self, max_degree: usize) -> GrowthSeries {
        let n = self.rank();
        // f = sum_m prod_i (1 + z_i)^{-1} - (l - 1), a series with f(0) = 1
        let mut f: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        let mut start = 0;
        for &k in &self.blocks {
            for alpha in monomials(k, max_degree) {
                let deg: u32 = alpha.iter().sum();
                let sign = if deg.is_multiple_of(2) { 1 } else { -1 };
                let mut full = vec![0u32; n];
                full[start..start + k].copy_from_slice(&alpha);
                *f.entry(full).or_insert(0) += sign;
            }
            start += k;
        }
        *f.entry(vec![0; n]).or_insert(0) -= self.threshold() as i128;
        debug_assert_eq!(f[&vec![0; n]], 1);

        // W f = 1, solved degree by degree
        let mut all: Vec<Vec<u32>> = monomials(n, max_degree);
        all.sort_by_key(|a| a.iter().sum::<u32>());
        let mut w: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        for alpha in &all {
            let mut value: i128 = if alpha.iter().all(|&a| a == 0) { 1 } else { 0 };
            for (beta, &fb) in &f {
                if beta.iter().all(|&b| b == 0) {
                    continue;
                }
                if beta.iter().zip(alpha).all(|(b, a)| b <= a) {
                    let rest: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
                    if let Some(&wr) = w.get(&rest) {
                        value -= fb * wr;
                    }
                }
            }
            w.insert(alpha.clone(), value);
        }
        let coefficients = w
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(a, c)| (a, u64::try_from(c).expect("growth coefficients are non-negative")))
            .collect();
        GrowthSeries {
            rank: n,
            max_degree,
            coefficients,
        }
    }
}

/// All exponent vectors of length `n` with total degree at most `max_degree`.
fn monomials(n: usize, max_degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(i: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[i] = e;
            rec(i + 1, left - e, current, out);
        }
        current[i] = 0;
    }
    rec(0, max_degree as u32, &mut current, &mut out);
    out
}
