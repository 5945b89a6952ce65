use crate::coxeter::{Letter, Split};
use crate::error::{Error, Result};
use crate::fock::{hecke_vertex_matrix, Factor, FockKey, FockSpace, FockVector, LocalMatrix, Proj};
use crate::hecke::HeckeAlgebra;
use crate::scalar::Scalar;

/// A reduced operator `a_1 ... a_d` of type `v_1 ... v_d`, each `a_i` a
/// state-zero element of `A_{v_i}` given by its local matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedOperator<S> {
    letters: Vec<Letter>,
    mats: Vec<LocalMatrix<S>>,
}

impl<S: Scalar> ReducedOperator<S> {
    pub fn new(space: &FockSpace, letters: Vec<Letter>, mats: Vec<LocalMatrix<S>>) -> Result<Self> {
        if letters.len() != mats.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} letters, {} matrices",
                letters.len(),
                mats.len()
            )));
        }
        for &v in &letters {
            space.system().check_letter(v as usize)?;
        }
        if !space.system().is_reduced(&letters)? {
            return Err(Error::InvalidParameter(format!("word {letters:?} is not reduced")));
        }
        for (&v, m) in letters.iter().zip(&mats) {
            let n = space.dims()[v as usize];
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!("vertex {v} needs a {n}x{n} matrix")));
            }
            if !m[0][0].is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "factor at vertex {v} has non-zero state"
                )));
            }
        }
        Ok(ReducedOperator { letters, mats })
    }

    /// `T_{v_1} ... T_{v_d}` for a reduced word.
    pub fn hecke(space: &FockSpace, algebra: &HeckeAlgebra<S>, letters: &[Letter]) -> Result<Self> {
        let mats = letters.iter().map(|&s| hecke_vertex_matrix(algebra.p(s))).collect();
        ReducedOperator::new(space, letters.to_vec(), mats)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn matrices(&self) -> &[LocalMatrix<S>] {
        &self.mats
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    fn factor(&self, i: usize, left: Proj, right: Proj) -> Factor<S> {
        Factor {
            vertex: self.letters[i],
            matrix: self.mats[i].clone(),
            left,
            right,
        }
    }

    /// Factors of the plain product `a_1 ... a_d`.
    pub fn product_factors(&self) -> Vec<Factor<S>> {
        (0..self.degree())
            .map(|i| self.factor(i, Proj::Full, Proj::Full))
            .collect()
    }

    /// Factors `(P a P^perp)...(P a P)...(P^perp a P)` in the order of `split`.
    pub fn summand_factors(&self, split: &Split) -> Vec<Factor<S>> {
        let mut out = Vec::with_capacity(self.degree());
        out.extend(
            split
                .creation
                .iter()
                .map(|&i| self.factor(i, Proj::Start, Proj::NotStart)),
        );
        out.extend(split.diagonal.iter().map(|&i| self.factor(i, Proj::Start, Proj::Start)));
        out.extend(
            split
                .annihilation
                .iter()
                .map(|&i| self.factor(i, Proj::NotStart, Proj::Start)),
        );
        out
    }

    /// `a_1 ... a_d` applied to a basis vector.
    pub fn apply(&self, space: &FockSpace, key: &FockKey) -> FockVector<S> {
        space.apply_factors_to_key(key, &self.product_factors())
    }
}
