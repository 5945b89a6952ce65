use std::collections::HashMap;
use std::sync::Arc;

use super::sparse::SparseOperator;
use crate::coxeter::{CoxeterSystem, GroupElement, Letter};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::scalar::Scalar;

/// The basis `{delta_w : |w| <= n}` of the truncated `l^2(W)`.
#[derive(Clone, Debug)]
pub struct BallBasis {
    system: Arc<CoxeterSystem>,
    radius: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl BallBasis {
    pub fn new(system: Arc<CoxeterSystem>, radius: usize, cap: usize) -> Result<Self> {
        let elements = system.enumerate_ball(radius, cap)?;
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Ok(BallBasis {
            system,
            radius,
            elements,
            index,
        })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Whether basis vector `i` lies in the window `|w| <= n - margin`.
    pub fn in_window(&self, i: usize, margin: usize) -> bool {
        self.elements[i].len() + margin <= self.radius
    }

    /// Indices of the window `|w| <= n - margin`.
    pub fn window(&self, margin: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.in_window(i, margin)).collect()
    }
}

/// `T_s` on the ball: `T_s delta_w = delta_{sw}` if `|sw| > |w|`, else
/// `delta_{sw} + p_s delta_w`; targets outside the ball are dropped.
pub fn hecke_generator_matrix<S: Scalar>(
    algebra: &HeckeAlgebra<S>,
    s: Letter,
    basis: &BallBasis,
) -> Result<SparseOperator<S>> {
    let sys = basis.system();
    sys.check_letter(s as usize)?;
    let mut op = SparseOperator::zeros(basis.len(), basis.len());
    for (col, w) in basis.elements().iter().enumerate() {
        let sw = sys.left_mul_gen(s, w)?;
        if let Some(row) = basis.position(&sw) {
            op.add_entry(row, col, S::one());
        }
        if sys.starts_with(w, s) {
            op.add_entry(col, col, algebra.p(s).clone());
        }
    }
    Ok(op)
}

/// `P_s`: the projection onto `span{delta_v : |sv| < |v|}`.
pub fn projection_ps<S: Scalar>(s: Letter, basis: &BallBasis) -> SparseOperator<S> {
    let sys = basis.system();
    SparseOperator::diagonal(
        basis
            .elements()
            .iter()
            .map(|w| if sys.starts_with(w, s) { S::one() } else { S::zero() })
            .collect(),
    )
}

fn check_degree<S: Scalar>(x: &HeckeElement<S>, basis: &BallBasis) -> Result<()> {
    if x.degree() > basis.radius() {
        return Err(Error::DegreeExceedsRadius {
            degree: x.degree(),
            radius: basis.radius(),
        });
    }
    Ok(())
}

/// The compression `P_n x P_n`: column `w` holds the coefficients of
/// `x T_w` inside the ball.
pub fn represent_element<S: Scalar>(x: &HeckeElement<S>, basis: &BallBasis) -> Result<SparseOperator<S>> {
    check_degree(x, basis)?;
    let mut op = SparseOperator::zeros(basis.len(), basis.len());
    for (col, w) in basis.elements().iter().enumerate() {
        let mut y = x.clone();
        for &s in w.word() {
            y = y.times_generator(s)?;
        }
        for (u, c) in y.terms() {
            if let Some(row) = basis.position(u) {
                op.add_entry(row, col, c.clone());
            }
        }
    }
    Ok(op)
}

/// `sum_v x(v) T_{v_1} ... T_{v_m}` with truncated generator matrices. Agrees
/// with [`represent_element`] on the window `|u|, |w| <= n - deg(x)`.
pub fn represent_by_generators<S: Scalar>(x: &HeckeElement<S>, basis: &BallBasis) -> Result<SparseOperator<S>> {
    check_degree(x, basis)?;
    let algebra = x.algebra();
    let gens = (0..basis.system().rank())
        .map(|s| hecke_generator_matrix(algebra, s as Letter, basis))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SparseOperator::zeros(basis.len(), basis.len());
    for (v, c) in x.terms() {
        let mut m = SparseOperator::identity(basis.len()).scale(c);
        for &s in v.word().iter().rev() {
            m = gens[s as usize].matmul(&m)?;
        }
        out = out.add(&m)?;
    }
    Ok(out)
}

/// `<x delta_e, delta_e>` read off a matrix.
pub fn vacuum_coefficient<S: Scalar>(op: &SparseOperator<S>, basis: &BallBasis) -> S {
    let e = basis
        .position(&GroupElement::identity())
        .expect("identity is in every ball");
    op.get(e, e)
}

/// The algebra a basis belongs to must share its system.
pub fn check_system<S: Scalar>(algebra: &HeckeAlgebra<S>, basis: &BallBasis) -> Result<()> {
    if **algebra.system() != **basis.system() {
        return Err(Error::MismatchedAlgebras);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Exponent, DEFAULT_BALL_CAP};
    use crate::hecke::MultiParameter;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn setup(sys: CoxeterSystem, q: BigRational, n: usize) -> (Arc<HeckeAlgebra<BigRational>>, BallBasis) {
        let sys = Arc::new(sys);
        let a = HeckeAlgebra::new(sys.clone(), MultiParameter::uniform(&sys, q).unwrap()).unwrap();
        (a, BallBasis::new(sys, n, DEFAULT_BALL_CAP).unwrap())
    }

    #[test]
    fn generator_matrix_entries() {
        let (a, basis) = setup(CoxeterSystem::dihedral(Exponent::Infinite).unwrap(), ratio(4, 1), 1);
        let t = hecke_generator_matrix(&a, 0, &basis).unwrap();
        let s = basis.position(&GroupElement::from_normal_form(vec![0])).unwrap();
        assert_eq!(t.get(s, s), ratio(3, 2));
        // self-adjoint on the window
        let w = basis.window(1);
        for &i in &w {
            for &j in &w {
                assert_eq!(t.get(i, j), t.get(j, i));
            }
        }
    }

    #[test]
    fn permutation_at_q_one() {
        let (a, basis) = setup(CoxeterSystem::free(3), ratio(1, 1), 3);
        let t = hecke_generator_matrix(&a, 1, &basis).unwrap();
        assert!(t.entries().all(|(_, _, v)| *v == ratio(1, 1)));
    }

    #[test]
    fn projection_rank() {
        let (_, basis) = setup(CoxeterSystem::dihedral(Exponent::Infinite).unwrap(), ratio(1, 1), 5);
        let p = projection_ps::<BigRational>(0, &basis);
        assert!(p.is_diagonal_projection());
        assert_eq!(p.nnz(), 5);
        assert_eq!(p.get(0, 0), ratio(0, 1));
    }

    #[test]
    fn compression_matches_generator_products() {
        let (a, basis) = setup(CoxeterSystem::free(3), ratio(9, 4), 5);
        let x = &HeckeElement::from_word(&a, &[0, 1]).unwrap() + &HeckeElement::generator(&a, 2).scale(&ratio(1, 3));
        let exact = represent_element(&x, &basis).unwrap();
        let prod = represent_by_generators(&x, &basis).unwrap();
        let m = x.degree();
        assert_eq!(
            exact.max_abs_diff_on(&prod, |i| basis.in_window(i, m), |j| basis.in_window(j, m)),
            0.0
        );
        assert_eq!(vacuum_coefficient(&exact, &basis), x.trace());
    }

    #[test]
    fn degree_check() {
        let (a, basis) = setup(CoxeterSystem::free(2), ratio(1, 1), 1);
        let x = HeckeElement::from_word(&a, &[0, 1]).unwrap();
        assert!(matches!(
            represent_element(&x, &basis),
            Err(Error::DegreeExceedsRadius { .. })
        ));
    }
}
