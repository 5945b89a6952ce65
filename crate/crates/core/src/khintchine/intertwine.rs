use std::collections::BTreeMap;

use super::operator::ReducedOperator;
use super::xd::{jd, jd_hecke, JdKey, XdElement};
use crate::coxeter::{sigma_permutation, split, GroupElement, Letter, SplitRule, SummandIndex, VertexSet};
use crate::error::{Error, Result};
use crate::fock::{add_to, vector_diff, FockKey, FockSpace, FockVector, SparseOperator};
use crate::hecke::HeckeElement;
use crate::scalar::Scalar;

/// The index of the `Q` map paired with `idx` in the intertwiner identity:
/// `(l, d - l - k, Γ0, Γ2, Γ1)`.
pub fn q_index(idx: &SummandIndex, d: usize) -> SummandIndex {
    SummandIndex::new(idx.l, d - idx.l - idx.k, idx.g0(), idx.g2(), idx.g1())
}

/// `Q_{l,k,Γ0,Γ1,Γ2}` on a basis vector of the graph product Fock space;
/// `None` when the rearrangement does not exist.
pub fn map_q(space: &FockSpace, idx: &SummandIndex, key: &FockKey) -> Option<FockKey> {
    let s = split(space.graph(), &key.word, SplitRule::Q, idx)?;
    Some(FockKey {
        word: s.apply(&key.word),
        slots: s.apply(&key.slots),
    })
}

/// `R_{l,k,Γ0,Γ1}` on a basis vector.
pub fn map_r(space: &FockSpace, l: usize, k: usize, g0: VertexSet, g1: VertexSet, key: &FockKey) -> Option<FockKey> {
    let idx = SummandIndex::new(l, k, g0, g1, VertexSet::EMPTY);
    let s = split(space.graph(), &key.word, SplitRule::R, &idx)?;
    Some(FockKey {
        word: s.apply(&key.word),
        slots: s.apply(&key.slots),
    })
}

/// `R^*` on a basis vector of the free Fock space: the graph basis vector
/// mapped onto it, if any.
pub fn r_adjoint(
    space: &FockSpace,
    l: usize,
    k: usize,
    g0: VertexSet,
    g1: VertexSet,
    free_key: &FockKey,
) -> Option<FockKey> {
    if !space.system().is_reduced(&free_key.word).ok()? {
        return None;
    }
    let w = space.normalize(&free_key.word, &free_key.slots);
    (map_r(space, l, k, g0, g1, &w).as_ref() == Some(free_key)).then_some(w)
}

/// The product map of one elementary tensor of a block applied to a free
/// basis vector: annihilate `col` from the front, act on the clique letters,
/// then create `row`.
pub fn pi_f_entry(g0: VertexSet, entry: &JdKey, u: &FockKey) -> Option<FockKey> {
    let m = entry.col.len();
    let clique: Vec<Letter> = g0.iter().map(|v| v as Letter).collect();
    let l = clique.len();
    if u.len() < m + l || entry.diag.len() != l {
        return None;
    }
    // the annihilation factor acting first is the last one
    for (i, &(v, j)) in entry.col.iter().rev().enumerate() {
        if u.word[i] != v || u.slots[i] != j {
            return None;
        }
    }
    for (i, (&v, &(_, inn))) in clique.iter().zip(&entry.diag).enumerate() {
        if u.word[m + i] != v || u.slots[m + i] != inn {
            return None;
        }
    }
    let mut word: Vec<Letter> = entry.row.iter().map(|p| p.0).collect();
    let mut slots: Vec<u8> = entry.row.iter().map(|p| p.1).collect();
    word.extend_from_slice(&clique);
    slots.extend(entry.diag.iter().map(|p| p.0));
    word.extend_from_slice(&u.word[m + l..]);
    slots.extend_from_slice(&u.slots[m + l..]);
    // each creation factor needs a word not already starting with its letter
    let k = entry.row.len();
    if (0..k).any(|i| i + 1 < word.len() && word[i] == word[i + 1]) {
        return None;
    }
    Some(FockKey { word, slots })
}

/// `R^* π^f_idx(ξ_idx) Q` applied to a graph basis vector.
pub fn intertwiner_lhs<S: Scalar>(
    space: &FockSpace,
    xd: &XdElement<S>,
    idx: &SummandIndex,
    key: &FockKey,
) -> FockVector<S> {
    let mut out = FockVector::new();
    let Some(block) = xd.block(idx) else {
        return out;
    };
    let Some(u) = map_q(space, &q_index(idx, xd.degree()), key) else {
        return out;
    };
    for (entry, c) in block {
        if let Some(f) = pi_f_entry(idx.g0(), entry, &u) {
            if let Some(w) = r_adjoint(space, idx.l, idx.k, idx.g0(), idx.g1(), &f) {
                add_to(&mut out, w, c.clone());
            }
        }
    }
    out
}

/// `π_d(ξ)` applied to a basis vector: the sum over all blocks.
pub fn pi_d<S: Scalar>(space: &FockSpace, xd: &XdElement<S>, key: &FockKey) -> FockVector<S> {
    let mut out = FockVector::new();
    for idx in xd.blocks().keys() {
        for (k, c) in intertwiner_lhs(space, xd, idx, key) {
            add_to(&mut out, k, c);
        }
    }
    out
}

fn window(space: &FockSpace, d: usize, n: usize, cap: usize) -> Result<Vec<FockKey>> {
    if d > n {
        return Err(Error::DegreeExceedsRadius { degree: d, radius: n });
    }
    space.basis(n - d, cap)
}

/// Largest entrywise difference between `R^* π^f(j_d(x)_idx) Q` and the
/// summand of the decomposition at `idx`, over inputs of length at most
/// `n - d`.
pub fn intertwiner_check<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    idx: &SummandIndex,
    n: usize,
    cap: usize,
) -> Result<f64> {
    intertwiner_check_all(space, op, std::slice::from_ref(idx), n, cap)
}

/// [`intertwiner_check`] over several indices, sharing `j_d(x)` and the
/// input window.
pub fn intertwiner_check_all<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    indices: &[SummandIndex],
    n: usize,
    cap: usize,
) -> Result<f64> {
    let xd = jd(space, op);
    let keys = window(space, op.degree(), n, cap)?;
    let mut worst = 0.0f64;
    for idx in indices {
        if !idx.is_valid(space.graph(), op.degree()) {
            return Err(Error::InvalidParameter(format!("malformed index {idx:?}")));
        }
        let factors = sigma_permutation(space.graph(), op.letters(), idx).map(|s| op.summand_factors(&s));
        if factors.is_none() && xd.block(idx).is_none() {
            continue;
        }
        for key in &keys {
            let lhs = intertwiner_lhs(space, &xd, idx, key);
            let rhs = match &factors {
                Some(f) => space.apply_factors_to_key(key, f),
                None => FockVector::new(),
            };
            worst = worst.max(vector_diff(&lhs, &rhs));
        }
    }
    Ok(worst)
}

/// Largest entrywise difference between `π_d(j_d(x))` and `a_1 ... a_d`.
pub fn reconstruction_check<S: Scalar>(
    space: &FockSpace,
    op: &ReducedOperator<S>,
    n: usize,
    cap: usize,
) -> Result<f64> {
    let xd = jd(space, op);
    let mut worst = 0.0f64;
    for key in window(space, op.degree(), n, cap)? {
        worst = worst.max(vector_diff(&pi_d(space, &xd, &key), &op.apply(space, &key)));
    }
    Ok(worst)
}

/// Reconstruction for a homogeneous Hecke element, compared against left
/// multiplication on `l^2(W)` with `delta_w` identified with the Fock
/// vector of `w`.
pub fn reconstruction_check_hecke<S: Scalar>(
    space: &FockSpace,
    x: &HeckeElement<S>,
    n: usize,
    cap: usize,
) -> Result<f64> {
    if space.dims().iter().any(|&m| m != 2) {
        return Err(Error::InvalidParameter(
            "the Hecke identification needs two-dimensional vertices".into(),
        ));
    }
    let xd = jd_hecke(space, x)?;
    let mut worst = 0.0f64;
    for key in window(space, x.degree(), n, cap)? {
        let w = GroupElement::from_normal_form(key.word.clone());
        let product = x.checked_mul(&HeckeElement::basis(x.algebra(), w))?;
        let expected: FockVector<S> = product
            .terms()
            .map(|(g, c)| (FockKey::plain(g.word().to_vec()), c.clone()))
            .collect();
        worst = worst.max(vector_diff(&pi_d(space, &xd, &key), &expected));
    }
    Ok(worst)
}

fn partial_isometry<S: Scalar>(
    graph_basis: &[FockKey],
    free_basis: &[FockKey],
    map: impl Fn(&FockKey) -> Option<FockKey>,
) -> SparseOperator<S> {
    let index: BTreeMap<&FockKey, usize> = free_basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseOperator::zeros(free_basis.len(), graph_basis.len());
    for (j, key) in graph_basis.iter().enumerate() {
        if let Some(i) = map(key).and_then(|f| index.get(&f).copied()) {
            m.add_entry(i, j, S::one());
        }
    }
    m
}

/// Matrix of `Q_idx` from `graph_basis` to `free_basis`.
pub fn partial_isometry_q<S: Scalar>(
    space: &FockSpace,
    idx: &SummandIndex,
    graph_basis: &[FockKey],
    free_basis: &[FockKey],
) -> SparseOperator<S> {
    partial_isometry(graph_basis, free_basis, |k| map_q(space, idx, k))
}

/// Matrix of `R_{l,k,Γ0,Γ1}` from `graph_basis` to `free_basis`.
pub fn partial_isometry_r<S: Scalar>(
    space: &FockSpace,
    l: usize,
    k: usize,
    g0: VertexSet,
    g1: VertexSet,
    graph_basis: &[FockKey],
    free_basis: &[FockKey],
) -> SparseOperator<S> {
    partial_isometry(graph_basis, free_basis, |key| map_r(space, l, k, g0, g1, key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{summand_indices, CoxeterSystem, SimplicialGraph};
    use crate::hecke::{HeckeAlgebra, MultiParameter};
    use crate::scalar::ratio;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn algebra(graph: &SimplicialGraph, q: BigRational) -> Arc<HeckeAlgebra<BigRational>> {
        let sys = Arc::new(CoxeterSystem::from_graph(graph));
        HeckeAlgebra::new(sys.clone(), MultiParameter::uniform(&sys, q).unwrap()).unwrap()
    }

    #[test]
    fn q_of_vacuum() {
        let space = FockSpace::hecke(SimplicialGraph::cycle(5));
        let idx = SummandIndex::new(0, 0, VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
        assert_eq!(map_q(&space, &idx, &FockKey::vacuum()), Some(FockKey::vacuum()));
    }

    #[test]
    fn intertwiner_pentagon() {
        let g = SimplicialGraph::cycle(5);
        let space = FockSpace::hecke(g.clone());
        for q in [ratio(1, 4), ratio(1, 1), ratio(4, 1)] {
            let a = algebra(&g, q);
            let op = ReducedOperator::hecke(&space, &a, &[0, 2, 1]).unwrap();
            for idx in summand_indices(&g, 3) {
                assert_eq!(
                    intertwiner_check(&space, &op, &idx, 5, 100_000).unwrap(),
                    0.0,
                    "{idx:?}"
                );
            }
            assert_eq!(reconstruction_check(&space, &op, 5, 100_000).unwrap(), 0.0);
        }
    }

    #[test]
    fn hecke_reconstruction_matches_regular_representation() {
        let g = SimplicialGraph::edgeless(3);
        let space = FockSpace::hecke(g.clone());
        let a = algebra(&g, ratio(9, 4));
        let x = &HeckeElement::from_word(&a, &[0, 1]).unwrap()
            + &HeckeElement::from_word(&a, &[2, 0]).unwrap().scale(&ratio(3, 1));
        assert_eq!(reconstruction_check_hecke(&space, &x, 5, 100_000).unwrap(), 0.0);
    }

    #[test]
    fn partial_isometries() {
        let g = SimplicialGraph::cycle(5);
        let space = FockSpace::hecke(g.clone());
        let free = space.free();
        let gb = space.basis(3, 100_000).unwrap();
        let fb = free.basis(3, 100_000).unwrap();
        for idx in summand_indices(&g, 2) {
            let m: SparseOperator<BigRational> = partial_isometry_q(&space, &idx, &gb, &fb);
            assert!(m.adjoint().matmul(&m).unwrap().is_diagonal_projection());
            assert_eq!(m.matmul(&m.adjoint()).unwrap().matmul(&m).unwrap(), m);
            let r: SparseOperator<BigRational> = partial_isometry_r(&space, idx.l, idx.k, idx.g0(), idx.g1(), &gb, &fb);
            assert!(r.adjoint().matmul(&r).unwrap().is_diagonal_projection());
        }
    }
}
