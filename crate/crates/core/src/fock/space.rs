use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::sparse::SparseOperator;
use crate::coxeter::{shuffle_normal_form, CoxeterSystem, Letter, SimplicialGraph, VertexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Matrix of an operator on `L^2(A_v)` in an orthonormal basis whose first
/// vector is `Omega_v`; `m[i][j] = <a e_j, e_i>`.
pub type LocalMatrix<S> = Vec<Vec<S>>;

/// `T_s` on `span{Omega, delta_s}`.
pub fn hecke_vertex_matrix<S: Scalar>(p: &S) -> LocalMatrix<S> {
    vec![vec![S::zero(), S::one()], vec![S::one(), p.clone()]]
}

/// A basis vector of a Fock space: a representative reduced word and, per
/// letter, an index `1..dim L^2(A_v)` into `L^2(A_v°)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FockKey {
    pub word: Vec<Letter>,
    pub slots: Vec<u8>,
}

impl FockKey {
    pub fn vacuum() -> Self {
        FockKey {
            word: Vec::new(),
            slots: Vec::new(),
        }
    }

    /// All slots equal to 1; for two-dimensional vertex algebras this is the
    /// only choice.
    pub fn plain(word: Vec<Letter>) -> Self {
        let slots = vec![1; word.len()];
        FockKey { word, slots }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl Ord for FockKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.slots.cmp(&other.slots))
    }
}

impl PartialOrd for FockKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "Ω");
        }
        for (s, j) in self.word.iter().zip(&self.slots) {
            write!(f, "{s}")?;
            if *j != 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

/// A finitely supported vector in a Fock space.
pub type FockVector<S> = BTreeMap<FockKey, S>;

pub fn add_to<S: Scalar>(v: &mut FockVector<S>, key: FockKey, c: S) {
    if c.is_zero() {
        return;
    }
    match v.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().clone() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Largest coefficient modulus of `a - b`.
pub fn vector_diff<S: Scalar>(a: &FockVector<S>, b: &FockVector<S>) -> f64 {
    let mut worst = 0.0f64;
    for key in a.keys().chain(b.keys()) {
        let x = a.get(key).cloned().unwrap_or_else(S::zero);
        let y = b.get(key).cloned().unwrap_or_else(S::zero);
        worst = worst.max((x - y).abs_sq().sqrt());
    }
    worst
}

/// Compression applied on either side of a local operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proj {
    /// No projection.
    Full,
    /// `P_v`: onto words starting with `v`.
    Start,
    /// `P_v^perp`.
    NotStart,
}

impl Proj {
    fn allows(self, local_index: usize) -> bool {
        match self {
            Proj::Full => true,
            Proj::Start => local_index >= 1,
            Proj::NotStart => local_index == 0,
        }
    }
}

/// `left · a · right` with `a` acting at vertex `v`.
#[derive(Clone, Debug)]
pub struct Factor<S> {
    pub vertex: Letter,
    pub matrix: LocalMatrix<S>,
    pub left: Proj,
    pub right: Proj,
}

/// The graph product Fock space `⊕_{v in I} H_v` of vertex algebras with
/// `dim L^2(A_v) = dims[v]`. Over the edgeless graph this is the free
/// product Fock space.
#[derive(Clone, Debug)]
pub struct FockSpace {
    graph: SimplicialGraph,
    /// The graph cliques are taken from; differs from `graph` for the free
    /// product companion of a graph product.
    base: SimplicialGraph,
    system: CoxeterSystem,
    dims: Vec<usize>,
}

impl FockSpace {
    pub fn new(graph: SimplicialGraph, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                graph.vertex_count()
            )));
        }
        if dims.iter().any(|&d| !(2..=255).contains(&d)) {
            return Err(Error::InvalidParameter("vertex dimensions must lie in 2..=255".into()));
        }
        let system = CoxeterSystem::from_graph(&graph);
        Ok(FockSpace {
            base: graph.clone(),
            graph,
            system,
            dims,
        })
    }

    /// Every vertex two-dimensional, as for Hecke algebras.
    pub fn hecke(graph: SimplicialGraph) -> Self {
        let n = graph.vertex_count();
        FockSpace::new(graph, vec![2; n]).expect("dimensions are valid")
    }

    /// The free product of the same vertex data.
    pub fn free(&self) -> Self {
        let mut free = FockSpace::new(self.graph.without_edges(), self.dims.clone()).expect("dimensions are valid");
        free.base = self.base.clone();
        free
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn base_graph(&self) -> &SimplicialGraph {
        &self.base
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_free(&self) -> bool {
        self.graph.edges().is_empty()
    }

    /// Rewrite `(word, slots)` to the representative of its shuffle class,
    /// carrying slots along.
    pub fn normalize(&self, word: &[Letter], slots: &[u8]) -> FockKey {
        let (nf, perm) = shuffle_normal_form(&self.graph, word);
        FockKey {
            word: nf,
            slots: perm.iter().map(|&i| slots[i]).collect(),
        }
    }

    /// Position of the occurrence of `v` that can be moved to the front.
    pub fn leading_position(&self, key: &FockKey, v: Letter) -> Option<usize> {
        for (i, &t) in key.word.iter().enumerate() {
            if t == v {
                return Some(i);
            }
            if !self.graph.has_edge(v as usize, t as usize) {
                return None;
            }
        }
        None
    }

    pub fn starts_with(&self, key: &FockKey, v: Letter) -> bool {
        self.leading_position(key, v).is_some()
    }

    /// Whether the word of `key` begins, letter for letter, with the
    /// representative word of the clique `g0`.
    pub fn starts_with_clique_word(&self, key: &FockKey, g0: VertexSet) -> bool {
        let clique: Vec<Letter> = g0.iter().map(|v| v as Letter).collect();
        key.word.len() >= clique.len() && key.word[..clique.len()] == clique[..]
    }

    /// `left · a · right` applied to a basis vector.
    pub fn apply_local<S: Scalar>(&self, key: &FockKey, f: &Factor<S>) -> Vec<(FockKey, S)> {
        let v = f.vertex;
        let n = self.dims[v as usize];
        let mut out = Vec::new();
        match self.leading_position(key, v) {
            None => {
                if !f.right.allows(0) {
                    return out;
                }
                for j in 0..n {
                    if !f.left.allows(j) {
                        continue;
                    }
                    let c = f.matrix[j][0].clone();
                    if c.is_zero() {
                        continue;
                    }
                    if j == 0 {
                        out.push((key.clone(), c));
                    } else {
                        let mut word = Vec::with_capacity(key.len() + 1);
                        word.push(v);
                        word.extend_from_slice(&key.word);
                        let mut slots = Vec::with_capacity(key.len() + 1);
                        slots.push(j as u8);
                        slots.extend_from_slice(&key.slots);
                        out.push((self.normalize(&word, &slots), c));
                    }
                }
            }
            Some(pos) => {
                let i = key.slots[pos] as usize;
                if !f.right.allows(i) {
                    return out;
                }
                for j in 0..n {
                    if !f.left.allows(j) {
                        continue;
                    }
                    let c = f.matrix[j][i].clone();
                    if c.is_zero() {
                        continue;
                    }
                    if j == 0 {
                        let mut word = key.word.clone();
                        let mut slots = key.slots.clone();
                        word.remove(pos);
                        slots.remove(pos);
                        out.push((self.normalize(&word, &slots), c));
                    } else {
                        let mut k = key.clone();
                        k.slots[pos] = j as u8;
                        out.push((k, c));
                    }
                }
            }
        }
        out
    }

    /// `f_1 f_2 ... f_m x`: the last factor acts first.
    pub fn apply_factors<S: Scalar>(&self, x: &FockVector<S>, factors: &[Factor<S>]) -> FockVector<S> {
        let mut current = x.clone();
        for f in factors.iter().rev() {
            let mut next = FockVector::new();
            for (key, c) in &current {
                for (k, d) in self.apply_local(key, f) {
                    add_to(&mut next, k, c.clone() * d);
                }
            }
            current = next;
            if current.is_empty() {
                break;
            }
        }
        current
    }

    pub fn apply_factors_to_key<S: Scalar>(&self, key: &FockKey, factors: &[Factor<S>]) -> FockVector<S> {
        let mut x = FockVector::new();
        x.insert(key.clone(), S::one());
        self.apply_factors(&x, factors)
    }

    /// `Diag(a_1, ..., a_l)` of the clique `g0` (letters in increasing order,
    /// one local matrix each): acts as `P a_1 P ⊗ ... ⊗ P a_l P ⊗ 1` on words
    /// beginning with the clique word and as 0 elsewhere.
    pub fn diag_apply<S: Scalar>(
        &self,
        key: &FockKey,
        g0: VertexSet,
        mats: &[LocalMatrix<S>],
    ) -> Result<Vec<(FockKey, S)>> {
        if !self.base.is_clique(g0) {
            return Err(Error::NotAClique(g0.to_vec()));
        }
        if mats.len() != g0.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a clique of size {}",
                mats.len(),
                g0.len()
            )));
        }
        if !self.starts_with_clique_word(key, g0) {
            return Ok(Vec::new());
        }
        let mut out = vec![(key.clone(), S::one())];
        for (pos, m) in mats.iter().enumerate() {
            let v = key.word[pos] as usize;
            let i = key.slots[pos] as usize;
            let mut next = Vec::new();
            for (k, c) in &out {
                for (j, row) in m.iter().enumerate().take(self.dims[v]).skip(1) {
                    let d = row[i].clone();
                    if d.is_zero() {
                        continue;
                    }
                    let mut k2 = k.clone();
                    k2.slots[pos] = j as u8;
                    next.push((k2, c.clone() * d));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Advance `slots` to the next choice; `false` once every choice is used.
    fn next_slots(&self, word: &[Letter], slots: &mut [u8]) -> bool {
        for i in (0..slots.len()).rev() {
            if (slots[i] as usize) + 1 < self.dims[word[i] as usize] {
                slots[i] += 1;
                return true;
            }
            slots[i] = 1;
        }
        false
    }

    /// Every basis vector of length at most `n`, sorted.
    pub fn basis(&self, n: usize, cap: usize) -> Result<Vec<FockKey>> {
        let ball = self.system.enumerate_ball(n, cap)?;
        let mut out = Vec::new();
        for g in ball {
            let word = g.into_word();
            let mut slots = vec![1u8; word.len()];
            loop {
                out.push(FockKey {
                    word: word.clone(),
                    slots: slots.clone(),
                });
                if out.len() > cap {
                    return Err(Error::BallTooLarge { radius: n, cap });
                }
                if !self.next_slots(&word, &mut slots) {
                    break;
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Matrix of a linear map given on basis vectors; targets outside
    /// `rows` are dropped.
    pub fn matrix<S: Scalar>(
        &self,
        rows: &[FockKey],
        cols: &[FockKey],
        op: impl Fn(&FockKey) -> FockVector<S>,
    ) -> SparseOperator<S> {
        let index: HashMap<&FockKey, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = SparseOperator::zeros(rows.len(), cols.len());
        for (j, key) in cols.iter().enumerate() {
            for (k, c) in op(key) {
                if let Some(&i) = index.get(&k) {
                    m.add_entry(i, j, c);
                }
            }
        }
        m
    }

    /// `P_v` on `basis` (graph product projection onto words starting with `v`).
    pub fn projection_pv<S: Scalar>(&self, v: Letter, basis: &[FockKey]) -> SparseOperator<S> {
        SparseOperator::diagonal(
            basis
                .iter()
                .map(|k| if self.starts_with(k, v) { S::one() } else { S::zero() })
                .collect(),
        )
    }

    /// `P^f_{Γ0}` on `basis`: words starting with the clique word.
    pub fn projection_clique<S: Scalar>(&self, g0: VertexSet, basis: &[FockKey]) -> Result<SparseOperator<S>> {
        if !self.base.is_clique(g0) {
            return Err(Error::NotAClique(g0.to_vec()));
        }
        Ok(SparseOperator::diagonal(
            basis
                .iter()
                .map(|k| {
                    if self.starts_with_clique_word(k, g0) {
                        S::one()
                    } else {
                        S::zero()
                    }
                })
                .collect(),
        ))
    }

    /// Matrix of `Diag(mats)` on `basis`.
    pub fn diag_operator<S: Scalar>(
        &self,
        g0: VertexSet,
        mats: &[LocalMatrix<S>],
        basis: &[FockKey],
    ) -> Result<SparseOperator<S>> {
        // validate once so the closure below cannot fail
        self.diag_apply(&FockKey::vacuum(), g0, mats)?;
        Ok(self.matrix(basis, basis, |k| {
            let mut v = FockVector::new();
            for (k2, c) in self.diag_apply(k, g0, mats).expect("validated") {
                add_to(&mut v, k2, c);
            }
            v
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::DEFAULT_BALL_CAP;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn t(p: BigRational, v: Letter, left: Proj, right: Proj) -> Factor<BigRational> {
        Factor {
            vertex: v,
            matrix: hecke_vertex_matrix(&p),
            left,
            right,
        }
    }

    #[test]
    fn vacuum_action() {
        let space = FockSpace::hecke(SimplicialGraph::cycle(5));
        let out = space.apply_factors_to_key(&FockKey::vacuum(), &[t(ratio(3, 2), 2, Proj::Full, Proj::Full)]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&FockKey::plain(vec![2])], ratio(1, 1));
        let out = space.apply_factors_to_key(&FockKey::plain(vec![2]), &[t(ratio(3, 2), 2, Proj::Full, Proj::Full)]);
        assert_eq!(out[&FockKey::vacuum()], ratio(1, 1));
        assert_eq!(out[&FockKey::plain(vec![2])], ratio(3, 2));
    }

    #[test]
    fn commuting_letter_moves_to_front() {
        // pentagon: 0-1 adjacent
        let space = FockSpace::hecke(SimplicialGraph::cycle(5));
        let key = FockKey::plain(vec![0, 1]);
        assert!(space.starts_with(&key, 1));
        let out = space.apply_factors_to_key(&key, &[t(ratio(0, 1), 1, Proj::NotStart, Proj::Start)]);
        assert_eq!(out.keys().cloned().collect::<Vec<_>>(), vec![FockKey::plain(vec![0])]);
    }

    #[test]
    fn basis_sizes() {
        let g = SimplicialGraph::cycle(5);
        let space = FockSpace::hecke(g.clone());
        let ball = CoxeterSystem::from_graph(&g)
            .enumerate_ball(4, DEFAULT_BALL_CAP)
            .unwrap();
        assert_eq!(space.basis(4, DEFAULT_BALL_CAP).unwrap().len(), ball.len());
        let wide = FockSpace::new(SimplicialGraph::edgeless(2), vec![3, 2]).unwrap();
        // words a, b, ab, ba with dim(A_a°) = 2
        assert_eq!(wide.basis(2, DEFAULT_BALL_CAP).unwrap().len(), 1 + 3 + 2 * 2);
    }

    #[test]
    fn projections_commute_iff_adjacent() {
        let g = SimplicialGraph::cycle(5);
        let space = FockSpace::hecke(g.clone());
        let basis = space.basis(4, DEFAULT_BALL_CAP).unwrap();
        for v in 0..5u8 {
            let pv = space.projection_pv::<BigRational>(v, &basis);
            assert!(pv.is_diagonal_projection());
            for w in 0..5u8 {
                let pw = space.projection_pv::<BigRational>(w, &basis);
                let prod = pv.matmul(&pw).unwrap();
                // P_v P_w = 0 for distinct non-adjacent letters
                if v != w && !g.has_edge(v as usize, w as usize) {
                    assert_eq!(prod.nnz(), 0);
                }
            }
        }
    }

    #[test]
    fn diag_is_scaled_clique_projection() {
        let g = SimplicialGraph::cycle(5);
        let free = FockSpace::hecke(g.clone()).free();
        let basis = free.basis(3, DEFAULT_BALL_CAP).unwrap();
        let g0 = VertexSet::from_indices([0, 1]);
        let p = ratio(3, 2);
        let mats = vec![hecke_vertex_matrix(&p), hecke_vertex_matrix(&p)];
        let d = free.diag_operator(g0, &mats, &basis).unwrap();
        let proj = free.projection_clique::<BigRational>(g0, &basis).unwrap();
        assert_eq!(d, proj.scale(&(p.clone() * p)));
        let id = free
            .diag_operator::<BigRational>(VertexSet::EMPTY, &[], &basis)
            .unwrap();
        assert_eq!(id, SparseOperator::identity(basis.len()));
        assert!(free
            .diag_operator::<BigRational>(VertexSet::from_indices([0, 2]), &mats, &basis)
            .is_err());
    }
}
