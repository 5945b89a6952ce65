use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::ReducedOperator;
use crate::coxeter::{indices_with_sigma, Letter, Split, SummandIndex};
use crate::error::{Error, Result};
use crate::fock::{FockSpace, LocalMatrix};
use crate::hecke::HeckeElement;
use crate::scalar::Scalar;

/// Coordinates of an elementary tensor in the summand
/// `L_k ⊗ A_{Γ0} ⊗ K_{d-k-l}`: creation letters with their `A_v°` index,
/// per clique letter an `(out, in)` pair, and annihilation letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JdKey {
    pub row: Vec<(Letter, u8)>,
    pub diag: Vec<(u8, u8)>,
    pub col: Vec<(Letter, u8)>,
}

/// An element of `X_d`: one sparse block per summation index.
#[derive(Clone, Debug, PartialEq)]
pub struct XdElement<S> {
    degree: usize,
    blocks: BTreeMap<SummandIndex, BTreeMap<JdKey, S>>,
}

fn add_entry<S: Scalar>(block: &mut BTreeMap<JdKey, S>, key: JdKey, c: S) {
    if c.is_zero() {
        return;
    }
    let v = match block.remove(&key) {
        Some(old) => old + c,
        None => c,
    };
    if !v.is_zero() {
        block.insert(key, v);
    }
}

/// All ways to pick one coefficient per position, multiplied out.
fn expand<S: Scalar, T: Clone>(choices: &[Vec<(T, S)>]) -> Vec<(Vec<T>, S)> {
    let mut out = vec![(Vec::new(), S::one())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for (keys, c) in &out {
            for (t, d) in options {
                let mut k = keys.clone();
                k.push(t.clone());
                next.push((k, c.clone() * d.clone()));
            }
        }
        out = next;
    }
    out
}

fn nonzero<S: Scalar, T>(items: impl Iterator<Item = (T, S)>) -> Vec<(T, S)> {
    items.filter(|(_, c)| !c.is_zero()).collect()
}

fn block_of<S: Scalar>(letters: &[Letter], mats: &[LocalMatrix<S>], split: &Split) -> BTreeMap<JdKey, S> {
    let creation: Vec<Vec<((Letter, u8), S)>> = split
        .creation
        .iter()
        .map(|&i| nonzero((1..mats[i].len()).map(|j| ((letters[i], j as u8), mats[i][j][0].clone()))))
        .collect();
    let diagonal: Vec<Vec<((u8, u8), S)>> = split
        .diagonal
        .iter()
        .map(|&i| {
            let n = mats[i].len();
            nonzero(
                (1..n)
                    .flat_map(|o| (1..n).map(move |k| (o, k)))
                    .map(|(o, k)| ((o as u8, k as u8), mats[i][o][k].clone())),
            )
        })
        .collect();
    let annihilation: Vec<Vec<((Letter, u8), S)>> = split
        .annihilation
        .iter()
        .map(|&i| nonzero((1..mats[i].len()).map(|j| ((letters[i], j as u8), mats[i][0][j].clone()))))
        .collect();
    let mut block = BTreeMap::new();
    for (row, a) in expand(&creation) {
        for (diag, b) in expand(&diagonal) {
            for (col, c) in expand(&annihilation) {
                add_entry(
                    &mut block,
                    JdKey {
                        row: row.clone(),
                        diag: diag.clone(),
                        col,
                    },
                    a.clone() * b.clone() * c,
                );
            }
        }
    }
    block
}

/// `j_d(a_1 ⊗ ... ⊗ a_d)`.
pub fn jd<S: Scalar>(space: &FockSpace, op: &ReducedOperator<S>) -> XdElement<S> {
    let mut blocks = BTreeMap::new();
    for (idx, split) in indices_with_sigma(space.graph(), op.letters()) {
        let block = block_of(op.letters(), op.matrices(), &split);
        if !block.is_empty() {
            blocks.insert(idx, block);
        }
    }
    XdElement {
        degree: op.degree(),
        blocks,
    }
}

/// `j_d` extended linearly to a homogeneous Hecke element.
pub fn jd_hecke<S: Scalar>(space: &FockSpace, x: &HeckeElement<S>) -> Result<XdElement<S>> {
    if !x.system().is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    let d = x.degree();
    if !x.is_homogeneous(d) {
        return Err(Error::NotHomogeneous(d));
    }
    let mut out = XdElement::zero(d);
    for (w, c) in x.terms() {
        let op = ReducedOperator::hecke(space, x.algebra(), w.word())?;
        out = out.add(&jd(space, &op).scale(c))?;
    }
    Ok(out)
}

impl<S: Scalar> XdElement<S> {
    pub fn zero(degree: usize) -> Self {
        XdElement {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<SummandIndex, BTreeMap<JdKey, S>> {
        &self.blocks
    }

    pub fn block(&self, idx: &SummandIndex) -> Option<&BTreeMap<JdKey, S>> {
        self.blocks.get(idx)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `p_idx`: keep one block.
    pub fn project(&self, idx: &SummandIndex) -> Self {
        XdElement {
            degree: self.degree,
            blocks: self.blocks.get(idx).map(|b| (*idx, b.clone())).into_iter().collect(),
        }
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (idx, block) in &other.blocks {
            let target = out.blocks.entry(*idx).or_default();
            for (k, c) in block {
                add_entry(target, k.clone(), c.clone());
            }
            if target.is_empty() {
                out.blocks.remove(idx);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = XdElement::zero(self.degree);
        for (idx, block) in &self.blocks {
            let mut b = BTreeMap::new();
            for (k, v) in block {
                add_entry(&mut b, k.clone(), v.clone() * c.clone());
            }
            if !b.is_empty() {
                out.blocks.insert(*idx, b);
            }
        }
        out
    }

    /// `sum_idx Tr(η_idx^* ξ_idx)`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_degree(other)?;
        let mut total = S::zero();
        for (idx, block) in &self.blocks {
            if let Some(ob) = other.blocks.get(idx) {
                for (k, v) in block {
                    if let Some(w) = ob.get(k) {
                        total = total + v.clone() * w.conj();
                    }
                }
            }
        }
        Ok(total)
    }

    /// `||ξ||_{2,Tr}`.
    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .values()
            .flat_map(|b| b.values())
            .map(Scalar::abs_sq)
            .sum::<f64>()
            .sqrt()
    }

    /// Dense matrix of one block: rows `(creation, diagonal out)`, columns
    /// `(annihilation, diagonal in)`, both in increasing order.
    pub fn block_matrix(&self, idx: &SummandIndex) -> DMatrix<Complex64> {
        let Some(block) = self.blocks.get(idx) else {
            return DMatrix::zeros(0, 0);
        };
        let row_key = |k: &JdKey| (k.row.clone(), k.diag.iter().map(|p| p.0).collect::<Vec<_>>());
        let col_key = |k: &JdKey| (k.col.clone(), k.diag.iter().map(|p| p.1).collect::<Vec<_>>());
        let rows: Vec<_> = block.keys().map(row_key).collect::<BTreeSet<_>>().into_iter().collect();
        let cols: Vec<_> = block.keys().map(col_key).collect::<BTreeSet<_>>().into_iter().collect();
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (k, v) in block {
            let r = rows.binary_search(&row_key(k)).expect("row present");
            let c = cols.binary_search(&col_key(k)).expect("column present");
            m[(r, c)] += v.to_complex();
        }
        m
    }

    /// Largest spectral norm over the blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks
            .keys()
            .map(|idx| {
                let m = self.block_matrix(idx);
                if m.is_empty() {
                    0.0
                } else {
                    m.singular_values().max()
                }
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{SimplicialGraph, VertexSet};
    use crate::hecke::{HeckeAlgebra, MultiParameter};
    use crate::scalar::ratio;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn hecke(graph: &SimplicialGraph, q: BigRational) -> (FockSpace, Arc<HeckeAlgebra<BigRational>>) {
        let sys = Arc::new(crate::coxeter::CoxeterSystem::from_graph(graph));
        let a = HeckeAlgebra::new(sys.clone(), MultiParameter::uniform(&sys, q).unwrap()).unwrap();
        (FockSpace::hecke(graph.clone()), a)
    }

    #[test]
    fn single_generator_blocks() {
        let g = SimplicialGraph::edgeless(3);
        let (space, a) = hecke(&g, ratio(4, 1));
        let x = jd(&space, &ReducedOperator::hecke(&space, &a, &[1]).unwrap());
        assert_eq!(x.blocks().len(), 3);
        let values: Vec<BigRational> = x
            .blocks()
            .values()
            .map(|b| b.values().next().unwrap().clone())
            .collect();
        assert!(values.contains(&ratio(3, 2)));
        assert_eq!(values.iter().filter(|v| **v == ratio(1, 1)).count(), 2);
        let diag = SummandIndex::new(1, 0, VertexSet::singleton(1), VertexSet::EMPTY, VertexSet::EMPTY);
        assert_eq!(x.block(&diag).unwrap().values().next().unwrap(), &ratio(3, 2));
    }

    #[test]
    fn q_one_kills_diagonal_blocks() {
        let g = SimplicialGraph::cycle(5);
        let (space, a) = hecke(&g, ratio(1, 1));
        let x = jd(&space, &ReducedOperator::hecke(&space, &a, &[0, 1, 3]).unwrap());
        assert!(x.blocks().keys().all(|idx| idx.l == 0));
    }

    #[test]
    fn norms() {
        let g = SimplicialGraph::cycle(5);
        let (space, a) = hecke(&g, ratio(9, 4));
        let x = jd_hecke(
            &space,
            &(&HeckeElement::from_word(&a, &[0, 2]).unwrap()
                + &HeckeElement::from_word(&a, &[1, 3]).unwrap().scale(&ratio(-2, 1))),
        )
        .unwrap();
        assert!(x.operator_norm() <= x.frobenius_norm() + 1e-12);
        assert_eq!(XdElement::<BigRational>::zero(2).frobenius_norm(), 0.0);
        assert!(matches!(
            jd_hecke(
                &space,
                &(&HeckeElement::generator(&a, 0) + &HeckeElement::from_word(&a, &[0, 2]).unwrap())
            ),
            Err(Error::NotHomogeneous(_))
        ));
    }
}
