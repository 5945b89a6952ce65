use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::param::MultiParameter;
use crate::coxeter::{CoxeterSystem, GroupElement, Letter};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The Hecke algebra `C_q[W]` over the scalar field `S`.
#[derive(Debug)]
pub struct HeckeAlgebra<S> {
    system: Arc<CoxeterSystem>,
    q: MultiParameter,
    sqrt_q: Vec<S>,
    p: Vec<S>,
}

impl<S: Scalar> HeckeAlgebra<S> {
    /// Fails with [`Error::InexactParameter`] when `S` is exact and some
    /// `sqrt(q_s)` is irrational.
    pub fn new(system: Arc<CoxeterSystem>, q: MultiParameter) -> Result<Arc<Self>> {
        if q.rank() != system.rank() {
            return Err(Error::InvalidParameter(
                "parameter rank does not match the system".into(),
            ));
        }
        let mut sqrt_q = Vec::with_capacity(q.rank());
        let mut p = Vec::with_capacity(q.rank());
        for (s, v) in q.values().iter().enumerate() {
            let r =
                S::sqrt_rational(v).ok_or_else(|| Error::InexactParameter(format!("q_{} = {v}", system.names()[s])))?;
            // p_s = (q_s - 1) / sqrt(q_s)
            p.push((S::from_rational(v) - S::one()) * r.inv());
            sqrt_q.push(r);
        }
        Ok(Arc::new(HeckeAlgebra { system, q, sqrt_q, p }))
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn q(&self) -> &MultiParameter {
        &self.q
    }

    pub fn p(&self, s: Letter) -> &S {
        &self.p[s as usize]
    }

    pub fn sqrt_q(&self, s: Letter) -> &S {
        &self.sqrt_q[s as usize]
    }

    /// `q_w^{1/2}` along the normal form of `w`.
    pub fn sqrt_q_word(&self, w: &GroupElement) -> S {
        w.word()
            .iter()
            .fold(S::one(), |acc, &s| acc * self.sqrt_q[s as usize].clone())
    }

    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.system == other.system && self.q == other.q)
    }
}

/// A finitely supported element `sum_w x(w) T_w` of a Hecke algebra.
#[derive(Clone)]
pub struct HeckeElement<S: Scalar> {
    algebra: Arc<HeckeAlgebra<S>>,
    coeffs: BTreeMap<GroupElement, S>,
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(algebra: &Arc<HeckeAlgebra<S>>) -> Self {
        HeckeElement {
            algebra: algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<HeckeAlgebra<S>>) -> Self {
        Self::basis(algebra, GroupElement::identity())
    }

    /// `T_w`.
    pub fn basis(algebra: &Arc<HeckeAlgebra<S>>, w: GroupElement) -> Self {
        Self::term(algebra, w, S::one())
    }

    pub fn term(algebra: &Arc<HeckeAlgebra<S>>, w: GroupElement, c: S) -> Self {
        let mut x = Self::zero(algebra);
        x.add_term(w, c);
        x
    }

    /// `T_s`.
    pub fn generator(algebra: &Arc<HeckeAlgebra<S>>, s: Letter) -> Self {
        Self::basis(algebra, GroupElement::from_normal_form(vec![s]))
    }

    /// `T_w` for an arbitrary word, reduced first.
    pub fn from_word(algebra: &Arc<HeckeAlgebra<S>>, word: &[Letter]) -> Result<Self> {
        Ok(Self::basis(algebra, algebra.system.reduce(word)?))
    }

    pub fn from_terms(algebra: &Arc<HeckeAlgebra<S>>, terms: impl IntoIterator<Item = (GroupElement, S)>) -> Self {
        let mut x = Self::zero(algebra);
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra<S>> {
        &self.algebra
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.algebra.system
    }

    pub fn coeffs(&self) -> &BTreeMap<GroupElement, S> {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &S)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, w: &GroupElement) -> S {
        self.coeffs.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Add `c T_w`, pruning a resulting zero.
    pub fn add_term(&mut self, w: GroupElement, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebras)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(
            &self.algebra,
            self.coeffs.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())),
        )
    }

    /// `T_s x`: `T_s T_w = T_{sw}` if `|sw| > |w|`, else `T_{sw} + p_s T_w`.
    pub fn generator_times(&self, s: Letter) -> Result<Self> {
        let sys = &self.algebra.system;
        sys.check_letter(s as usize)?;
        let p = self.algebra.p(s);
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.coeffs {
            let descent = sys.starts_with(w, s);
            let sw = sys.left_mul_gen(s, w)?;
            out.add_term(sw, c.clone());
            if descent {
                out.add_term(w.clone(), c.clone() * p.clone());
            }
        }
        Ok(out)
    }

    /// `x T_s`, the mirror image of [`Self::generator_times`].
    pub fn times_generator(&self, s: Letter) -> Result<Self> {
        let sys = &self.algebra.system;
        sys.check_letter(s as usize)?;
        let p = self.algebra.p(s);
        let mut out = Self::zero(&self.algebra);
        for (w, c) in &self.coeffs {
            let descent = sys.ends_with(w, s);
            let ws = sys.right_mul_gen(w, s)?;
            out.add_term(ws, c.clone());
            if descent {
                out.add_term(w.clone(), c.clone() * p.clone());
            }
        }
        Ok(out)
    }

    /// Product by left induction: `T_v y = T_{v_1}(T_{v_2}(... T_{v_n} y))`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.algebra);
        for (v, c) in &self.coeffs {
            let mut z = other.clone();
            for &s in v.word().iter().rev() {
                z = z.generator_times(s)?;
            }
            for (w, d) in z.coeffs {
                out.add_term(w, c.clone() * d);
            }
        }
        Ok(out)
    }

    /// `x^*`: conjugate coefficients, invert words.
    pub fn adjoint(&self) -> Self {
        let sys = &self.algebra.system;
        Self::from_terms(
            &self.algebra,
            self.coeffs.iter().map(|(w, c)| (sys.inverse(w), c.conj())),
        )
    }

    /// `tau_q(x)`: the coefficient at the identity.
    pub fn trace(&self) -> S {
        self.coefficient(&GroupElement::identity())
    }

    /// `sum_w |x(w)|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.values().map(Scalar::abs_sq).sum()
    }

    /// Exact `sum_w x(w) conj(x(w))`.
    pub fn l2_norm_sq_exact(&self) -> S {
        self.coeffs
            .values()
            .fold(S::zero(), |acc, c| acc + c.clone() * c.conj())
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// `<x, y> = tau(y^* x) = sum_w x(w) conj(y(w))`.
    pub fn inner(&self, other: &Self) -> S {
        self.coeffs
            .iter()
            .filter_map(|(w, c)| other.coeffs.get(w).map(|d| c.clone() * d.conj()))
            .fold(S::zero(), |a, b| a + b)
    }

    /// Word-length projection onto length `d`.
    pub fn chi_d(&self, d: usize) -> Self {
        Self::from_terms(
            &self.algebra,
            self.coeffs
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Drop every term longer than `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_terms(
            &self.algebra,
            self.coeffs
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Maximal length of a word in the support (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(GroupElement::len).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.coeffs.keys().all(|w| w.len() == d)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&GroupElement> = self.coeffs.keys().collect();
        keys.extend(other.coeffs.keys());
        keys.into_iter()
            .map(|w| (self.coefficient(w) - other.coefficient(w)).abs_sq().sqrt())
            .fold(0.0, f64::max)
    }

    /// Same coefficients read in another algebra over the same system.
    pub fn reinterpret(&self, algebra: &Arc<HeckeAlgebra<S>>) -> Result<Self> {
        if *algebra.system != *self.algebra.system {
            return Err(Error::MismatchedAlgebras);
        }
        Ok(HeckeElement {
            algebra: algebra.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn format(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let sys = &self.algebra.system;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(w, c)| {
                let names: Vec<&str> = w.word().iter().map(|&s| sys.name(s)).collect();
                format!("{c:?}*T[{}]", names.join(","))
            })
            .collect();
        parts.join(" + ")
    }
}

impl<S: Scalar> PartialEq for HeckeElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for HeckeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl<S: Scalar> Add for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    /// Panics if the operands live in different algebras.
    fn add(self, rhs: Self) -> HeckeElement<S> {
        self.checked_add(rhs).expect("operands in the same algebra")
    }
}

impl<S: Scalar> Neg for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    fn neg(self) -> HeckeElement<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Sub for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    /// Panics if the operands live in different algebras.
    fn sub(self, rhs: Self) -> HeckeElement<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &HeckeElement<S> {
    type Output = HeckeElement<S>;
    /// Panics if the operands live in different algebras or the word cap of
    /// a general system is exceeded; use [`HeckeElement::checked_mul`] to
    /// handle those cases.
    fn mul(self, rhs: Self) -> HeckeElement<S> {
        self.checked_mul(rhs).expect("product within the same algebra")
    }
}

/// Convenience: exact algebra for rational parameters.
pub fn exact_algebra(system: &Arc<CoxeterSystem>, q: &MultiParameter) -> Result<Arc<HeckeAlgebra<BigRational>>> {
    HeckeAlgebra::new(system.clone(), q.clone())
}

/// Exact group algebra `C[W]` (`q = 1`).
pub fn group_algebra<S: Scalar>(system: &Arc<CoxeterSystem>) -> Arc<HeckeAlgebra<S>> {
    HeckeAlgebra::new(system.clone(), MultiParameter::one(system)).expect("q = 1 has rational roots")
}

/// `1` as a scalar; a tiny helper for generic code.
pub fn unit<S: Scalar>() -> S {
    S::from_rational(&<BigRational as One>::one())
}
