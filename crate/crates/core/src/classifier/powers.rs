use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, GroupElement, Letter};
use crate::error::{Error, Result};
use crate::fock::{norm_lower_bound, BallBasis, NormEstimate, SparseOperator, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::hecke::{group_algebra, pi_q1, HeckeAlgebra, HeckeElement};
use crate::scalar::Scalar;

/// Elements `s, t_0, ..., t_n` with `m(s, t_0) = m(t_i, t_{i+1}) = ∞`,
/// `t_1 != s` and `S = {s, t_0, ..., t_n}`, and the resulting
/// `w_1 = t_0 ... t_n ... t_0`, `w_2 = s`, `w_3 = t_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowersElements {
    pub s: Letter,
    pub chain: Vec<Letter>,
    pub w1: GroupElement,
    pub w2: GroupElement,
    pub w3: GroupElement,
    /// Radius of the ball on which the conditions on
    /// `D = {w : |t_0 w| < |w|}` were checked.
    pub validated_radius: usize,
}

impl PowersElements {
    /// `F = {e, w_1, w_2, w_3}`.
    pub fn averaging_set(&self) -> Vec<GroupElement> {
        vec![
            GroupElement::identity(),
            self.w1.clone(),
            self.w2.clone(),
            self.w3.clone(),
        ]
    }

    pub fn t0(&self) -> Letter {
        self.chain[0]
    }
}

fn free_pair(system: &CoxeterSystem, a: Letter, b: Letter) -> bool {
    a != b && !system.commutes(a, b)
}

/// Depth-first search over `(t_0, s, t_1, ..., t_n)` in lexicographic order.
fn search(system: &CoxeterSystem, n: usize, prefix: &mut Vec<Letter>) -> Option<Vec<Letter>> {
    let rank = system.rank();
    let len = prefix.len();
    if len == n + 2 {
        let mut covered = vec![false; rank];
        for &v in prefix.iter() {
            covered[v as usize] = true;
        }
        return covered.iter().all(|&c| c).then(|| prefix.clone());
    }
    for v in 0..rank as Letter {
        let ok = match len {
            0 => true,
            1 => free_pair(system, prefix[0], v),
            2 => v != prefix[1] && free_pair(system, prefix[0], v),
            _ => free_pair(system, prefix[len - 1], v),
        };
        if ok {
            prefix.push(v);
            if let Some(found) = search(system, n, prefix) {
                return Some(found);
            }
            prefix.pop();
        }
    }
    None
}

/// Checks `D ∪ w_1 D w_1^{-1} ⊇ B \ {e}` and that `D`, `w_2 D w_2^{-1}`,
/// `w_3 D w_3^{-1}` are pairwise disjoint on the ball `B` of radius `radius`.
pub fn validate_powers(
    system: &CoxeterSystem,
    pe: &PowersElements,
    radius: usize,
    cap: usize,
) -> Result<Option<String>> {
    let t0 = pe.t0();
    let in_d = |g: &GroupElement| system.starts_with(g, t0);
    let conj = |w: &GroupElement, g: &GroupElement| -> Result<GroupElement> {
        // w^{-1} g w lies in D iff g lies in w D w^{-1}
        system.multiply(&system.multiply(&system.inverse(w), g)?, w)
    };
    for g in system.enumerate_ball(radius, cap)? {
        if g.is_identity() {
            continue;
        }
        if !in_d(&g) && !in_d(&conj(&pe.w1, &g)?) {
            return Ok(Some(format!(
                "{} is not covered by D and w1 D w1^-1",
                system.format_word(g.word())
            )));
        }
        let hits = [in_d(&g), in_d(&conj(&pe.w2, &g)?), in_d(&conj(&pe.w3, &g)?)];
        if hits.iter().filter(|&&h| h).count() > 1 {
            return Ok(Some(format!(
                "{} lies in two of the conjugates of D",
                system.format_word(g.word())
            )));
        }
    }
    Ok(None)
}

/// Cap on the ball used to validate the Powers conditions.
pub const POWERS_VALIDATION_CAP: usize = 200_000;

/// Largest `r <= radius` whose ball has at most `cap` elements.
fn largest_radius_within(system: &CoxeterSystem, radius: usize, cap: usize) -> usize {
    (0..=radius)
        .rev()
        .find(|&r| system.enumerate_ball(r, cap).is_ok())
        .unwrap_or(0)
}

/// The shortest chain, ties broken lexicographically in `(t_0, s, t_1, ...)`,
/// validated on the ball of radius `2 |w_1| + 2`, or the largest radius
/// whose ball fits in [`POWERS_VALIDATION_CAP`].
pub fn find_powers_elements(system: &CoxeterSystem) -> Result<PowersElements> {
    if !system.is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    if system.rank() < 3 {
        return Err(Error::Hypothesis(format!(
            "needs at least 3 generators, got {}",
            system.rank()
        )));
    }
    if !system.is_irreducible() {
        return Err(Error::Hypothesis("the system is reducible".into()));
    }
    let rank = system.rank();
    let found = (1..=2 * rank).find_map(|n| search(system, n, &mut Vec::new()));
    let Some(seq) = found else {
        return Err(Error::Hypothesis(
            "no chain of non-commuting generators covers S".into(),
        ));
    };
    let s = seq[1];
    let chain: Vec<Letter> = std::iter::once(seq[0]).chain(seq[2..].iter().copied()).collect();
    let mut w1: Vec<Letter> = chain.clone();
    w1.extend(chain.iter().rev().skip(1));
    let w1 = system.reduce(&w1)?;
    let radius = largest_radius_within(system, 2 * w1.len() + 2, POWERS_VALIDATION_CAP);
    let pe = PowersElements {
        s,
        w1,
        w2: system.generator_element(s),
        w3: system.generator_element(chain[1]),
        chain,
        validated_radius: radius,
    };
    if let Some(reason) = validate_powers(system, &pe, radius, POWERS_VALIDATION_CAP)? {
        return Err(Error::Hypothesis(reason));
    }
    Ok(pe)
}

/// Pairs `(pi_{q,1}(T_{w^{-1}}), pi_{q,1}(T_w))` for `w` in `set`.
pub fn averaging_units<S: Scalar>(
    algebra: &Arc<HeckeAlgebra<S>>,
    set: &[GroupElement],
) -> Result<Vec<(HeckeElement<S>, HeckeElement<S>)>> {
    let system = algebra.system();
    let group = group_algebra::<S>(system);
    set.iter()
        .map(|w| {
            let u = pi_q1(&HeckeElement::basis(&group, w.clone()), algebra)?;
            let v = pi_q1(&HeckeElement::basis(&group, system.inverse(w)), algebra)?;
            Ok((v, u))
        })
        .collect()
}

/// `Phi_q(x) = |F|^{-1} sum_{w in F} pi_{q,1}(T_{w^{-1}}) x pi_{q,1}(T_w)`.
pub fn deformed_averaging<S: Scalar>(
    x: &HeckeElement<S>,
    units: &[(HeckeElement<S>, HeckeElement<S>)],
) -> Result<HeckeElement<S>> {
    let mut out = HeckeElement::zero(x.algebra());
    for (v, u) in units {
        out = out.checked_add(&v.checked_mul(x)?.checked_mul(u)?)?;
    }
    Ok(out.scale(&S::from_i64(units.len() as i64).inv()))
}

/// Matrix of the compression of `tilde Phi_q` to `span{delta_w : 0 < |w| <= n}`.
pub fn averaging_compression<S: Scalar>(
    algebra: &Arc<HeckeAlgebra<S>>,
    set: &[GroupElement],
    basis: &BallBasis,
) -> Result<SparseOperator<S>> {
    let units = averaging_units(algebra, set)?;
    let m = basis.len() - 1;
    let mut out = SparseOperator::zeros(m, m);
    for j in 1..basis.len() {
        let x = HeckeElement::basis(algebra, basis.element(j).clone());
        for (w, c) in deformed_averaging(&x, &units)?.terms() {
            if let Some(i) = basis.position(w).filter(|&i| i > 0) {
                out.add_entry(i - 1, j - 1, c.clone());
            }
        }
    }
    Ok(out)
}

/// Lower bound for the norm of `tilde Phi_q` from its compression to the
/// ball of radius `n` with the identity removed.
pub fn averaging_norm_estimate<S: Scalar>(
    algebra: &Arc<HeckeAlgebra<S>>,
    set: &[GroupElement],
    n: usize,
    cap: usize,
) -> Result<NormEstimate> {
    let basis = BallBasis::new(algebra.system().clone(), n, cap)?;
    Ok(norm_lower_bound(
        &averaging_compression(algebra, set, &basis)?,
        DEFAULT_TOLERANCE,
        DEFAULT_MAX_ITER,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PowersDecay {
    /// `||Phi_q^l(x) - tau_q(x)||_2` for `l = 1..L`.
    pub l2_distances: Vec<f64>,
    /// Exact squared distances when the scalars are exact.
    pub l2_distances_sq_exact: Option<Vec<String>>,
    pub support_sizes: Vec<usize>,
    pub strictly_decreasing: bool,
}

/// Iterates `Phi_q` on `x` without truncation.
pub fn powers_decay_experiment<S: Scalar + std::fmt::Display>(
    x: &HeckeElement<S>,
    set: &[GroupElement],
    levels: usize,
) -> Result<PowersDecay> {
    let units = averaging_units(x.algebra(), set)?;
    let tau = HeckeElement::term(x.algebra(), GroupElement::identity(), x.trace());
    let mut current = x.clone();
    let mut dist = Vec::with_capacity(levels);
    let mut exact = Vec::with_capacity(levels);
    let mut support = Vec::with_capacity(levels);
    for _ in 0..levels {
        current = deformed_averaging(&current, &units)?;
        let diff = current.checked_add(&tau.scale(&S::from_i64(-1)))?;
        let sq = diff.l2_norm_sq_exact();
        dist.push(diff.l2_norm());
        exact.push(sq);
        support.push(current.support_len());
    }
    let strictly = exact
        .windows(2)
        .all(|w| (w[0].clone() - w[1].clone()).to_complex().re > 0.0);
    Ok(PowersDecay {
        l2_distances: dist,
        l2_distances_sq_exact: S::is_exact().then(|| exact.iter().map(ToString::to_string).collect()),
        support_sizes: support,
        strictly_decreasing: strictly,
    })
}
