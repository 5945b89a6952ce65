use std::sync::Arc;

use super::algebra::{HeckeAlgebra, HeckeElement};
use super::param::MultiParameter;
use crate::coxeter::{GroupElement, Letter};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients `(a_s, b_s)` of `pi_{q,1}(T_s) = a_s + b_s T_s^{(q)}`.
fn deformation_coefficients<S: Scalar>(target: &HeckeAlgebra<S>, s: Letter) -> (S, S) {
    let q = S::from_rational(target.q().value(s));
    let denom = (S::one() + q.clone()).inv();
    let a = (S::one() - q) * denom.clone();
    let b = S::from_i64(2) * target.sqrt_q(s).clone() * denom;
    (a, b)
}

/// `pi_{q,1}(T_s^{(1)})` as an element of `target`.
pub fn pi_q1_generator<S: Scalar>(target: &Arc<HeckeAlgebra<S>>, s: Letter) -> HeckeElement<S> {
    let (a, b) = deformation_coefficients(target, s);
    HeckeElement::from_terms(
        target,
        [
            (GroupElement::identity(), a),
            (GroupElement::from_normal_form(vec![s]), b),
        ],
    )
}

/// The `*`-isomorphism `C[W] -> C_q[W]` of a right-angled system, extended
/// multiplicatively along reduced words.
pub fn pi_q1<S: Scalar>(x: &HeckeElement<S>, target: &Arc<HeckeAlgebra<S>>) -> Result<HeckeElement<S>> {
    let sys = target.system();
    if !sys.is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    if !x.algebra().q().is_one() || **x.algebra().system() != **sys {
        return Err(Error::MismatchedAlgebras);
    }
    let coeffs: Vec<(S, S)> = (0..sys.rank())
        .map(|s| deformation_coefficients(target, s as Letter))
        .collect();
    let mut out = HeckeElement::zero(target);
    for (w, c) in x.terms() {
        let mut z = HeckeElement::term(target, GroupElement::identity(), c.clone());
        for &s in w.word().iter().rev() {
            let (a, b) = &coeffs[s as usize];
            z = z.scale(a).checked_add(&z.generator_times(s)?.scale(b))?;
        }
        out = out.checked_add(&z)?;
    }
    Ok(out)
}

/// Inverse of [`pi_q1`]: `T_s^{(q)} -> b_s^{-1} (T_s^{(1)} - a_s)`.
pub fn pi_1q<S: Scalar>(x: &HeckeElement<S>, target: &Arc<HeckeAlgebra<S>>) -> Result<HeckeElement<S>> {
    let source = x.algebra();
    let sys = source.system();
    if !sys.is_right_angled() {
        return Err(Error::NotRightAngled);
    }
    if !target.q().is_one() || **target.system() != **sys {
        return Err(Error::MismatchedAlgebras);
    }
    let coeffs: Vec<(S, S)> = (0..sys.rank())
        .map(|s| {
            let (a, b) = deformation_coefficients(source, s as Letter);
            let binv = b.inv();
            (-(a * binv.clone()), binv)
        })
        .collect();
    let mut out = HeckeElement::zero(target);
    for (w, c) in x.terms() {
        let mut z = HeckeElement::term(target, GroupElement::identity(), c.clone());
        for &s in w.word().iter().rev() {
            let (a, b) = &coeffs[s as usize];
            z = z.scale(a).checked_add(&z.generator_times(s)?.scale(b))?;
        }
        out = out.checked_add(&z)?;
    }
    Ok(out)
}

/// `pi_{q',q} = pi_{q',1} o pi_{q,1}^{-1}`, carrying `x` in `C_q[W]` to `C_{q'}[W]`.
pub fn deform<S: Scalar>(x: &HeckeElement<S>, target: &Arc<HeckeAlgebra<S>>) -> Result<HeckeElement<S>> {
    let sys = x.algebra().system().clone();
    let group = HeckeAlgebra::new(sys.clone(), MultiParameter::one(&sys))?;
    pi_q1(&pi_1q(x, &group)?, target)
}

/// `T_s^{(q)} -> eps_s T_s^{(q')}` with `q'_s = q_s^{eps_s}`.
pub fn sign_flip<S: Scalar>(x: &HeckeElement<S>, eps: &[i8]) -> Result<HeckeElement<S>> {
    let source = x.algebra();
    let sys = source.system();
    for class in sys.conjugacy_classes() {
        if class.iter().any(|&s| eps.get(s) != eps.get(class[0])) {
            return Err(Error::InvalidParameter(
                "signs must be constant on conjugacy classes".into(),
            ));
        }
    }
    let q = source.q().flip(eps)?;
    let target = HeckeAlgebra::new(sys.clone(), q)?;
    Ok(HeckeElement::from_terms(
        &target,
        x.terms().map(|(w, c)| {
            let sign: i64 = w.word().iter().map(|&s| eps[s as usize] as i64).product();
            (w.clone(), c.clone() * S::from_i64(sign))
        }),
    ))
}

/// `chi_q(T_w) = q_w^{1/2}`.
pub fn character_value<S: Scalar>(algebra: &HeckeAlgebra<S>, w: &GroupElement) -> S {
    algebra.sqrt_q_word(w)
}

/// Linear extension of [`character_value`].
pub fn character_apply<S: Scalar>(x: &HeckeElement<S>) -> S {
    x.terms()
        .map(|(w, c)| c.clone() * character_value(x.algebra(), w))
        .fold(S::zero(), |a, b| a + b)
}
