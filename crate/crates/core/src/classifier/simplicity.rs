use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::coxeter::{Component, CoxeterSystem, CoxeterType, FreeAbelianProduct, GroupElement, Letter};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement, MultiParameter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "simple+uniqueTrace")]
    SimpleUniqueTrace,
    #[serde(rename = "notSimple")]
    NotSimple,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    FreeAbelianProduct,
    SphericalOrAffine,
    GeneralRightAngled,
    General,
}

/// Parameters at which the character `T_w -> prod eps_s q_s^{1/2}` is
/// bounded: the normalized `q` with the signs relating it to the input.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterCertificate {
    pub normalized_q: Vec<String>,
    pub epsilon: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimplicityVerdict {
    pub family: Family,
    pub q: Vec<String>,
    pub verdict: Verdict,
    pub region_value: Option<f64>,
    /// Exact region value as a fraction.
    pub region_value_exact: Option<String>,
    pub threshold: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CharacterCertificate>,
    pub evidence: String,
}

/// `q_s^{eps_s}` with `eps_s = 1` if `q_s <= 1` and `-1` otherwise.
pub fn epsilon_normalize(system: &CoxeterSystem, q: &MultiParameter) -> Result<(MultiParameter, Vec<i8>)> {
    let one = <BigRational as One>::one();
    let eps: Vec<i8> = q.values().iter().map(|v| if *v <= one { 1 } else { -1 }).collect();
    for class in system.conjugacy_classes() {
        if class.iter().any(|&s| eps[s] != eps[class[0]]) {
            return Err(Error::Hypothesis("signs are not constant on a conjugacy class".into()));
        }
    }
    Ok((q.flip(&eps)?, eps))
}

fn strings(q: &MultiParameter) -> Vec<String> {
    q.values().iter().map(ToString::to_string).collect()
}

fn certificate(system: &CoxeterSystem, q: &MultiParameter) -> Result<CharacterCertificate> {
    let (qhat, eps) = epsilon_normalize(system, q)?;
    Ok(CharacterCertificate {
        normalized_q: strings(&qhat),
        epsilon: eps,
    })
}

/// Verdict for `Z_2^{k_1} * ... * Z_2^{k_l}` (with `groups` listing the
/// generators of each factor): not simple iff the normalized parameter lies
/// in the closure of the convergence region, i.e.
/// `sum_m prod_i (1 + q_i)^{-1} >= l - 1`.
pub fn classify_free_abelian_product(
    system: &CoxeterSystem,
    groups: &[Vec<usize>],
    q: &MultiParameter,
) -> Result<SimplicityVerdict> {
    let blocks: Vec<usize> = groups.iter().map(Vec::len).collect();
    let fap = FreeAbelianProduct::new(&blocks)?;
    if fap.free_factor_count() < 2 {
        return Ok(SimplicityVerdict {
            family: Family::FreeAbelianProduct,
            q: strings(q),
            verdict: Verdict::Unknown,
            region_value: None,
            region_value_exact: None,
            threshold: None,
            certificate: None,
            evidence: "a single free factor is outside the free product criterion".into(),
        });
    }
    let (qhat, _) = epsilon_normalize(system, q)?;
    let ordered: Vec<BigRational> = groups.iter().flatten().map(|&s| qhat.values()[s].clone()).collect();
    let value = fap.region_value_exact(&ordered)?;
    let threshold = fap.threshold();
    let not_simple = value >= BigRational::from_integer(threshold.into());
    Ok(SimplicityVerdict {
        family: Family::FreeAbelianProduct,
        q: strings(q),
        verdict: if not_simple {
            Verdict::NotSimple
        } else {
            Verdict::SimpleUniqueTrace
        },
        region_value: value.to_f64(),
        region_value_exact: Some(value.to_string()),
        threshold: Some(threshold),
        certificate: if not_simple {
            Some(certificate(system, q)?)
        } else {
            None
        },
        evidence: format!(
            "region value {value} {} threshold {threshold} at the normalized parameter",
            if not_simple { ">=" } else { "<" }
        ),
    })
}

/// Spherical or affine components admit a character for every `q`; when
/// every component is of that kind the algebra is not simple.
pub fn classify_spherical_affine(system: &CoxeterSystem, q: &MultiParameter) -> Result<SimplicityVerdict> {
    let components = system.classify_components();
    let all = components.iter().all(|c| c.kind.is_spherical_or_affine());
    let kinds: Vec<String> = components
        .iter()
        .map(|c| {
            format!(
                "{}:{:?}",
                system.format_word(&c.generators.iter().map(|&s| s as Letter).collect::<Vec<_>>()),
                c.kind
            )
        })
        .collect();
    Ok(SimplicityVerdict {
        family: if all {
            Family::SphericalOrAffine
        } else {
            Family::General
        },
        q: strings(q),
        verdict: if all { Verdict::NotSimple } else { Verdict::Unknown },
        region_value: None,
        region_value_exact: None,
        threshold: None,
        certificate: if all { Some(certificate(system, q)?) } else { None },
        evidence: format!("components {}", kinds.join(" ")),
    })
}

/// The most specific verdict the available criteria give.
pub fn classify_simplicity(system: &CoxeterSystem, q: &MultiParameter) -> Result<SimplicityVerdict> {
    if let Some((fap, groups)) = FreeAbelianProduct::detect(system) {
        if fap.free_factor_count() >= 2 {
            return classify_free_abelian_product(system, &groups, q);
        }
    }
    let v = classify_spherical_affine(system, q)?;
    if v.verdict != Verdict::Unknown {
        return Ok(v);
    }
    if system.is_right_angled() && system.is_irreducible() && system.rank() >= 3 {
        return Ok(SimplicityVerdict {
            family: Family::GeneralRightAngled,
            evidence: "simple with unique trace on some open neighborhood of q = 1; no explicit radius is known".into(),
            ..v
        });
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NuclearityReport {
    pub components: Vec<Component>,
    pub nuclear: bool,
}

/// Nuclear for all `q` exactly when every component is spherical or affine.
pub fn classify_nuclearity(system: &CoxeterSystem) -> NuclearityReport {
    let components = system.classify_components();
    let nuclear = components.iter().all(|c| c.kind != CoxeterType::NonAffine);
    NuclearityReport { components, nuclear }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterReport {
    pub certificate: CharacterCertificate,
    pub pairs: usize,
    pub max_residual: f64,
}

fn random_element(
    algebra: &Arc<HeckeAlgebra<Complex64>>,
    ball: &[GroupElement],
    rng: &mut ChaCha8Rng,
) -> HeckeElement<Complex64> {
    HeckeElement::from_terms(
        algebra,
        ball.iter().map(|w| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            (w.clone(), Complex64::new(re, im))
        }),
    )
}

/// Checks `chi(xy) = chi(x) chi(y)` for the bounded character
/// `T_w -> prod_s eps_s q_s^{eps_s/2}` on random pairs supported on the ball
/// of radius `radius`.
pub fn character_certificate(
    system: &Arc<CoxeterSystem>,
    q: &MultiParameter,
    pairs: usize,
    radius: usize,
    seed: u64,
) -> Result<CharacterReport> {
    let cert = certificate(system, q)?;
    let eps = cert.epsilon.clone();
    let algebra = HeckeAlgebra::<Complex64>::new(system.clone(), q.clone())?;
    let ball = system.enumerate_ball(radius, crate::coxeter::DEFAULT_BALL_CAP)?;
    let chi = |x: &HeckeElement<Complex64>| -> Complex64 {
        x.terms()
            .map(|(w, c)| {
                let v: Complex64 = w
                    .word()
                    .iter()
                    .map(|&s| {
                        let r = *algebra.sqrt_q(s);
                        if eps[s as usize] == 1 {
                            r
                        } else {
                            -r.inv()
                        }
                    })
                    .product();
                c * v
            })
            .sum()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x = random_element(&algebra, &ball, &mut rng);
        let y = random_element(&algebra, &ball, &mut rng);
        let xy = x.checked_mul(&y)?;
        worst = worst.max((chi(&xy) - chi(&x) * chi(&y)).norm());
    }
    Ok(CharacterReport {
        certificate: cert,
        pairs,
        max_residual: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::SimplicialGraph;
    use crate::scalar::ratio;

    fn verdict(sys: &CoxeterSystem, q: BigRational) -> SimplicityVerdict {
        classify_simplicity(sys, &MultiParameter::uniform(sys, q).unwrap()).unwrap()
    }

    #[test]
    fn free_product_of_three_single_parameter() {
        let sys = CoxeterSystem::free(3);
        let v = verdict(&sys, ratio(1, 1));
        assert_eq!(v.family, Family::FreeAbelianProduct);
        assert_eq!(v.verdict, Verdict::SimpleUniqueTrace);
        assert_eq!(v.threshold, Some(2));
        // 3 / (1 + q) at the boundary q = 1/2
        assert_eq!(v.region_value_exact.as_deref(), Some("3/2"));
        assert_eq!(verdict(&sys, ratio(1, 2)).verdict, Verdict::NotSimple);
        assert_eq!(verdict(&sys, ratio(2, 1)).verdict, Verdict::NotSimple);
        assert_eq!(verdict(&sys, ratio(5, 1)).verdict, Verdict::NotSimple);
        assert_eq!(verdict(&sys, ratio(3, 5)).verdict, Verdict::SimpleUniqueTrace);
        let cert = verdict(&sys, ratio(5, 1)).certificate.unwrap();
        assert_eq!(cert.epsilon, vec![-1, -1, -1]);
        assert_eq!(cert.normalized_q, vec!["1/5"; 3]);
    }

    #[test]
    fn dihedral_cases() {
        let inf = CoxeterSystem::dihedral(crate::coxeter::Exponent::Infinite).unwrap();
        let v = verdict(&inf, ratio(1, 1));
        assert_eq!(v.family, Family::FreeAbelianProduct);
        assert_eq!(v.verdict, Verdict::NotSimple);
        assert!(classify_nuclearity(&inf).nuclear);
        let a2 = CoxeterSystem::dihedral(crate::coxeter::Exponent::Finite(3)).unwrap();
        assert_eq!(classify_nuclearity(&a2).components[0].kind, CoxeterType::Spherical);
        assert_eq!(verdict(&a2, ratio(4, 1)).verdict, Verdict::NotSimple);
    }

    #[test]
    fn pentagon_is_general() {
        let sys = CoxeterSystem::from_graph(&SimplicialGraph::cycle(5));
        let v = verdict(&sys, ratio(1, 1));
        assert_eq!(v.family, Family::GeneralRightAngled);
        assert_eq!(v.verdict, Verdict::Unknown);
        assert!(!classify_nuclearity(&sys).nuclear);
    }

    #[test]
    fn character_is_multiplicative() {
        let sys = Arc::new(CoxeterSystem::free(3));
        for q in [ratio(1, 2), ratio(3, 1)] {
            let r = character_certificate(&sys, &MultiParameter::uniform(&sys, q).unwrap(), 20, 2, 3).unwrap();
            assert!(r.max_residual < 1e-9, "{}", r.max_residual);
        }
    }
}
