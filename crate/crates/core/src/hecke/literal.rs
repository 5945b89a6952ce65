use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{Map, Value};

use super::algebra::{HeckeAlgebra, HeckeElement};
use crate::coxeter::{CoxeterSystem, GroupElement, Letter};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};

/// Parse `T[s,t] + 0.5*T[] - 2*T[a]` into `(word, coefficient)` terms.
/// Words are written with generator names; coefficients are exact rationals.
pub fn parse_terms(system: &CoxeterSystem, text: &str) -> Result<Vec<(Vec<Letter>, BigRational)>> {
    let mut terms = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = <BigRational as One>::one();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' before {rest:?}")));
        }
        first = false;
        let t_pos = rest
            .find('T')
            .ok_or_else(|| Error::Parse(format!("expected T[...] in {rest:?}")))?;
        let coeff_text = rest[..t_pos].trim();
        let coeff = if coeff_text.is_empty() {
            <BigRational as One>::one()
        } else {
            let c = coeff_text.strip_suffix('*').unwrap_or(coeff_text).trim();
            parse_rational(c).ok_or_else(|| Error::Parse(format!("bad coefficient {c:?}")))?
        };
        let after = rest[t_pos + 1..].trim_start();
        let body = after
            .strip_prefix('[')
            .ok_or_else(|| Error::Parse("expected '[' after T".into()))?;
        let close = body.find(']').ok_or_else(|| Error::Parse("unterminated T[".into()))?;
        let names = &body[..close];
        let mut word = Vec::new();
        for name in names.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            let s = system
                .generator(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            word.push(s);
        }
        terms.push((word, sign * coeff));
        rest = body[close + 1..].trim_start();
    }
    Ok(terms)
}

/// Parse a literal into an element of `algebra`, reducing every word.
pub fn parse_element<S: Scalar>(algebra: &Arc<HeckeAlgebra<S>>, text: &str) -> Result<HeckeElement<S>> {
    let mut x = HeckeElement::zero(algebra);
    for (word, c) in parse_terms(algebra.system(), text)? {
        let term = HeckeElement::<S>::from_word(algebra, &word)?.scale(&S::from_rational(&c));
        x = x.checked_add(&term)?;
    }
    Ok(x)
}

/// `{word: coefficient}` with normal-form words (`"e"` for the identity).
/// Real coefficients are numbers; others are `[re, im]` pairs.
pub fn to_json<S: Scalar>(x: &HeckeElement<S>) -> Value {
    let sys = x.system();
    let mut map = Map::new();
    for (w, c) in x.terms() {
        let z = c.to_complex();
        let value = if z.im == 0.0 {
            Value::from(z.re)
        } else {
            Value::from(vec![z.re, z.im])
        };
        map.insert(sys.format_word(w.word()), value);
    }
    Value::Object(map)
}

/// Exact JSON for rational elements: coefficients as `"p/q"` strings.
pub fn to_json_exact(x: &HeckeElement<BigRational>) -> Value {
    let sys = x.system();
    let map: BTreeMap<String, String> = x
        .terms()
        .map(|(w, c)| (sys.format_word(w.word()), c.to_string()))
        .collect();
    serde_json::to_value(map).expect("string map serializes")
}

/// Inverse of [`to_json`] / [`to_json_exact`] for real coefficients.
pub fn from_json<S: Scalar>(algebra: &Arc<HeckeAlgebra<S>>, value: &Value) -> Result<HeckeElement<S>> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("element JSON must be an object".into()))?;
    let mut x = HeckeElement::zero(algebra);
    for (key, v) in obj {
        let word = if key == "e" {
            Vec::new()
        } else {
            algebra.system().parse_word(key)?
        };
        let c = match v {
            Value::String(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("bad coefficient {s:?}")))?,
            Value::Number(n) => {
                let f = n.as_f64().ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?;
                BigRational::from_float(f).ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?
            }
            other => return Err(Error::Parse(format!("unsupported coefficient {other}"))),
        };
        let term = HeckeElement::<S>::from_word(algebra, &word)?.scale(&S::from_rational(&c));
        x = x.checked_add(&term)?;
    }
    Ok(x)
}

/// Human-readable rendering in the literal syntax.
pub fn format_element<S: Scalar>(x: &HeckeElement<S>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sys = x.system();
    let parts: Vec<String> = x
        .terms()
        .map(|(w, c): (&GroupElement, &S)| {
            let z = c.to_complex();
            let names: Vec<&str> = w.word().iter().map(|&s| sys.name(s)).collect();
            let coeff = if z.im == 0.0 {
                format!("{}", z.re)
            } else {
                format!("({}{:+}i)", z.re, z.im)
            };
            format!("{coeff}*T[{}]", names.join(","))
        })
        .collect();
    parts.join(" + ")
}

/// Like [`format_element`] with exact fractions, so the output parses back
/// to the same element.
pub fn format_element_exact(x: &HeckeElement<BigRational>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sys = x.system();
    let parts: Vec<String> = x
        .terms()
        .map(|(w, c)| {
            let names: Vec<&str> = w.word().iter().map(|&s| sys.name(s)).collect();
            format!("{c}*T[{}]", names.join(","))
        })
        .collect();
    parts.join(" + ")
}

/// Rational to `f64` for reports.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::MultiParameter;
    use crate::scalar::ratio;

    fn algebra() -> Arc<HeckeAlgebra<BigRational>> {
        let sys = Arc::new(CoxeterSystem::free(3));
        HeckeAlgebra::new(sys.clone(), MultiParameter::uniform(&sys, ratio(4, 1)).unwrap()).unwrap()
    }

    #[test]
    fn parses_literal() {
        let a = algebra();
        let x = parse_element(&a, "T[a,b] + 0.5*T[]").unwrap();
        assert_eq!(x.coefficient(&GroupElement::identity()), ratio(1, 2));
        assert_eq!(x.coefficient(&GroupElement::from_normal_form(vec![0, 1])), ratio(1, 1));
        let y = parse_element(&a, "-2*T[c] - T[a,a]").unwrap();
        assert_eq!(y.coefficient(&GroupElement::from_normal_form(vec![2])), ratio(-2, 1));
        assert_eq!(y.coefficient(&GroupElement::identity()), ratio(-1, 1));
        assert!(parse_element(&a, "T[z]").is_err());
        assert!(parse_element(&a, "T[a] T[b]").is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = algebra();
        let x = parse_element(&a, "T[a,b] + 1/3*T[] - 2*T[c,a]").unwrap();
        let exact = to_json_exact(&x);
        assert_eq!(exact["e"], "1/3");
        assert_eq!(from_json(&a, &exact).unwrap(), x);
        let floaty = to_json(&parse_element(&a, "T[a,b] + 0.5*T[]").unwrap());
        assert_eq!(floaty["ab"], 1.0);
        assert_eq!(floaty["e"], 0.5);
    }

    #[test]
    fn exact_literal_round_trips() {
        let a = algebra();
        let x = parse_element(&a, "T[a]")
            .unwrap()
            .checked_mul(&parse_element(&a, "T[a,b] - 2/3*T[]").unwrap())
            .unwrap();
        let text = format_element_exact(&x);
        assert_eq!(text, "-2/3*T[a] + 1*T[b] + 3/2*T[a,b]");
        assert_eq!(parse_element(&a, &text).unwrap(), x);
    }
}
