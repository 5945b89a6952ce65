use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::coxeter::{CoxeterSystem, Letter};
use crate::error::{Error, Result};
use crate::scalar::{exact_sqrt, parse_rational};

/// A multi-parameter `q = (q_s)_{s in S}` with exact positive rational
/// entries, constant on conjugacy classes of generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiParameter {
    values: Vec<BigRational>,
}

impl MultiParameter {
    pub fn new(system: &CoxeterSystem, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != system.rank() {
            return Err(Error::InvalidParameter(format!(
                "expected {} values, got {}",
                system.rank(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter(format!("q must be positive, got {v}")));
        }
        for class in system.conjugacy_classes() {
            let first = &values[class[0]];
            if let Some(&s) = class.iter().find(|&&s| &values[s] != first) {
                return Err(Error::InvalidParameter(format!(
                    "q must agree on conjugate generators {} and {}",
                    system.names()[class[0]],
                    system.names()[s]
                )));
            }
        }
        Ok(MultiParameter { values })
    }

    pub fn uniform(system: &CoxeterSystem, q: BigRational) -> Result<Self> {
        MultiParameter::new(system, vec![q; system.rank()])
    }

    pub fn one(system: &CoxeterSystem) -> Self {
        MultiParameter {
            values: vec![BigRational::one(); system.rank()],
        }
    }

    /// A single value (broadcast to all generators) or one comma-separated
    /// value per generator. Decimals are read exactly: `0.4` is `2/5`.
    pub fn parse(system: &CoxeterSystem, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let values = parts
            .iter()
            .map(|p| parse_rational(p).ok_or_else(|| Error::Parse(format!("cannot read {p:?} as a number"))))
            .collect::<Result<Vec<_>>>()?;
        match values.len() {
            0 => Err(Error::Parse("empty parameter".into())),
            1 => MultiParameter::uniform(system, values.into_iter().next().unwrap()),
            _ => MultiParameter::new(system, values),
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, s: Letter) -> &BigRational {
        &self.values[s as usize]
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// Every `sqrt(q_s)` is rational, so exact arithmetic is available.
    pub fn has_rational_roots(&self) -> bool {
        self.values.iter().all(|v| exact_sqrt(v).is_some())
    }

    /// `q_s^{eps_s}` with `eps_s in {+1, -1}`.
    pub fn flip(&self, eps: &[i8]) -> Result<Self> {
        if eps.len() != self.values.len() || eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidParameter(
                "signs must be +1 or -1, one per generator".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(eps)
            .map(|(v, &e)| if e == 1 { v.clone() } else { v.recip() })
            .collect();
        Ok(MultiParameter { values })
    }

    /// `p_s(q) = q_s^{-1/2} (q_s - 1)` in floating point.
    pub fn p_f64(&self, s: Letter) -> f64 {
        let q = self.value(s).to_f64().unwrap_or(f64::NAN);
        (q - 1.0) / q.sqrt()
    }

    /// Product of `|p_s(q)|` over the generators in `gens`.
    pub fn abs_p_product(&self, gens: impl IntoIterator<Item = usize>) -> f64 {
        gens.into_iter().map(|s| self.p_f64(s as Letter).abs()).product()
    }

    /// Product of `p_s(q)` over the generators in `gens`.
    pub fn p_product(&self, gens: impl IntoIterator<Item = usize>) -> f64 {
        gens.into_iter().map(|s| self.p_f64(s as Letter)).product()
    }
}

impl fmt::Debug for MultiParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q{:?}",
            self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        )
    }
}

impl fmt::Display for MultiParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        if parts.iter().all(|p| p == &parts[0]) {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}
