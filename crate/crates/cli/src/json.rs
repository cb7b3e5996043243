//! Canonical JSON forms. Coefficients are strings `"p/q"` (or `"p"`).

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smithalg::modules::ModuleVector;
use smithalg::poly::Polynomial;
use smithalg::{Element, Poly, Rational, Vector};

use crate::error::CliError;

pub fn rational_from_str(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Validation(format!("not a rational number: {s:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly(p: &Poly) -> Self {
        Self { coeffs: p.coeffs().iter().map(|c| c.to_string()).collect() }
    }

    pub fn to_poly(&self) -> Result<Poly, CliError> {
        Ok(Polynomial::new(self.coeffs.iter().map(|c| rational_from_str(c)).collect::<Result<_, _>>()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwTerm {
    #[serde(rename = "F")]
    pub f: u32,
    #[serde(rename = "H")]
    pub h: u32,
    #[serde(rename = "E")]
    pub e: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwJson {
    pub terms: Vec<PbwTerm>,
}

impl PbwJson {
    /// Terms sorted by `(F, H, E)` exponents.
    pub fn from_element(x: &Element) -> Self {
        Self {
            terms: x
                .terms()
                .map(|(m, c)| PbwTerm { f: m.f, h: m.h, e: m.e, coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<Element, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(((t.f, t.h, t.e), rational_from_str(&t.coeff)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(crate::parse::element_from_terms(terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorTerm {
    #[serde(rename = "F")]
    pub f: u32,
    #[serde(rename = "H")]
    pub h: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorJson {
    pub terms: Vec<VectorTerm>,
}

impl VectorJson {
    pub fn from_vector(v: &Vector) -> Self {
        Self {
            terms: v
                .iter()
                .map(|(&(f, h), c)| VectorTerm { f, h, coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn to_vector(&self) -> Result<Vector, CliError> {
        let mut v = ModuleVector::zero();
        for t in &self.terms {
            v.add_term((t.f, t.h), rational_from_str(&t.coeff)?);
        }
        Ok(v)
    }
}

/// `sum c F^i H^j w` as text.
pub fn vector_to_text(v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (&(i, j), c)) in v.iter().rev().enumerate() {
        let neg = smithalg::Scalar::is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mut factors = Vec::new();
        if abs != Rational::from_integer(1.into()) {
            factors.push(abs.to_string());
        }
        match i {
            0 => {}
            1 => factors.push("F".into()),
            _ => factors.push(format!("F^{i}")),
        }
        match j {
            0 => {}
            1 => factors.push("H".into()),
            _ => factors.push(format!("H^{j}")),
        }
        factors.push("w".into());
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let p = Polynomial::new(vec![Rational::new(3.into(), 2.into()), Rational::from_integer((-1).into())]);
        let j = PolyJson::from_poly(&p);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"coeffs":["3/2","-1"]}"#);
        assert_eq!(j.to_poly().unwrap(), p);
    }

    #[test]
    fn vector_text() {
        let mut v = ModuleVector::zero();
        v.add_term((0, 2), Rational::from_integer((-1).into()));
        v.add_term((0, 1), Rational::from_integer((-1).into()));
        assert_eq!(vector_to_text(&v), "-H^2*w - H*w");
    }
}
