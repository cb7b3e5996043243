//! Scenario catalogs for `verify`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smithalg::poly::Polynomial;
use smithalg::{Algebra, Character, Module, Poly, Rational};

use crate::error::CliError;
use crate::json::{rational_from_str, PolyJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub poly: PolyJson,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRecord {
    pub poly: PolyJson,
    pub factors: Vec<FactorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Expected {
    pub irreducible: bool,
    pub primary: bool,
    pub whittaker_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRecord {
    pub f: PolyJson,
    #[serde(rename = "etaE")]
    pub eta_e: String,
    pub g: GRecord,
    #[serde(rename = "J")]
    pub j: usize,
    pub expected: Expected,
    /// Replaces the antiderivative of `f`; only for mutation testing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<PolyJson>,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub f: Poly,
    pub eta: Rational,
    pub g: Poly,
    pub factors: Vec<(Poly, u32)>,
    pub j: usize,
    pub expected: Expected,
    pub u: Option<Poly>,
}

impl Scenario {
    pub fn algebra(&self) -> Algebra {
        match &self.u {
            Some(u) => Algebra::with_antiderivative_unchecked(self.f.clone(), u.clone()),
            None => Algebra::new(self.f.clone()),
        }
    }

    pub fn module_for(&self, g: &Poly) -> Result<Module, CliError> {
        Ok(Module::new(self.algebra(), Character::new(self.eta.clone())?, g.clone())?)
    }

    pub fn module(&self) -> Result<Module, CliError> {
        self.module_for(&self.g)
    }

    pub fn label(&self) -> String {
        format!(
            "f={} etaE={} g={}",
            self.f.to_string_in("H"),
            self.eta,
            self.g.to_string_in("Omega")
        )
    }
}

impl ScenarioRecord {
    pub fn validate(&self, index: usize) -> Result<Scenario, CliError> {
        let bad = |msg: String| CliError::Validation(format!("scenario {index}: {msg}"));
        let eta = rational_from_str(&self.eta_e)?;
        if eta.is_zero() {
            return Err(bad("etaE must be nonzero".into()));
        }
        let g = self.g.poly.to_poly()?;
        if g.is_zero() || !g.is_monic() {
            return Err(bad("g must be monic and nonzero".into()));
        }
        let mut factors = Vec::new();
        let mut product = Polynomial::one();
        for fr in &self.g.factors {
            let p = fr.poly.to_poly()?;
            if !p.is_monic() || p.degree() == Some(0) || fr.multiplicity == 0 {
                return Err(bad(format!("bad factor {}", p.to_string_in("Omega"))));
            }
            product = &product * &p.pow(fr.multiplicity);
            factors.push((p, fr.multiplicity));
        }
        if product != g {
            return Err(bad("g does not equal the product of its factors".into()));
        }
        Ok(Scenario {
            f: self.f.to_poly()?,
            eta,
            g,
            factors,
            j: self.j,
            expected: self.expected.clone(),
            u: self.u.as_ref().map(PolyJson::to_poly).transpose()?,
        })
    }
}

pub fn validate_all(records: &[ScenarioRecord]) -> Result<Vec<Scenario>, CliError> {
    records.iter().enumerate().map(|(i, r)| r.validate(i)).collect()
}

pub fn parse_catalog(text: &str) -> Result<Vec<ScenarioRecord>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("bad catalog: {e}")))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn catalog_fs() -> Vec<Poly> {
    vec![
        Polynomial::zero(),
        Polynomial::from_ints(&[1]),
        Polynomial::from_ints(&[0, 2]),
        Polynomial::from_ints(&[0, 0, 1]),
        Polynomial::from_ints(&[-1, 0, 0, 1]),
    ]
}

pub fn catalog_etas() -> Vec<Rational> {
    vec![q(1, 1), q(2, 1), q(-3, 2)]
}

pub fn catalog_scalars() -> Vec<Rational> {
    vec![q(0, 1), q(1, 1), q(-1, 1), q(2, 1), q(5, 2)]
}

fn record(f: &Poly, eta: &Rational, factors: Vec<(Poly, u32)>, j: usize) -> ScenarioRecord {
    let g = factors.iter().fold(Polynomial::one(), |acc, (p, m)| &acc * &p.pow(*m));
    let n = g.degree().expect("nonzero");
    ScenarioRecord {
        f: PolyJson::from_poly(f),
        eta_e: eta.to_string(),
        g: GRecord {
            poly: PolyJson::from_poly(&g),
            factors: factors
                .iter()
                .map(|(p, m)| FactorRecord { poly: PolyJson::from_poly(p), multiplicity: *m })
                .collect(),
        },
        j,
        expected: Expected { irreducible: n == 1, primary: factors.len() == 1, whittaker_dim: n },
        u: None,
    }
}

/// Every `(f, etaE)` pair with `g` in `{Omega - a, (Omega - a)(Omega - b),
/// (Omega - a)^2}`, `a` and `b` cycling through the scalar list.
pub fn default_catalog() -> Vec<ScenarioRecord> {
    let scalars = catalog_scalars();
    let mut out = Vec::new();
    let mut s = 0;
    for f in catalog_fs() {
        let deg_u = f.degree().map_or(0, |d| d + 1);
        for eta in catalog_etas() {
            let a = scalars[s % scalars.len()].clone();
            let b = scalars[(s + 1) % scalars.len()].clone();
            s += 1;
            let lin = |r: &Rational| Polynomial::linear(r.clone());
            out.push(record(&f, &eta, vec![(lin(&a), 1)], deg_u + 1 + 4));
            out.push(record(&f, &eta, vec![(lin(&a), 1), (lin(&b), 1)], 2 * (deg_u + 1) + 2));
            out.push(record(&f, &eta, vec![(lin(&a), 2)], 2 * (deg_u + 1) + 2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_validates() {
        let records = default_catalog();
        assert_eq!(records.len(), 45);
        let scenarios = validate_all(&records).unwrap();
        assert!(scenarios.iter().all(|s| s.expected.whittaker_dim == s.g.degree().unwrap()));
    }

    #[test]
    fn singular_character_rejected() {
        let mut records = default_catalog();
        records[0].eta_e = "0".into();
        assert!(matches!(validate_all(&records), Err(CliError::Validation(_))));
    }

    #[test]
    fn json_round_trip() {
        let records = default_catalog();
        let text = serde_json::to_string(&records).unwrap();
        assert_eq!(parse_catalog(&text).unwrap(), records);
    }
}
