//! The Whittaker model of the center: the projection `x -> x^eta` onto
//! `R(F,H)`, the eta-reduced action of `R(E)`, powers of `Omega^eta`, and the
//! freeness of `R(F,H)` over the image of the center.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVector};
use crate::pbw::{Monomial, PbwElement, SmithAlgebra};
use crate::poly::Polynomial;
use crate::scalar::{pow, Scalar};

/// A character of `R(E) = k[E]`, determined by its value on `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WhittakerCharacter<T> {
    eta_e: T,
}

impl<T: Scalar> WhittakerCharacter<T> {
    /// Only nonsingular characters (`eta(E) != 0`) are accepted.
    pub fn new(eta_e: T) -> Result<Self> {
        if eta_e.is_zero() {
            return Err(Error::SingularCharacter);
        }
        Ok(Self { eta_e })
    }

    pub fn eta_e(&self) -> &T {
        &self.eta_e
    }

    /// `eta(E^c) = eta(E)^c`.
    pub fn on_e_power(&self, c: u32) -> T {
        pow(&self.eta_e, c)
    }

    /// `eta` applied to an element of `R(E)`.
    pub fn eval(&self, x: &PbwElement<T>) -> Result<T> {
        let mut acc = T::zero();
        for (m, c) in x.terms() {
            if m.f != 0 || m.h != 0 {
                return Err(Error::NotInEAlgebra { a: m.f, b: m.h, c: m.e });
            }
            acc = acc + c.clone() * self.on_e_power(m.e);
        }
        Ok(acc)
    }
}

/// An element of the subalgebra `R(F,H)`: no term carries a power of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FhElement<T: Scalar>(PbwElement<T>);

impl<T: Scalar> FhElement<T> {
    pub fn new(x: PbwElement<T>) -> Result<Self> {
        let stray = x.terms().find(|(m, _)| m.e != 0).map(|(m, _)| m.e);
        match stray {
            Some(e) => Err(Error::NotInFHAlgebra(e)),
            None => Ok(Self(x)),
        }
    }

    pub fn one() -> Self {
        Self(PbwElement::one())
    }

    pub fn as_element(&self) -> &PbwElement<T> {
        &self.0
    }

    pub fn into_element(self) -> PbwElement<T> {
        self.0
    }

    /// Coefficient of `F^i H^j`.
    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.0.coeff(&Monomial::new(i, j, 0))
    }

    /// Terms keyed by `(i, j)` for `F^i H^j`.
    pub fn to_vector(&self) -> SparseVector<(u32, u32), T> {
        self.0.as_vector().map_keys(|m| (m.f, m.h))
    }

    pub fn mul(&self, alg: &SmithAlgebra<T>, other: &Self) -> Self {
        Self(alg.mul(&self.0, &other.0))
    }
}

impl<T: Scalar> fmt::Display for FhElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `R(f)` with a fixed nonsingular character, and the derived data of the
/// Whittaker model.
#[derive(Clone, Debug)]
pub struct WhittakerModel<T: Scalar> {
    alg: SmithAlgebra<T>,
    eta: WhittakerCharacter<T>,
    omega_eta: FhElement<T>,
}

/// Change of basis from `{H^p (Omega^eta)^q}` to `{F^i H^j}` inside one
/// filtration level.
#[derive(Clone, Debug, PartialEq)]
pub struct FreenessReport<T> {
    pub level: usize,
    /// Monomials `F^i H^j` with `i(d+1) + j <= level`, lexicographic.
    pub rows: Vec<(u32, u32)>,
    /// Products `H^p (Omega^eta)^q` with `p + q(d+1) <= level`, lexicographic.
    pub cols: Vec<(u32, u32)>,
    /// `matrix[r][c]` is the coefficient of row monomial `r` in column `c`.
    pub matrix: Vec<Vec<T>>,
    pub rank: usize,
    /// Every column is supported on the row monomials.
    pub closed: bool,
}

impl<T> FreenessReport<T> {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.is_square() && self.closed && self.rank == self.rows.len()
    }
}

impl<T: Scalar> WhittakerModel<T> {
    pub fn new(alg: SmithAlgebra<T>, eta: WhittakerCharacter<T>) -> Self {
        let omega_eta = Self::project_with(&eta, alg.casimir());
        Self { alg, eta, omega_eta }
    }

    pub fn algebra(&self) -> &SmithAlgebra<T> {
        &self.alg
    }

    pub fn character(&self) -> &WhittakerCharacter<T> {
        &self.eta
    }

    fn project_with(eta: &WhittakerCharacter<T>, x: &PbwElement<T>) -> FhElement<T> {
        FhElement(PbwElement::from_terms(x.terms().map(|(m, c)| {
            (Monomial::new(m.f, m.h, 0), c.clone() * eta.on_e_power(m.e))
        })))
    }

    /// `x^eta`: each `F^a H^b E^c` becomes `eta(E)^c F^a H^b`.
    pub fn project(&self, x: &PbwElement<T>) -> FhElement<T> {
        Self::project_with(&self.eta, x)
    }

    /// The eta-reduced action `x . v = (xv)^eta - eta(x) v` of `x in R(E)`.
    pub fn reduced_action(&self, x: &PbwElement<T>, v: &FhElement<T>) -> Result<FhElement<T>> {
        let ex = self.eta.eval(x)?;
        let xv = self.project(&self.alg.mul(x, &v.0));
        Ok(FhElement(&xv.0 - &v.0.scale(&ex)))
    }

    /// `Omega^eta = 2 eta(E) F + u(H+1)`.
    pub fn omega_eta(&self) -> &FhElement<T> {
        &self.omega_eta
    }

    /// `(Omega^eta)^q`, multiplied out inside `R(F,H)`.
    pub fn omega_eta_power(&self, q: u32) -> FhElement<T> {
        (0..q).fold(FhElement::one(), |acc, _| acc.mul(&self.alg, &self.omega_eta))
    }

    /// All powers `(Omega^eta)^0 ..= (Omega^eta)^max`.
    pub fn omega_eta_powers(&self, max: u32) -> Vec<FhElement<T>> {
        let mut out = vec![FhElement::one()];
        for _ in 0..max {
            let next = out.last().expect("nonempty").mul(&self.alg, &self.omega_eta);
            out.push(next);
        }
        out
    }

    /// `p(Omega^eta)` for `p` a polynomial in `Omega`.
    pub fn omega_eta_poly(&self, p: &Polynomial<T>) -> FhElement<T> {
        let Some(deg) = p.degree() else {
            return FhElement(PbwElement::zero());
        };
        let powers = self.omega_eta_powers(deg as u32);
        let mut acc = PbwElement::zero();
        for (c, power) in p.coeffs().iter().zip(&powers) {
            acc = &acc + &power.0.scale(c);
        }
        FhElement(acc)
    }

    /// Kazhdan degree `i(d+1) + j` of `F^i H^j`.
    pub fn fh_degree(&self, i: u32, j: u32) -> usize {
        i as usize * (self.alg.d() + 1) + j as usize
    }

    pub fn freeness_basis_matrix(&self, level: usize) -> FreenessReport<T> {
        let w = self.alg.d() + 1;
        let mut rows = Vec::new();
        for i in 0..=level / w {
            for j in 0..=(level - i * w) {
                rows.push((i as u32, j as u32));
            }
        }
        let mut cols = Vec::new();
        for p in 0..=level {
            for q in 0..=(level - p) / w {
                cols.push((p as u32, q as u32));
            }
        }
        let max_q = cols.iter().map(|&(_, q)| q).max().unwrap_or(0);
        let powers = self.omega_eta_powers(max_q);
        let col_vectors: Vec<SparseVector<(u32, u32), T>> = cols
            .iter()
            .map(|&(p, q)| {
                let hp = PbwElement::monomial(Monomial::new(0, p, 0), T::one());
                FhElement(self.alg.mul(&hp, &powers[q as usize].0)).to_vector()
            })
            .collect();
        let closed = col_vectors
            .iter()
            .all(|v| v.keys().all(|&(i, j)| self.fh_degree(i, j) <= level));
        let matrix = rows
            .iter()
            .map(|key| col_vectors.iter().map(|v| v.get(key)).collect())
            .collect();
        FreenessReport { level, rank: rank(&col_vectors), rows, cols, matrix, closed }
    }
}
