//! Elements of `R(f)` in PBW normal form `F^a H^b E^c` and the algebra's
//! multiplication.
//!
//! The defining relations `EF - FE = f(H)`, `HE - EH = E`, `HF - FH = -F`
//! give the batched rewriting rules
//!
//! ```text
//! p(H) F^m   = F^m p(H - m)
//! E^j q(H)   = q(H - j) E^j
//! E^j F      = F E^j + G_j(H) E^(j-1),   G_j(H) = f(H) + f(H-1) + ... + f(H-j+1)
//! ```
//!
//! and products of normal monomials are assembled from them in closed form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::SparseVector;
use crate::poly::{discrete_antiderivative, Polynomial};
use crate::scalar::Scalar;

/// The normal monomial `F^f H^h E^e`. Ordering is lexicographic in (f, h, e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub f: u32,
    pub h: u32,
    pub e: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { f: 0, h: 0, e: 0 };

    pub fn new(f: u32, h: u32, e: u32) -> Self {
        Self { f, h, e }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, k) in [("F", self.f), ("H", self.h), ("E", self.e)] {
            match k {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            out.write_str("1")
        } else {
            out.write_str(&parts.join("*"))
        }
    }
}

/// A finite combination `sum coeff * F^a H^b E^c`, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwElement<T: Scalar> {
    terms: SparseVector<Monomial, T>,
}

/// `(F-exponent, E-exponent) -> coefficient polynomial in H`.
type Grouped<T> = BTreeMap<(u32, u32), Polynomial<T>>;

impl<T: Scalar> PbwElement<T> {
    pub fn zero() -> Self {
        Self { terms: SparseVector::zero() }
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(c: T) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: T) -> Self {
        Self { terms: SparseVector::term(m, c) }
    }

    pub fn e() -> Self {
        Self::monomial(Monomial::new(0, 0, 1), T::one())
    }

    pub fn f() -> Self {
        Self::monomial(Monomial::new(1, 0, 0), T::one())
    }

    pub fn h() -> Self {
        Self::monomial(Monomial::new(0, 1, 0), T::one())
    }

    /// `p(H)` as an element of the Cartan part.
    pub fn from_h_poly(p: &Polynomial<T>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(b, c)| (Monomial::new(0, b as u32, 0), c.clone())),
        )
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        Self { terms: SparseVector::from_terms(terms) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m)
    }

    /// Terms in ascending `(a, b, c)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_vector(&self) -> &SparseVector<Monomial, T> {
        &self.terms
    }

    pub fn from_vector(terms: SparseVector<Monomial, T>) -> Self {
        Self { terms }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { terms: self.terms.scale(c) }
    }

    /// Largest E-exponent, `None` for zero.
    pub fn max_e_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.e).max()
    }

    /// True iff the element lies in the polynomial subalgebra generated by `E`.
    pub fn is_in_e_subalgebra(&self) -> bool {
        self.terms.keys().all(|m| m.f == 0 && m.h == 0)
    }

    pub(crate) fn grouped(&self) -> Grouped<T> {
        let mut out: BTreeMap<(u32, u32), Vec<T>> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let coeffs = out.entry((m.f, m.e)).or_default();
            let b = m.h as usize;
            if coeffs.len() <= b {
                coeffs.resize(b + 1, T::zero());
            }
            coeffs[b] = c.clone();
        }
        out.into_iter().map(|(k, v)| (k, Polynomial::new(v))).collect()
    }

    pub(crate) fn from_grouped(g: &Grouped<T>) -> Self {
        Self::from_terms(g.iter().flat_map(|(&(a, c), p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(b, coeff)| (Monomial::new(a, b as u32, c), coeff.clone()))
        }))
    }
}

impl<T: Scalar> Add for &PbwElement<T> {
    type Output = PbwElement<T>;

    fn add(self, rhs: Self) -> PbwElement<T> {
        PbwElement { terms: self.terms.add(&rhs.terms) }
    }
}

impl<T: Scalar> Sub for &PbwElement<T> {
    type Output = PbwElement<T>;

    fn sub(self, rhs: Self) -> PbwElement<T> {
        PbwElement { terms: self.terms.sub(&rhs.terms) }
    }
}

impl<T: Scalar> Neg for &PbwElement<T> {
    type Output = PbwElement<T>;

    fn neg(self) -> PbwElement<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> fmt::Display for PbwElement<T> {
    /// Highest monomial first, e.g. `2*F*E + 2*H^2 + 2*H`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => out.write_str("-")?,
                (true, false) => {}
                (false, true) => out.write_str(" - ")?,
                (false, false) => out.write_str(" + ")?,
            }
            first = false;
            if *m == Monomial::ONE {
                write!(out, "{mag}")?;
            } else if mag.is_one() {
                write!(out, "{m}")?;
            } else {
                write!(out, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The algebra `R(f)` together with its Casimir data.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithAlgebra<T: Scalar> {
    f: Polynomial<T>,
    u: Polynomial<T>,
    d: usize,
    casimir: PbwElement<T>,
}

impl<T: Scalar> SmithAlgebra<T> {
    pub fn new(f: Polynomial<T>) -> Self {
        let u = discrete_antiderivative(&f);
        Self::with_antiderivative_unchecked(f, u)
    }

    /// Builds the algebra with a caller-supplied `u`, which is *not* checked
    /// against `f`. Exists so verification suites can be mutation-tested.
    pub fn with_antiderivative_unchecked(f: Polynomial<T>, u: Polynomial<T>) -> Self {
        let d = f.degree().unwrap_or(0);
        let two_fe = PbwElement::monomial(Monomial::new(1, 0, 1), T::from_int(2));
        let casimir = &two_fe + &PbwElement::from_h_poly(&u.shift(&T::one()));
        Self { f, u, d, casimir }
    }

    pub fn f_poly(&self) -> &Polynomial<T> {
        &self.f
    }

    pub fn u_poly(&self) -> &Polynomial<T> {
        &self.u
    }

    /// `deg f`, with `0` for constant and zero `f`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// `Omega = 2FE + u(H+1)`.
    pub fn casimir(&self) -> &PbwElement<T> {
        &self.casimir
    }

    /// `p(Omega)`.
    pub fn casimir_poly(&self, p: &Polynomial<T>) -> PbwElement<T> {
        let mut acc = PbwElement::zero();
        let mut power = PbwElement::one();
        for (k, c) in p.coeffs().iter().enumerate() {
            if k > 0 {
                power = self.mul(&power, &self.casimir);
            }
            acc = &acc + &power.scale(c);
        }
        acc
    }

    /// `G_j(H) = sum_{t<j} f(H - t)`, so that `E^j F = F E^j + G_j(H) E^(j-1)`.
    pub fn e_power_f_correction(&self, j: u32) -> Polynomial<T> {
        (0..j as i64).fold(Polynomial::zero(), |acc, t| &acc + &self.f.shift_int(-t))
    }

    /// `E^c F^m = sum_k F^(m-k) r_k(H) E^(c-k)`; returns `[r_0, r_1, ...]`.
    fn e_power_times_f_power(&self, c: u32, m: u32, corrections: &mut HashMap<u32, Polynomial<T>>) -> Vec<Polynomial<T>> {
        let mut table = vec![Polynomial::one()];
        for step in 0..m {
            let mut next = vec![Polynomial::zero(); table.len() + 1];
            for (k, r) in table.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                next[k] = &next[k] + &r.shift_int(-1);
                let j = c - k as u32;
                if j >= 1 {
                    let gj = corrections
                        .entry(j)
                        .or_insert_with(|| self.e_power_f_correction(j));
                    next[k + 1] = &next[k + 1] + &(r * &*gj);
                }
            }
            // k never exceeds min(c, step + 1)
            next.truncate((c.min(step + 1) + 1) as usize);
            table = next;
        }
        table
    }

    /// The product `x * y` in normal form.
    pub fn mul(&self, x: &PbwElement<T>, y: &PbwElement<T>) -> PbwElement<T> {
        if x.is_zero() || y.is_zero() {
            return PbwElement::zero();
        }
        let gx = x.grouped();
        let gy = y.grouped();
        let mut corrections = HashMap::new();
        let mut tables: HashMap<(u32, u32), Vec<Polynomial<T>>> = HashMap::new();
        let mut acc: Grouped<T> = BTreeMap::new();
        for (&(a, c), p) in &gx {
            for (&(a2, c2), q) in &gy {
                let table = tables
                    .entry((c, a2))
                    .or_insert_with(|| self.e_power_times_f_power(c, a2, &mut corrections));
                for (k, r) in table.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let k = k as u32;
                    let left = p.shift_int(-((a2 - k) as i64));
                    let right = q.shift_int(-((c - k) as i64));
                    let coeff = &(&left * r) * &right;
                    let slot = acc.entry((a + a2 - k, c - k + c2)).or_insert_with(Polynomial::zero);
                    *slot = &*slot + &coeff;
                }
            }
        }
        PbwElement::from_grouped(&acc)
    }

    pub fn pow(&self, x: &PbwElement<T>, k: u32) -> PbwElement<T> {
        (0..k).fold(PbwElement::one(), |acc, _| self.mul(&acc, x))
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, x: &PbwElement<T>, y: &PbwElement<T>) -> PbwElement<T> {
        &self.mul(x, y) - &self.mul(y, x)
    }

    /// Degree under `deg H = 1`, `deg E = deg F = d + 1`; `None` for zero.
    pub fn kazhdan_degree(&self, x: &PbwElement<T>) -> Option<usize> {
        let w = self.d as u32 + 1;
        x.terms().map(|(m, _)| (m.f * w + m.h + m.e * w) as usize).max()
    }

    pub fn is_central(&self, x: &PbwElement<T>) -> bool {
        [PbwElement::e(), PbwElement::f(), PbwElement::h()]
            .iter()
            .all(|g| self.commutator(g, x).is_zero())
    }

    /// Least `N <= cap` with `(ad E)^N (x) = 0`.
    pub fn ad_e_nilpotency_index(&self, x: &PbwElement<T>, cap: usize) -> Result<usize> {
        let e = PbwElement::e();
        let mut y = x.clone();
        for n in 0..=cap {
            if y.is_zero() {
                return Ok(n);
            }
            y = self.commutator(&e, &y);
        }
        Err(Error::NilpotencyCapExceeded { cap })
    }
}
