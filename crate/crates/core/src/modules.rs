//! Concrete Whittaker modules `V = R / (R g(Omega) + R R_eta(E))`, Verma
//! modules, and the central annihilator of a cyclic vector.
//!
//! A Whittaker module with `Z_V = (g)`, `n = deg g`, has the basis
//! `F^i H^j w` with `0 <= i < n`; the universal module (`g = 0`) has no bound
//! on `i`. Vectors are sparse tables keyed by `(i, j)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::center::{FhElement, WhittakerCharacter, WhittakerModel};
use crate::error::{Error, Result};
use crate::factor::{factor_over_rationals, FactoredPoly};
use crate::linalg::{canonical_basis, kernel, Echelon, SparseVector};
use crate::pbw::{Monomial, PbwElement, SmithAlgebra};
use crate::poly::Polynomial;
use crate::scalar::{pow, Scalar};
use crate::structure::{certify_irreducible, Verdict};

/// `sum coeff * F^i H^j w`, keyed by `(i, j)`.
pub type ModuleVector<T> = SparseVector<(u32, u32), T>;

/// `sum coeff * F^k v_lambda`, keyed by `k`.
pub type VermaVector<T> = SparseVector<u32, T>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E,
    F,
    H,
}

impl Generator {
    pub fn element<T: Scalar>(self) -> PbwElement<T> {
        match self {
            Generator::E => PbwElement::e(),
            Generator::F => PbwElement::f(),
            Generator::H => PbwElement::h(),
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "E" => Ok(Generator::E),
            "F" => Ok(Generator::F),
            "H" => Ok(Generator::H),
            other => Err(format!("unknown generator {other:?}, expected E, F or H")),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::H => "H",
        })
    }
}

/// A module generated by one vector, on which `R(f)` acts exactly.
pub trait CyclicModule<T: Scalar> {
    type Key: Ord + Clone + fmt::Debug;

    fn algebra(&self) -> &SmithAlgebra<T>;

    fn cyclic_vector(&self) -> SparseVector<Self::Key, T>;

    fn act(&self, x: &PbwElement<T>, v: &SparseVector<Self::Key, T>) -> SparseVector<Self::Key, T>;

    fn act_generator(&self, gen: Generator, v: &SparseVector<Self::Key, T>) -> SparseVector<Self::Key, T> {
        self.act(&gen.element(), v)
    }
}

/// Least-degree monic `p` with `p(Omega) v = 0`, found as the first linear
/// dependence among `v, Omega v, ..., Omega^max_degree v`. Returns the zero
/// polynomial when there is none within the bound.
pub fn central_annihilator<T: Scalar, M: CyclicModule<T>>(
    module: &M,
    v: &SparseVector<M::Key, T>,
    max_degree: usize,
) -> Polynomial<T> {
    let omega = module.algebra().casimir().clone();
    let mut ech = Echelon::new();
    let mut current = v.clone();
    for k in 0..=max_degree {
        if let Err(relation) = ech.insert(&current) {
            // relation has coefficient 1 on Omega^k v
            let coeffs = (0..=k).map(|i| relation.get(&i)).collect();
            return Polynomial::new(coeffs);
        }
        current = module.act(&omega, &current);
    }
    Polynomial::zero()
}

/// Grouped form of a module vector: `i -> coefficient polynomial in H`.
type Grouped<T> = BTreeMap<u32, Polynomial<T>>;

fn group<T: Scalar>(v: &ModuleVector<T>) -> Grouped<T> {
    let mut out: BTreeMap<u32, Vec<T>> = BTreeMap::new();
    for (&(i, j), c) in v.iter() {
        let coeffs = out.entry(i).or_default();
        if coeffs.len() <= j as usize {
            coeffs.resize(j as usize + 1, T::zero());
        }
        coeffs[j as usize] = c.clone();
    }
    out.into_iter().map(|(i, c)| (i, Polynomial::new(c))).collect()
}

fn ungroup<T: Scalar>(g: &Grouped<T>) -> ModuleVector<T> {
    SparseVector::from_terms(g.iter().flat_map(|(&i, p)| {
        p.coeffs()
            .iter()
            .enumerate()
            .map(move |(j, c)| ((i, j as u32), c.clone()))
    }))
}

fn add_into<T: Scalar>(acc: &mut Grouped<T>, i: u32, p: Polynomial<T>) {
    if p.is_zero() {
        return;
    }
    let slot = acc.entry(i).or_insert_with(Polynomial::zero);
    *slot = &*slot + &p;
    if slot.is_zero() {
        acc.remove(&i);
    }
}

#[derive(Clone, Debug)]
pub struct WhittakerModule<T: Scalar> {
    model: WhittakerModel<T>,
    g: Polynomial<T>,
    /// `g(Omega^eta)` normal-ordered; empty for the universal module.
    reduction_rule: FhElement<T>,
    /// `reduction_rule = sum_m F^m rule[m](H)`, `rule[n] = (2 eta(E))^n`.
    rule: Vec<Polynomial<T>>,
    factored: Option<FactoredPoly<T>>,
    /// `G_i` for `E F^i = F^i E + F^(i-1) G_i(H)`, precomputed for `i < n`.
    e_table: Vec<Polynomial<T>>,
}

impl<T: Scalar> WhittakerModule<T> {
    /// `g = 0` gives the universal module `Y_eta`; `g = Omega - a` gives
    /// `Y_{xi,eta}`.
    pub fn new(alg: SmithAlgebra<T>, eta: WhittakerCharacter<T>, g: Polynomial<T>) -> Result<Self> {
        if !g.is_zero() && !g.is_monic() {
            return Err(Error::NotMonic(g.leading().expect("nonzero").to_string()));
        }
        let model = WhittakerModel::new(alg, eta);
        let reduction_rule = model.omega_eta_poly(&g);
        let n = g.degree().unwrap_or(0);
        let mut rule = vec![Polynomial::zero(); if g.is_zero() { 0 } else { n + 1 }];
        for ((m, _), poly) in reduction_rule.as_element().grouped() {
            rule[m as usize] = poly;
        }
        let factored = if g.is_zero() { None } else { Some(factor_over_rationals(&g)?) };
        let e_table = (0..n as u32).map(|i| model.algebra().e_power_f_correction(i)).collect();
        Ok(Self { model, g, reduction_rule, rule, factored, e_table })
    }

    pub fn model(&self) -> &WhittakerModel<T> {
        &self.model
    }

    pub fn character(&self) -> &WhittakerCharacter<T> {
        self.model.character()
    }

    pub fn eta_e(&self) -> &T {
        self.model.character().eta_e()
    }

    pub fn g(&self) -> &Polynomial<T> {
        &self.g
    }

    /// `deg g`, or `None` for the universal module.
    pub fn n(&self) -> Option<usize> {
        self.g.degree()
    }

    pub fn is_universal(&self) -> bool {
        self.g.is_zero()
    }

    pub fn reduction_rule(&self) -> &FhElement<T> {
        &self.reduction_rule
    }

    pub fn factored(&self) -> Option<&FactoredPoly<T>> {
        self.factored.as_ref()
    }

    /// The cyclic Whittaker vector `w` (zero when `g = 1`).
    pub fn w(&self) -> ModuleVector<T> {
        if self.n() == Some(0) {
            return ModuleVector::zero();
        }
        SparseVector::basis((0, 0))
    }

    /// `n (deg u + 1) + 8`, with `n = 1` for the universal module.
    pub fn default_truncation(&self) -> usize {
        let deg_u = self.model.algebra().u_poly().degree().unwrap_or(0);
        self.n().unwrap_or(1).max(1) * (deg_u + 1) + 8
    }

    /// Kazhdan degree `i(d+1) + j` of the highest basis term; `None` for zero.
    pub fn kazhdan_degree(&self, v: &ModuleVector<T>) -> Option<usize> {
        v.keys().map(|&(i, j)| self.model.fh_degree(i, j)).max()
    }

    pub fn validate(&self, v: &ModuleVector<T>) -> Result<()> {
        if let Some(n) = self.n() {
            if let Some(&(i, j)) = v.keys().find(|&&(i, _)| i as usize >= n) {
                return Err(Error::NotInModule { i, j, bound: n });
            }
        }
        Ok(())
    }

    /// Rewrites every `F^i q(H) w` with `i >= n` using `g(Omega^eta) w = 0`.
    fn reduce(&self, mut x: Grouped<T>) -> ModuleVector<T> {
        let Some(n) = self.n() else {
            return ungroup(&x);
        };
        let n32 = n as u32;
        let lead_inv = T::one() / self.rule[n].coeff(0);
        while let Some((&i, _)) = x.iter().next_back().filter(|(&i, _)| i >= n32) {
            let q = x.remove(&i).expect("present");
            // F^(i-n) q'(H) * rule cancels F^i q(H), q'(H) = q(H+n) / lead
            let q_shifted = q.shift_int(n as i64).scale(&lead_inv);
            for (m, s) in self.rule.iter().enumerate().take(n) {
                if s.is_zero() {
                    continue;
                }
                let term = &q_shifted.shift_int(-(m as i64)) * s;
                add_into(&mut x, i - n32 + m as u32, -term);
            }
        }
        ungroup(&x)
    }

    /// Reduces an element of `R(F,H)` to its image `x w` in the module basis.
    pub fn apply_fh(&self, x: &FhElement<T>) -> ModuleVector<T> {
        let v = x.to_vector();
        self.reduce(group(&v))
    }

    /// `E F^i H^j w`, using the precomputed commutation table when `i < n`.
    fn e_on_basis(&self, i: u32, j: u32, acc: &mut Grouped<T>, c: &T) {
        let hj = Polynomial::monomial(c.clone(), j as usize);
        add_into(acc, i, hj.shift_int(-1).scale(self.eta_e()));
        if i > 0 {
            let gi = match self.e_table.get(i as usize) {
                Some(g) => g.clone(),
                None => self.model.algebra().e_power_f_correction(i),
            };
            add_into(acc, i - 1, &gi * &hj);
        }
    }

    pub fn act_generator(&self, gen: Generator, v: &ModuleVector<T>) -> ModuleVector<T> {
        let mut acc = Grouped::new();
        for (&(i, j), c) in v.iter() {
            match gen {
                // H F^i H^j = F^i (H - i) H^j
                Generator::H => {
                    let mut coeffs = vec![T::zero(); j as usize + 2];
                    coeffs[j as usize + 1] = c.clone();
                    coeffs[j as usize] = -c.clone() * T::from_int(i as i64);
                    add_into(&mut acc, i, Polynomial::new(coeffs));
                }
                Generator::F => add_into(&mut acc, i + 1, Polynomial::monomial(c.clone(), j as usize)),
                Generator::E => self.e_on_basis(i, j, &mut acc, c),
            }
        }
        self.reduce(acc)
    }

    /// `x v` for any element `x`: each `x F^i H^j` is normal-ordered, its
    /// `E^c` absorbed as `eta(E)^c` against `w`, then reduced.
    pub fn act_element(&self, x: &PbwElement<T>, v: &ModuleVector<T>) -> ModuleVector<T> {
        let alg = self.model.algebra();
        let mut acc = ModuleVector::zero();
        for (&(i, j), c) in v.iter() {
            let basis = PbwElement::monomial(Monomial::new(i, j, 0), c.clone());
            let product = self.model.project(&alg.mul(x, &basis));
            acc = acc.add(&product.to_vector());
        }
        self.reduce(group(&acc))
    }

    /// Basis vectors `F^i H^j w` with `j <= depth` (and `i <= depth` for the
    /// universal module).
    pub fn truncated_basis(&self, depth: usize) -> Vec<(u32, u32)> {
        let imax = self.n().map(|n| n.saturating_sub(1)).unwrap_or(depth);
        let mut out = Vec::new();
        for i in 0..=imax as u32 {
            for j in 0..=depth as u32 {
                out.push((i, j));
            }
        }
        if self.n() == Some(0) {
            out.clear();
        }
        out
    }

    /// Exact Whittaker vectors `E v = eta(E) v` among vectors supported on
    /// the truncated basis, returned as a canonical reduced basis.
    pub fn whittaker_vectors(&self, depth: usize) -> Vec<ModuleVector<T>> {
        let basis = self.truncated_basis(depth);
        let eta = self.eta_e().clone();
        let images: Vec<ModuleVector<T>> = basis
            .iter()
            .map(|&key| {
                let b = ModuleVector::basis(key);
                self.act_generator(Generator::E, &b).sub(&b.scale(&eta))
            })
            .collect();
        let solutions: Vec<ModuleVector<T>> = kernel(&images)
            .into_iter()
            .map(|combo| SparseVector::from_terms(combo.iter().map(|(&k, c)| (basis[k], c.clone()))))
            .collect();
        canonical_basis(&solutions)
    }

    /// `Omega^k w` for `k = 0..count`.
    pub fn omega_powers_on_w(&self, count: usize) -> Vec<ModuleVector<T>> {
        self.model
            .omega_eta_powers(count.saturating_sub(1) as u32)
            .iter()
            .take(count)
            .map(|p| self.apply_fh(p))
            .collect()
    }

    /// `p(Omega) w`.
    pub fn casimir_poly_on_w(&self, p: &Polynomial<T>) -> ModuleVector<T> {
        self.apply_fh(&self.model.omega_eta_poly(p))
    }

    /// Decides `x w = 0` without the module action: `x` is in
    /// `R Z_V + R R_eta(E)` iff `x^eta` lies in the left ideal of `R(F,H)`
    /// generated by `r = g(Omega^eta)`. The generators `F^i H^j r` have
    /// distinct leading terms `F^(i+n) H^j`, so the target is eliminated
    /// top-down using only generators of Kazhdan degree at most
    /// `kdeg(x^eta) + buffer`, each multiplied out in the algebra.
    pub fn ideal_membership_in_window(&self, x: &PbwElement<T>, buffer: usize) -> bool {
        let alg = self.model.algebra();
        let mut target = self.model.project(x).to_vector();
        let Some(top) = target.keys().map(|&(i, j)| self.model.fh_degree(i, j)).max() else {
            return true;
        };
        let Some(n) = self.n() else {
            return false;
        };
        let level = top + buffer;
        let n32 = n as u32;
        let lead = pow(&(T::from_int(2) * self.eta_e().clone()), n32);
        while let Some(&(a, b)) = target.leading_key() {
            if a < n32 {
                break;
            }
            if self.model.fh_degree(a, b) > level {
                return false;
            }
            let mono = PbwElement::monomial(Monomial::new(a - n32, b, 0), T::one());
            let generator = alg.mul(&mono, self.reduction_rule.as_element());
            let gv = generator.as_vector().map_keys(|m| (m.f, m.h));
            debug_assert_eq!(gv.leading_key(), Some(&(a, b)));
            let c = target.get(&(a, b)) / lead.clone();
            target.axpy(&-c, &gv);
        }
        target.is_zero()
    }
}

impl<T: Scalar> CyclicModule<T> for WhittakerModule<T> {
    type Key = (u32, u32);

    fn algebra(&self) -> &SmithAlgebra<T> {
        self.model.algebra()
    }

    fn cyclic_vector(&self) -> ModuleVector<T> {
        self.w()
    }

    fn act(&self, x: &PbwElement<T>, v: &ModuleVector<T>) -> ModuleVector<T> {
        self.act_element(x, v)
    }

    fn act_generator(&self, gen: Generator, v: &ModuleVector<T>) -> ModuleVector<T> {
        WhittakerModule::act_generator(self, gen, v)
    }
}

/// The Verma module `M_lambda`: `E v = 0`, `H v = lambda v`, basis `F^k v`.
#[derive(Clone, Debug)]
pub struct VermaModule<T: Scalar> {
    alg: SmithAlgebra<T>,
    lambda: T,
}

impl<T: Scalar> VermaModule<T> {
    pub fn new(alg: SmithAlgebra<T>, lambda: T) -> Self {
        Self { alg, lambda }
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    /// `u(lambda + 1)`, the scalar by which `Omega` acts.
    pub fn casimir_scalar(&self) -> T {
        self.alg.u_poly().eval(&(self.lambda.clone() + T::one()))
    }
}

impl<T: Scalar> CyclicModule<T> for VermaModule<T> {
    type Key = u32;

    fn algebra(&self) -> &SmithAlgebra<T> {
        &self.alg
    }

    fn cyclic_vector(&self) -> VermaVector<T> {
        SparseVector::basis(0)
    }

    fn act(&self, x: &PbwElement<T>, v: &VermaVector<T>) -> VermaVector<T> {
        let mut out = VermaVector::zero();
        for (&k, c) in v.iter() {
            let fk = PbwElement::monomial(Monomial::new(k, 0, 0), c.clone());
            for (m, coeff) in self.alg.mul(x, &fk).terms() {
                if m.e == 0 {
                    out.add_term(m.f, coeff.clone() * pow(&self.lambda, m.h));
                }
            }
        }
        out
    }

    fn act_generator(&self, gen: Generator, v: &VermaVector<T>) -> VermaVector<T> {
        let mut out = VermaVector::zero();
        for (&k, c) in v.iter() {
            match gen {
                Generator::F => out.add_term(k + 1, c.clone()),
                Generator::H => out.add_term(k, c.clone() * (self.lambda.clone() - T::from_int(k as i64))),
                // E F^k v = F^(k-1) G_k(H) v = G_k(lambda) F^(k-1) v
                Generator::E if k > 0 => {
                    let gk = self.alg.e_power_f_correction(k);
                    out.add_term(k - 1, c.clone() * gk.eval(&self.lambda));
                }
                Generator::E => {}
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    Isomorphic,
    NotIsomorphic,
    /// At least one module is not certified irreducible.
    Undecided,
}

/// Irreducible Whittaker modules of the same type are isomorphic exactly
/// when their central annihilators agree.
pub fn isomorphism_test<T: Scalar>(a: &WhittakerModule<T>, b: &WhittakerModule<T>) -> Result<Isomorphism> {
    if a.model.algebra().f_poly() != b.model.algebra().f_poly()
        || a.model.algebra().u_poly() != b.model.algebra().u_poly()
        || a.eta_e() != b.eta_e()
    {
        return Err(Error::MismatchedModules);
    }
    let irreducible = |m: &WhittakerModule<T>| -> Result<bool> {
        let cert = certify_irreducible(m, m.default_truncation())?;
        Ok(cert.verdict == Verdict::Irreducible)
    };
    if !irreducible(a)? || !irreducible(b)? {
        return Ok(Isomorphism::Undecided);
    }
    let ann = |m: &WhittakerModule<T>| central_annihilator(m, &m.w(), m.n().unwrap_or(0) + 1);
    Ok(if ann(a) == ann(b) { Isomorphism::Isomorphic } else { Isomorphism::NotIsomorphic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn module(f: &[i64], eta: i64, g: &[i64]) -> WhittakerModule<Q> {
        WhittakerModule::new(
            SmithAlgebra::new(Polynomial::from_ints(f)),
            WhittakerCharacter::new(q(eta)).unwrap(),
            Polynomial::from_ints(g),
        )
        .unwrap()
    }

    fn vec_of(terms: &[((u32, u32), i64)]) -> ModuleVector<Q> {
        SparseVector::from_terms(terms.iter().map(|&(k, c)| (k, q(c))))
    }

    #[test]
    fn non_monic_g_rejected() {
        let r = WhittakerModule::new(
            SmithAlgebra::new(Polynomial::from_ints(&[0, 2])),
            WhittakerCharacter::new(q(1)).unwrap(),
            Polynomial::from_ints(&[1, 2]),
        );
        assert!(matches!(r, Err(Error::NotMonic(_))));
    }

    #[test]
    fn f_on_w_for_linear_g() {
        // f = 2H, eta = 1, g = Omega: F w = -(H^2 + H) w
        let m = module(&[0, 2], 1, &[0, 1]);
        assert_eq!(
            m.act_generator(Generator::F, &m.w()),
            vec_of(&[((0, 2), -1), ((0, 1), -1)])
        );
        assert_eq!(m.reduction_rule().coeff(1, 0), q(2));
    }

    #[test]
    fn universal_module_has_no_reduction() {
        let m = module(&[0, 2], 1, &[]);
        assert!(m.is_universal());
        let f3 = (0..3).fold(m.w(), |v, _| m.act_generator(Generator::F, &v));
        assert_eq!(f3, vec_of(&[((3, 0), 1)]));
    }

    #[test]
    fn generator_action_matches_element_action() {
        let m = module(&[-1, 0, 1], 2, &[2, -3, 1]);
        let v = vec_of(&[((0, 0), 1), ((1, 2), -3), ((0, 4), 5)]);
        for g in [Generator::E, Generator::F, Generator::H] {
            assert_eq!(m.act_generator(g, &v), m.act_element(&g.element(), &v), "{g}");
        }
    }

    #[test]
    fn casimir_acts_by_a_on_linear_modules() {
        let m = module(&[0, 2], 3, &[-5, 1]);
        let v = vec_of(&[((0, 3), 2), ((0, 1), 1)]);
        let omega = m.model().algebra().casimir().clone();
        assert_eq!(m.act_element(&omega, &v), v.scale(&q(5)));
    }

    #[test]
    fn whittaker_vectors_of_linear_module() {
        let m = module(&[0, 2], 1, &[-1, 1]);
        for depth in [0, 3, 7] {
            assert_eq!(m.whittaker_vectors(depth), vec![m.w()]);
        }
    }

    #[test]
    fn annihilators() {
        let m = module(&[0, 2], 1, &[2, -3, 1]);
        assert_eq!(central_annihilator(&m, &m.w(), 5), Polynomial::from_ints(&[2, -3, 1]));
        let universal = module(&[0, 2], 1, &[]);
        assert!(central_annihilator(&universal, &universal.w(), 4).is_zero());
    }

    #[test]
    fn verma_examples() {
        let alg = SmithAlgebra::new(Polynomial::from_ints(&[0, 2]));
        let verma = VermaModule::new(alg, q(1));
        let v = verma.cyclic_vector();
        assert!(verma.act_generator(Generator::E, &v).is_zero());
        let fv = verma.act_generator(Generator::F, &v);
        assert_eq!(verma.act_generator(Generator::E, &fv), v.scale(&q(2)));
        assert_eq!(verma.casimir_scalar(), q(4));
        assert_eq!(central_annihilator(&verma, &v, 3), Polynomial::from_ints(&[-4, 1]));
    }
}
