//! Submodule structure of a Whittaker module with `Z_V = (g)`.
//!
//! Submodules correspond to monic divisors `d | g` via `d -> R d(Omega) w`,
//! with inverse the transporter `{x in Z : x V ⊆ V'}`. Membership in a
//! submodule is decided by exact linear algebra inside a Kazhdan-degree
//! window, and every answer is re-checked with a larger window.

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::linalg::{kernel, rank, Echelon};
use crate::modules::{central_annihilator, Generator, ModuleVector, WhittakerModule};
use crate::pbw::{Monomial, PbwElement};
use crate::poly::{extended_gcd, Polynomial};
use crate::scalar::Scalar;

/// Extra Kazhdan degrees added to every membership window.
pub const WINDOW_BUFFER: usize = 5;
/// The window used to confirm that an answer is stable.
pub const STABILITY_BUFFER: usize = 10;

/// The submodule `R d(Omega) w` for a monic divisor `d` of `g`.
#[derive(Clone, Debug)]
pub struct SubmoduleHandle<'m, T: Scalar> {
    parent: &'m WhittakerModule<T>,
    divisor: Polynomial<T>,
    generator: ModuleVector<T>,
}

impl<'m, T: Scalar> SubmoduleHandle<'m, T> {
    pub fn new(parent: &'m WhittakerModule<T>, divisor: Polynomial<T>) -> Result<Self> {
        if !divisor.is_monic() || !divisor.divides(parent.g()) {
            return Err(Error::NotADivisor(divisor.to_string_in("Omega")));
        }
        let generator = parent.casimir_poly_on_w(&divisor);
        Ok(Self { parent, divisor, generator })
    }

    pub fn parent(&self) -> &'m WhittakerModule<T> {
        self.parent
    }

    pub fn divisor(&self) -> &Polynomial<T> {
        &self.divisor
    }

    /// `d(Omega) w`, a Whittaker vector generating the submodule.
    pub fn generator(&self) -> &ModuleVector<T> {
        &self.generator
    }

    pub fn is_zero_submodule(&self) -> bool {
        self.generator.is_zero()
    }

    /// Vectors `F^a H^b d(Omega) w` with Kazhdan degree at most `level`; they
    /// form a basis of the part of the submodule in that window.
    pub fn window_basis(&self, level: usize) -> Vec<ModuleVector<T>> {
        let model = self.parent.model();
        let alg = model.algebra();
        let w = alg.d() + 1;
        let deg_d = self.divisor.degree().expect("monic");
        let a_limit = match self.parent.n() {
            Some(n) => n.saturating_sub(deg_d),
            None => usize::MAX,
        };
        let base = deg_d * w;
        if level < base {
            return Vec::new();
        }
        let d_eta = model.omega_eta_poly(&self.divisor);
        let mut out = Vec::new();
        let mut a = 0usize;
        while a < a_limit && base + a * w <= level {
            for b in 0..=(level - base - a * w) {
                let mono = PbwElement::monomial(Monomial::new(a as u32, b as u32, 0), T::one());
                let x = crate::center::FhElement::new(alg.mul(&mono, d_eta.as_element()))
                    .expect("R(F,H) is a subalgebra");
                out.push(self.parent.apply_fh(&x));
            }
            a += 1;
        }
        out
    }

    fn contains_at(&self, v: &ModuleVector<T>, buffer: usize) -> bool {
        let Some(top) = self.parent.kazhdan_degree(v) else {
            return true;
        };
        crate::linalg::span_contains(&self.window_basis(top + buffer), v)
    }

    /// Exact membership, certified stable under window growth.
    pub fn contains(&self, v: &ModuleVector<T>) -> Result<bool> {
        let small = self.contains_at(v, WINDOW_BUFFER);
        if small != self.contains_at(v, STABILITY_BUFFER) {
            return Err(Error::UnstableMembership);
        }
        Ok(small)
    }

    /// Inclusion `self ⊆ other`, tested on the generator.
    pub fn is_contained_in(&self, other: &SubmoduleHandle<'_, T>) -> Result<bool> {
        other.contains(&self.generator)
    }
}

/// Least-degree monic `p` (degree at most `max_degree`) with
/// `p(Omega) v ∈ sub`, or `None`.
pub fn relative_annihilator<T: Scalar>(
    sub: &SubmoduleHandle<'_, T>,
    v: &ModuleVector<T>,
    max_degree: usize,
) -> Result<Option<Polynomial<T>>> {
    let module = sub.parent();
    let omega = module.model().algebra().casimir().clone();
    let mut powers = vec![v.clone()];
    for _ in 0..max_degree {
        let next = module.act_element(&omega, powers.last().expect("nonempty"));
        powers.push(next);
    }
    let top = powers.iter().filter_map(|p| module.kazhdan_degree(p)).max().unwrap_or(0);
    let attempt = |buffer: usize| -> Option<Polynomial<T>> {
        let gens = sub.window_basis(top + buffer);
        let mut ech = Echelon::new();
        for g in &gens {
            let _ = ech.insert(g);
        }
        for (k, pk) in powers.iter().enumerate() {
            if let Some(combo) = ech.solve(pk) {
                let mut coeffs: Vec<T> = (0..k).map(|i| -combo.get(&(gens.len() + i))).collect();
                coeffs.push(T::one());
                return Some(Polynomial::new(coeffs));
            }
            let _ = ech.insert(pk);
        }
        None
    };
    let small = attempt(WINDOW_BUFFER);
    if small != attempt(STABILITY_BUFFER) {
        return Err(Error::UnstableMembership);
    }
    Ok(small)
}

/// The transporter ideal `{x in Z : x V ⊆ sub}`, as its monic generator.
pub fn transporter_ideal<T: Scalar>(sub: &SubmoduleHandle<'_, T>) -> Result<Polynomial<T>> {
    let module = sub.parent();
    let bound = module
        .n()
        .unwrap_or_else(|| sub.divisor().degree().unwrap_or(0) + 1);
    relative_annihilator(sub, &module.w(), bound)?.ok_or(Error::UnstableMembership)
}

/// One divisor of `g`, with its exponent on each factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeEntry<T> {
    pub exponents: Vec<u32>,
    pub divisor: Polynomial<T>,
}

/// All monic divisors of `g`. Ordered by degree, then exponent vector, so
/// `1` comes first and `g` last.
#[derive(Clone, Debug)]
pub struct DivisorLattice<T> {
    pub factors: Vec<Factor<T>>,
    pub entries: Vec<LatticeEntry<T>>,
}

impl<T: Scalar> DivisorLattice<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self) -> &LatticeEntry<T> {
        &self.entries[0]
    }

    pub fn bottom(&self) -> &LatticeEntry<T> {
        self.entries.last().expect("the lattice always contains 1")
    }

    /// Entry `i` divides entry `j`.
    pub fn divides(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.entries[i].exponents, &self.entries[j].exponents);
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    fn index_of(&self, exponents: &[u32]) -> usize {
        self.entries
            .iter()
            .position(|e| e.exponents == exponents)
            .expect("closed under min and max")
    }

    /// gcd of the divisors: the join of the corresponding submodules.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let e: Vec<u32> = self.entries[i]
            .exponents
            .iter()
            .zip(&self.entries[j].exponents)
            .map(|(x, y)| *x.min(y))
            .collect();
        self.index_of(&e)
    }

    /// lcm of the divisors: the intersection of the corresponding submodules.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let e: Vec<u32> = self.entries[i]
            .exponents
            .iter()
            .zip(&self.entries[j].exponents)
            .map(|(x, y)| *x.max(y))
            .collect();
        self.index_of(&e)
    }

    pub fn handle<'m>(&self, module: &'m WhittakerModule<T>, i: usize) -> Result<SubmoduleHandle<'m, T>> {
        SubmoduleHandle::new(module, self.entries[i].divisor.clone())
    }
}

pub fn divisor_lattice<T: Scalar>(module: &WhittakerModule<T>) -> Result<DivisorLattice<T>> {
    let factored = module.factored().ok_or(Error::InfiniteLattice)?;
    let factors = factored.factors.clone();
    let mut entries = vec![LatticeEntry { exponents: vec![], divisor: Polynomial::one() }];
    for f in &factors {
        let mut next = Vec::new();
        for e in &entries {
            let mut power = Polynomial::one();
            for k in 0..=f.multiplicity {
                let mut exponents = e.exponents.clone();
                exponents.push(k);
                next.push(LatticeEntry { exponents, divisor: &e.divisor * &power });
                power = &power * &f.poly;
            }
        }
        entries = next;
    }
    entries.sort_by(|a, b| {
        (a.divisor.degree(), &a.exponents).cmp(&(b.divisor.degree(), &b.exponents))
    });
    Ok(DivisorLattice { factors, entries })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrtComponent<T> {
    /// `f_i^{n_i}`, the annihilator of the component.
    pub primary: Polynomial<T>,
    /// `g / f_i^{n_i}`; the component is `R cofactor(Omega) w`.
    pub cofactor: Polynomial<T>,
    /// `e_i ≡ 1 mod f_i^{n_i}`, `e_i ≡ 0 mod` the other primary parts.
    pub idempotent: Polynomial<T>,
    /// `e_i(Omega) w`.
    pub generator: ModuleVector<T>,
}

/// Splits `V` into indecomposable summands by the Chinese remainder theorem.
pub fn crt_decompose<T: Scalar>(module: &WhittakerModule<T>) -> Result<Vec<CrtComponent<T>>> {
    let factored = module.factored().ok_or(Error::AlreadyIndecomposable)?;
    if factored.factors.len() < 2 {
        return Err(Error::AlreadyIndecomposable);
    }
    let g = module.g();
    factored
        .factors
        .iter()
        .map(|f| {
            let primary = f.poly.pow(f.multiplicity);
            let cofactor = g.div_rem(&primary)?.0;
            let (_, s, _) = extended_gcd(&cofactor, &primary)?;
            let idempotent = (&s * &cofactor).rem(g)?;
            let generator = module.casimir_poly_on_w(&idempotent);
            Ok(CrtComponent { primary, cofactor, idempotent, generator })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesStep<T> {
    /// `V_k = R divisor(Omega) w`.
    pub divisor: Polynomial<T>,
    /// The irreducible factor `p` with `V_{k+1} = R (divisor p)(Omega) w`.
    pub factor: Polynomial<T>,
    /// Annihilator of the quotient `V_k / V_{k+1}` in the center.
    pub quotient_annihilator: Polynomial<T>,
    /// Whittaker vectors of the quotient.
    pub quotient_whittaker_dimension: usize,
    /// Linear factor with a one-dimensional space of Whittaker vectors.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionSeries<T> {
    pub steps: Vec<SeriesStep<T>>,
    pub bottom: Polynomial<T>,
}

impl<T: Scalar> CompositionSeries<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.steps.iter().all(|s| s.certified)
    }

    /// The chain `V = V_0 ⊃ V_1 ⊃ ... ⊃ 0` as divisors `1 | ... | g`.
    pub fn divisors(&self) -> Vec<Polynomial<T>> {
        let mut out: Vec<_> = self.steps.iter().map(|s| s.divisor.clone()).collect();
        out.push(self.bottom.clone());
        out
    }
}

/// Dimension of the Whittaker vectors of `upper / lower`, counted among
/// vectors of `upper` with Kazhdan degree at most `level`.
fn quotient_whittaker_dimension_at<T: Scalar>(
    upper: &SubmoduleHandle<'_, T>,
    lower: &SubmoduleHandle<'_, T>,
    level: usize,
) -> usize {
    let module = upper.parent();
    let eta = module.eta_e().clone();
    let up = upper.window_basis(level);
    let low = lower.window_basis(level);
    let mut columns: Vec<ModuleVector<T>> = up
        .iter()
        .map(|b| module.act_generator(Generator::E, b).sub(&b.scale(&eta)))
        .collect();
    columns.extend(low.iter().cloned());
    // the low columns are independent, so the nullity counts exactly the
    // solutions in `upper`; those in `lower` are then discarded
    kernel(&columns).len() - low.len()
}

pub fn quotient_whittaker_dimension<T: Scalar>(
    upper: &SubmoduleHandle<'_, T>,
    lower: &SubmoduleHandle<'_, T>,
) -> Result<usize> {
    let module = upper.parent();
    let w = module.model().algebra().d() + 1;
    let lower_deg = lower.divisor().degree().unwrap_or(0);
    let base = lower_deg * w;
    let small = quotient_whittaker_dimension_at(upper, lower, base + WINDOW_BUFFER);
    if small != quotient_whittaker_dimension_at(upper, lower, base + STABILITY_BUFFER) {
        return Err(Error::UnstableMembership);
    }
    Ok(small)
}

/// A maximal chain of submodules. Primary parts are handled in the order of
/// the factorization, so for non-primary `g` this is the concatenation of the
/// series of the CRT summands.
pub fn composition_series<T: Scalar>(module: &WhittakerModule<T>) -> Result<CompositionSeries<T>> {
    let factored = module.factored().ok_or(Error::InfiniteLattice)?;
    let mut steps = Vec::new();
    let mut current = Polynomial::one();
    for f in &factored.factors {
        for _ in 0..f.multiplicity {
            let next = &current * &f.poly;
            let upper = SubmoduleHandle::new(module, current.clone())?;
            let lower = SubmoduleHandle::new(module, next.clone())?;
            let quotient_annihilator = relative_annihilator(&lower, upper.generator(), f.poly.degree().unwrap_or(0))?
                .ok_or(Error::UnstableMembership)?;
            let dim = quotient_whittaker_dimension(&upper, &lower)?;
            steps.push(SeriesStep {
                divisor: current.clone(),
                factor: f.poly.clone(),
                quotient_annihilator,
                quotient_whittaker_dimension: dim,
                certified: f.certified_irreducible && f.poly.degree() == Some(1) && dim == 1,
            });
            current = next;
        }
    }
    Ok(CompositionSeries { steps, bottom: current })
}

#[derive(Clone, Debug)]
pub struct MaximalSubmodule<'m, T: Scalar> {
    pub handle: SubmoduleHandle<'m, T>,
    pub transporter: Polynomial<T>,
    pub quotient_whittaker_dimension: usize,
    pub verified: bool,
}

/// For primary `g = p^n`, the submodule `R p(Omega) w`.
pub fn unique_maximal_submodule<T: Scalar>(module: &WhittakerModule<T>) -> Result<MaximalSubmodule<'_, T>> {
    let factored = module.factored().ok_or(Error::NoUniqueMaximal)?;
    let [factor] = factored.factors.as_slice() else {
        return Err(Error::NoUniqueMaximal);
    };
    let handle = SubmoduleHandle::new(module, factor.poly.clone())?;
    let whole = SubmoduleHandle::new(module, Polynomial::one())?;
    let transporter = transporter_ideal(&handle)?;
    let dim = quotient_whittaker_dimension(&whole, &handle)?;
    let verified = factor.certified_irreducible && transporter == factor.poly && dim == 1;
    Ok(MaximalSubmodule { handle, transporter, quotient_whittaker_dimension: dim, verified })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
    /// `g` is a single factor with no rational root: irreducible over the
    /// rationals, but reducible after extending scalars.
    IrreducibleOverRationals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    /// `deg g`, `None` for the universal module.
    pub annihilator_degree: Option<usize>,
    pub whittaker_dimension: usize,
    pub depth: usize,
}

/// Irreducible iff `Z_V` is maximal (`deg g = 1`) iff the Whittaker vectors
/// are one-dimensional; both are computed and must agree.
pub fn certify_irreducible<T: Scalar>(module: &WhittakerModule<T>, depth: usize) -> Result<Certificate> {
    let degree = module.n();
    let dimension = module.whittaker_vectors(depth).len();
    let maximal = degree == Some(1);
    if maximal != (dimension == 1) {
        return Err(Error::InconsistentCertification { degree: degree.unwrap_or(0), dimension });
    }
    let flagged = module.factored().is_some_and(|fp| {
        matches!(fp.factors.as_slice(), [f] if f.multiplicity == 1 && !f.certified_irreducible)
    });
    let verdict = if maximal {
        Verdict::Irreducible
    } else if flagged {
        Verdict::IrreducibleOverRationals
    } else {
        Verdict::Reducible
    };
    Ok(Certificate { verdict, annihilator_degree: degree, whittaker_dimension: dimension, depth })
}

/// Truncated dimensions used to check that CRT components are a direct sum:
/// `(sum of component ranks, rank of their union, rank for V)`, each over
/// `H^b Omega^q x` with `b <= depth`, `q` below the relevant degree.
pub fn crt_truncated_ranks<T: Scalar>(
    module: &WhittakerModule<T>,
    components: &[CrtComponent<T>],
    depth: usize,
) -> (usize, usize, usize) {
    let omega = module.model().algebra().casimir().clone();
    let spanning = |x: &ModuleVector<T>, count: usize| -> Vec<ModuleVector<T>> {
        let mut out = Vec::new();
        let mut power = x.clone();
        for _ in 0..count {
            let mut hv = power.clone();
            for _ in 0..=depth {
                out.push(hv.clone());
                hv = module.act_generator(Generator::H, &hv);
            }
            power = module.act_element(&omega, &power);
        }
        out
    };
    let mut union = Vec::new();
    let mut sum = 0;
    for c in components {
        let span = spanning(&c.generator, c.primary.degree().unwrap_or(0));
        sum += rank(&span);
        union.extend(span);
    }
    let whole = rank(&spanning(&module.w(), module.n().unwrap_or(0)));
    (sum, rank(&union), whole)
}

/// Central annihilator of a vector, searched up to `deg g + 1`.
pub fn vector_annihilator<T: Scalar>(module: &WhittakerModule<T>, v: &ModuleVector<T>) -> Polynomial<T> {
    central_annihilator(module, v, module.n().unwrap_or(0) + 1)
}
