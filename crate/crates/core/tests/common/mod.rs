#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use smithalg::center::{WhittakerCharacter, WhittakerModel};
use smithalg::modules::WhittakerModule;
use smithalg::pbw::SmithAlgebra;
use smithalg::poly::Polynomial;

pub type Q = BigRational;
pub type P = Polynomial<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn poly(coeffs: &[i64]) -> P {
    Polynomial::from_ints(coeffs)
}

/// `prod (X - r)` over the given roots.
pub fn from_roots(roots: &[Q]) -> P {
    roots.iter().fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear(r.clone()))
}

/// `f` in {0, 1, 2H, H^2, H^3 - 1}.
pub fn catalog_fs() -> Vec<P> {
    vec![poly(&[]), poly(&[1]), poly(&[0, 2]), poly(&[0, 0, 1]), poly(&[-1, 0, 0, 1])]
}

pub fn catalog_etas() -> Vec<Q> {
    vec![q(1), q(2), qq(-3, 2)]
}

pub fn catalog_scalars() -> Vec<Q> {
    vec![q(0), q(1), q(-1), q(2), qq(5, 2)]
}

pub fn model(f: &P, eta: &Q) -> WhittakerModel<Q> {
    WhittakerModel::new(SmithAlgebra::new(f.clone()), WhittakerCharacter::new(eta.clone()).unwrap())
}

pub fn module(f: &P, eta: &Q, g: &P) -> WhittakerModule<Q> {
    WhittakerModule::new(SmithAlgebra::new(f.clone()), WhittakerCharacter::new(eta.clone()).unwrap(), g.clone())
        .unwrap()
}

pub mod strategies {
    use super::*;
    use proptest::prelude::*;
    use smithalg::pbw::{Monomial, PbwElement};

    pub fn small_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| qq(n, d))
    }

    pub fn poly_upto(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec(-5i64..=5, 0..=max_deg + 1).prop_map(|c| poly(&c))
    }

    pub fn monic_upto(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec(-5i64..=5, 0..=max_deg).prop_map(|mut c| {
            c.push(1);
            poly(&c)
        })
    }

    /// One of the five catalog `f`.
    pub fn catalog_f() -> impl Strategy<Value = P> {
        (0usize..5).prop_map(|i| catalog_fs()[i].clone())
    }

    pub fn element(max_terms: usize, max_exp: u32) -> impl Strategy<Value = PbwElement<Q>> {
        prop::collection::vec(((0..=max_exp, 0..=max_exp, 0..=max_exp), -4i64..=4), 0..=max_terms).prop_map(
            |terms| PbwElement::from_terms(terms.into_iter().map(|((a, b, c), k)| (Monomial::new(a, b, c), q(k)))),
        )
    }

    /// Elements of `R(F,H)`.
    pub fn fh_element(max_terms: usize, max_exp: u32) -> impl Strategy<Value = PbwElement<Q>> {
        prop::collection::vec(((0..=max_exp, 0..=max_exp), -4i64..=4), 0..=max_terms).prop_map(|terms| {
            PbwElement::from_terms(terms.into_iter().map(|((a, b), k)| (Monomial::new(a, b, 0), q(k))))
        })
    }
}
