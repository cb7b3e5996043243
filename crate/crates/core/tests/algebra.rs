mod common;

use std::collections::HashMap;

use common::strategies::*;
use common::*;
use num_rational::Rational64;
use proptest::prelude::*;
use smithalg::factor::factor_over_rationals;
use smithalg::pbw::{Monomial, PbwElement, SmithAlgebra};
use smithalg::poly::{discrete_antiderivative, extended_gcd, Polynomial};
use smithalg::Error;

type El = PbwElement<Q>;

/// Products by rewriting words one adjacent swap at a time, independent of
/// the closed-form product.
mod naive {
    use super::*;

    const E: u8 = b'E';
    const F: u8 = b'F';
    const H: u8 = b'H';

    fn rank(x: u8) -> u8 {
        match x {
            F => 0,
            H => 1,
            _ => 2,
        }
    }

    pub fn normal_form(f: &P, words: HashMap<Vec<u8>, Q>) -> El {
        let mut todo: Vec<(Vec<u8>, Q)> = words.into_iter().collect();
        let mut done: HashMap<Vec<u8>, Q> = HashMap::new();
        while let Some((w, c)) = todo.pop() {
            let Some(pos) = (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1])) else {
                *done.entry(w).or_insert_with(|| q(0)) += c;
                continue;
            };
            let (x, y) = (w[pos], w[pos + 1]);
            let splice = |mid: &[u8]| {
                let mut out = w[..pos].to_vec();
                out.extend_from_slice(mid);
                out.extend_from_slice(&w[pos + 2..]);
                out
            };
            todo.push((splice(&[y, x]), c.clone()));
            match (x, y) {
                // EF = FE + f(H)
                (E, F) => {
                    for (k, fk) in f.coeffs().iter().enumerate() {
                        todo.push((splice(&vec![H; k]), c.clone() * fk.clone()));
                    }
                }
                // HF = FH - F
                (H, F) => todo.push((splice(&[F]), -c.clone())),
                // EH = HE - E
                (E, H) => todo.push((splice(&[E]), -c.clone())),
                _ => unreachable!(),
            }
        }
        El::from_terms(done.into_iter().map(|(w, c)| {
            let count = |g| w.iter().filter(|&&x| x == g).count() as u32;
            (Monomial::new(count(F), count(H), count(E)), c)
        }))
    }

    pub fn word(m: &Monomial) -> Vec<u8> {
        let mut w = vec![F; m.f as usize];
        w.extend(vec![H; m.h as usize]);
        w.extend(vec![E; m.e as usize]);
        w
    }

    pub fn mul(f: &P, x: &El, y: &El) -> El {
        let mut words = HashMap::new();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let mut w = word(mx);
                w.extend(word(my));
                *words.entry(w).or_insert_with(|| q(0)) += cx.clone() * cy.clone();
            }
        }
        normal_form(f, words)
    }
}

fn relation_elements(alg: &SmithAlgebra<Q>) -> Vec<El> {
    let (e, f, h) = (El::e(), El::f(), El::h());
    vec![
        &alg.commutator(&e, &f) - &El::from_h_poly(alg.f_poly()),
        &alg.commutator(&h, &e) - &e,
        &alg.commutator(&h, &f) + &f,
    ]
}

#[test]
fn defining_relations_hold_for_catalog() {
    for f in catalog_fs() {
        let alg = SmithAlgebra::new(f);
        assert!(relation_elements(&alg).iter().all(El::is_zero));
    }
}

#[test]
fn casimir_is_central_for_catalog() {
    for f in catalog_fs() {
        let alg = SmithAlgebra::new(f.clone());
        assert!(alg.is_central(alg.casimir()), "{f}");
        assert!(alg.is_central(&alg.casimir_poly(&poly(&[3, -1, 2]))));
    }
}

#[test]
fn wrong_antiderivative_breaks_centrality() {
    let f = poly(&[0, 2]);
    let alg = SmithAlgebra::with_antiderivative_unchecked(f, poly(&[0, 0, 1]));
    assert!(!alg.is_central(alg.casimir()));
}

#[test]
fn rational64_instantiation() {
    let f = Polynomial::<Rational64>::from_ints(&[0, 0, 1]);
    let alg = SmithAlgebra::new(f);
    assert!(alg.is_central(alg.casimir()));
    assert_eq!(alg.u_poly(), &Polynomial::<Rational64>::new(vec![
        Rational64::new(0, 1),
        Rational64::new(1, 3),
        Rational64::new(-1, 1),
        Rational64::new(2, 3),
    ]));
}

#[test]
fn nilpotency_cap_is_reported() {
    let alg = SmithAlgebra::new(poly(&[0, 2]));
    let x = El::monomial(Monomial::new(3, 0, 0), q(1));
    assert_eq!(alg.ad_e_nilpotency_index(&x, 2), Err(Error::NilpotencyCapExceeded { cap: 2 }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shift_composes(p in poly_upto(5), a in small_q(), b in small_q()) {
        prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(a + b)));
    }

    #[test]
    fn antiderivative_identity(f in poly_upto(6)) {
        let u = discrete_antiderivative(&f);
        prop_assert_eq!(&u.shift_int(1) - &u, f.scale(&q(2)));
        prop_assert!(u.eval(&q(0)) == q(0));
    }

    #[test]
    fn extended_gcd_bezout(a in poly_upto(4), b in poly_upto(4)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, s, t) = extended_gcd(&a, &b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn factorization_multiplies_back(g in monic_upto(5)) {
        let fp = factor_over_rationals(&g).unwrap();
        prop_assert_eq!(fp.expand(), g);
        for f in &fp.factors {
            prop_assert!(f.poly.is_monic());
            prop_assert!(!f.certified_irreducible || f.poly.degree() == Some(1));
        }
    }

    #[test]
    fn product_matches_word_rewriting(f in catalog_f(), x in element(3, 2), y in element(3, 2)) {
        let alg = SmithAlgebra::new(f.clone());
        prop_assert_eq!(alg.mul(&x, &y), naive::mul(&f, &x, &y));
    }

    #[test]
    fn associativity(f in catalog_f(), x in element(3, 2), y in element(3, 2), z in element(3, 2)) {
        let alg = SmithAlgebra::new(f);
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn relations_are_sound_in_context(f in catalog_f(), x in element(2, 2), y in element(2, 2)) {
        let alg = SmithAlgebra::new(f);
        for r in relation_elements(&alg) {
            prop_assert!(alg.mul(&alg.mul(&x, &r), &y).is_zero());
        }
    }

    #[test]
    fn filtration_bound(f in catalog_f(), x in element(3, 2), y in element(3, 2)) {
        let alg = SmithAlgebra::new(f);
        let xy = alg.mul(&x, &y);
        if let (Some(dx), Some(dy)) = (alg.kazhdan_degree(&x), alg.kazhdan_degree(&y)) {
            prop_assert!(alg.kazhdan_degree(&xy).is_none_or(|d| d <= dx + dy));
        }
    }

    #[test]
    fn ad_e_is_locally_nilpotent(f in catalog_f(), a in 0u32..4, b in 0u32..4, c in 0u32..3) {
        let alg = SmithAlgebra::new(f);
        let x = El::monomial(Monomial::new(a, b, c), q(1));
        let cap = (a as usize + 1) * (b as usize + alg.d() + 2);
        prop_assert!(alg.ad_e_nilpotency_index(&x, cap).is_ok());
    }

    #[test]
    fn polynomials_in_casimir_are_central(f in catalog_f(), p in poly_upto(3)) {
        let alg = SmithAlgebra::new(f);
        prop_assert!(alg.is_central(&alg.casimir_poly(&p)));
    }
}
