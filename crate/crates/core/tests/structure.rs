mod common;

use common::*;
use smithalg::structure::*;
use smithalg::Error;

fn sample() -> smithalg::modules::WhittakerModule<Q> {
    // (Omega - 1)^2 (Omega - 2)
    module(&poly(&[0, 2]), &q(1), &from_roots(&[q(1), q(1), q(2)]))
}

#[test]
fn lattice_has_six_divisors_in_bijection_with_submodules() {
    let m = sample();
    let lattice = divisor_lattice(&m).unwrap();
    assert_eq!(lattice.len(), 6);
    for i in 0..lattice.len() {
        let handle = lattice.handle(&m, i).unwrap();
        assert_eq!(transporter_ideal(&handle).unwrap(), lattice.entries[i].divisor);
    }
}

#[test]
fn inclusion_reverses_divisibility() {
    let m = sample();
    let lattice = divisor_lattice(&m).unwrap();
    let handles: Vec<_> = (0..lattice.len()).map(|i| lattice.handle(&m, i).unwrap()).collect();
    for i in 0..handles.len() {
        for j in 0..handles.len() {
            // d_i | d_j  iff  R d_j w ⊆ R d_i w
            assert_eq!(lattice.divides(i, j), handles[j].is_contained_in(&handles[i]).unwrap(), "{i} {j}");
        }
    }
}

#[test]
fn crt_idempotents() {
    let m = sample();
    let comps = crt_decompose(&m).unwrap();
    assert_eq!(comps.len(), 2);
    let g = m.g();
    let sum = comps.iter().fold(poly(&[]), |acc, c| &acc + &c.idempotent);
    assert_eq!(sum.rem(g).unwrap(), poly(&[1]));
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            let prod = (&comps[i].idempotent * &comps[j].idempotent).rem(g).unwrap();
            let expected = if i == j { comps[i].idempotent.clone() } else { poly(&[]) };
            assert_eq!(prod, expected);
        }
    }
    let (sum, union, whole) = crt_truncated_ranks(&m, &comps, 6);
    assert_eq!(sum, union);
    assert_eq!(union, whole);
}

#[test]
fn composition_series_of_length_three() {
    let m = sample();
    let series = composition_series(&m).unwrap();
    assert_eq!(series.len(), 3);
    assert!(series.steps.iter().all(|s| s.quotient_whittaker_dimension == 1));
    assert!(series.is_verified());
    for s in &series.steps {
        assert_eq!(s.quotient_annihilator, s.factor);
    }
    assert_eq!(&series.bottom, m.g());
}

#[test]
fn unique_maximal_only_for_primary() {
    assert!(matches!(unique_maximal_submodule(&sample()), Err(Error::NoUniqueMaximal)));
    let primary = module(&poly(&[0, 2]), &q(1), &from_roots(&[q(1), q(1)]));
    let max = unique_maximal_submodule(&primary).unwrap();
    assert!(max.verified);
    assert_eq!(max.handle.divisor(), &poly(&[-1, 1]));
}

#[test]
fn certification() {
    let lin = module(&poly(&[0, 0, 1]), &q(2), &poly(&[-3, 1]));
    assert_eq!(certify_irreducible(&lin, 12).unwrap().verdict, Verdict::Irreducible);
    assert_eq!(certify_irreducible(&sample(), 12).unwrap().verdict, Verdict::Reducible);
    let irr = module(&poly(&[0, 2]), &q(1), &poly(&[1, 0, 1]));
    assert_eq!(certify_irreducible(&irr, 12).unwrap().verdict, Verdict::IrreducibleOverRationals);
}

#[test]
fn universal_module_has_no_finite_lattice() {
    let m = module(&poly(&[0, 2]), &q(1), &poly(&[]));
    assert!(matches!(divisor_lattice(&m), Err(Error::InfiniteLattice)));
    assert!(matches!(composition_series(&m), Err(Error::InfiniteLattice)));
    assert!(matches!(crt_decompose(&m), Err(Error::AlreadyIndecomposable)));
}

mod properties {
    use super::*;
    use common::strategies::catalog_f;
    use proptest::prelude::*;

    fn split_g() -> impl Strategy<Value = P> {
        prop::collection::vec(-2i64..=2, 1..=3).prop_map(|roots| from_roots(&roots.into_iter().map(q).collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn lattice_bijection(f in catalog_f(), g in split_g()) {
            let m = module(&f, &q(1), &g);
            let lattice = divisor_lattice(&m).unwrap();
            for (i, entry) in lattice.entries.iter().enumerate() {
                let h = lattice.handle(&m, i).unwrap();
                prop_assert_eq!(&transporter_ideal(&h).unwrap(), &entry.divisor);
            }
        }

        #[test]
        fn series_quotients(f in catalog_f(), g in split_g()) {
            let m = module(&f, &q(2), &g);
            let series = composition_series(&m).unwrap();
            prop_assert_eq!(series.len(), g.degree().unwrap());
            for s in &series.steps {
                prop_assert_eq!(s.quotient_whittaker_dimension, 1);
                prop_assert_eq!(&s.quotient_annihilator, &s.factor);
            }
        }

        #[test]
        fn crt_is_a_direct_sum(f in catalog_f(), g in split_g()) {
            let m = module(&f, &q(1), &g);
            match crt_decompose(&m) {
                Ok(comps) => {
                    let (sum, union, whole) = crt_truncated_ranks(&m, &comps, 4);
                    prop_assert_eq!(sum, union);
                    prop_assert_eq!(union, whole);
                    for c in &comps {
                        prop_assert_eq!(&vector_annihilator(&m, &c.generator), &c.primary);
                    }
                }
                Err(e) => prop_assert_eq!(e, Error::AlreadyIndecomposable),
            }
        }

        #[test]
        fn primary_layers(f in catalog_f(), a in -2i64..=2, n in 1u32..=3) {
            // V_i = R p^i w has annihilator p^(n-i)
            let p = poly(&[-a, 1]);
            let m = module(&f, &q(1), &p.pow(n));
            for i in 0..=n {
                let h = SubmoduleHandle::new(&m, p.pow(i)).unwrap();
                prop_assert_eq!(vector_annihilator(&m, h.generator()), p.pow(n - i));
            }
        }
    }
}
