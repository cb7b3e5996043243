//! Runs every property suite over a catalog and collects a report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use smithalg::center::FhElement;
use smithalg::linalg::{rank, same_span, SparseVector};
use smithalg::modules::{central_annihilator, isomorphism_test, CyclicModule, Generator, Isomorphism};
use smithalg::pbw::{Monomial, PbwElement};
use smithalg::poly::{discrete_antiderivative, Polynomial};
use smithalg::structure::{
    certify_irreducible, composition_series, crt_decompose, divisor_lattice, transporter_ideal,
    unique_maximal_submodule, Verdict,
};
use smithalg::{Algebra, Element, Module, Poly, Rational, Vector, Verma};

use crate::catalog::Scenario;
use crate::error::CliError;

pub const TAGS: &[&str] = &[
    "casimir-central",
    "antiderivative",
    "projection-homomorphism",
    "freeness",
    "annihilator-theorem",
    "whittaker-vectors",
    "relations-act",
    "h-basis",
    "closed-forms",
    "central-annihilator",
    "structure",
    "certify",
    "isomorphism",
    "verma",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TagReport {
    pub tag: String,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub scenarios: usize,
    pub passed: bool,
    pub tags: Vec<TagReport>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("verify: {} scenarios, seed {}\n", self.scenarios, self.seed);
        for t in &self.tags {
            let status = if t.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} ({}/{})\n", t.tag, t.checks - t.failures, t.checks));
            if let Some(c) = &t.counterexample {
                out.push_str(&format!("  counterexample: {c}\n"));
            }
        }
        out.push_str(if self.passed { "all properties hold\n" } else { "property failures\n" });
        out
    }
}

struct Check {
    tag: &'static str,
    failure: Option<String>,
}

struct Suite<'a> {
    scenario: &'a Scenario,
    checks: Vec<Check>,
}

impl Suite<'_> {
    fn record(&mut self, tag: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let failure = (!ok).then(|| format!("[{}] {}", self.scenario.label(), detail()));
        self.checks.push(Check { tag, failure });
    }

    fn record_result(&mut self, tag: &'static str, r: Result<bool, String>, detail: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(tag, ok, detail),
            Err(e) => self.record(tag, false, || format!("{}: error {e}", detail())),
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Polynomial::new((0..=deg).map(|_| q(rng.gen_range(-5..=5), 1)).collect())
}

pub fn random_element(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: u32) -> Element {
    let n = rng.gen_range(1..=max_terms);
    PbwElement::from_terms((0..n).map(|_| {
        let m = Monomial::new(rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        (m, q(rng.gen_range(-4..=4), 1))
    }))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    let mut v = SparseVector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        v.add_term((rng.gen_range(0..n as u32), rng.gen_range(0..=3)), q(rng.gen_range(-4..=4), 1));
    }
    v
}

fn h_poly_on_w(m: &Module, p: &Poly) -> Vector {
    m.apply_fh(&FhElement::new(PbwElement::from_h_poly(p)).expect("no E terms"))
}

fn casimir_suite(s: &mut Suite, alg: &Algebra, rng: &mut ChaCha8Rng) {
    for gen in [Generator::E, Generator::F, Generator::H] {
        let c = alg.commutator(alg.casimir(), &gen.element());
        s.record("casimir-central", c.is_zero(), || format!("[Omega, {gen}] = {c}"));
    }
    for _ in 0..4 {
        let p = random_poly(rng, 3);
        let ok = alg.is_central(&alg.casimir_poly(&p));
        s.record("casimir-central", ok, || format!("p(Omega) not central for p = {}", p.to_string_in("Omega")));
    }
    let u = alg.u_poly();
    let diff = &u.shift_int(1) - u;
    let ok = diff == alg.f_poly().scale(&q(2, 1)) && u.eval(&q(0, 1)) == q(0, 1);
    s.record("antiderivative", ok, || format!("u(H+1) - u(H) = {} for u = {}", diff.to_string_in("H"), u.to_string_in("H")));
    let f = random_poly(rng, 6);
    let r = discrete_antiderivative(&f);
    let ok = &r.shift_int(1) - &r == f.scale(&q(2, 1));
    s.record("antiderivative", ok, || format!("antiderivative of {} is wrong", f.to_string_in("H")));
}

fn projection_suite(s: &mut Suite, m: &Module) {
    let model = m.model();
    let alg = model.algebra();
    let mut powers = vec![PbwElement::one()];
    for _ in 0..8 {
        powers.push(alg.mul(powers.last().expect("nonempty"), alg.casimir()));
    }
    let eta_powers = model.omega_eta_powers(8);
    for total in 0..=8usize {
        let lhs = model.project(&powers[total]);
        for p in 0..=total {
            let rhs = eta_powers[p].mul(alg, &eta_powers[total - p]);
            s.record("projection-homomorphism", lhs == rhs, || format!("p={p} q={}", total - p));
        }
    }
    let d = alg.d();
    for k in 0..=3 * (d + 1) + 6 {
        let r = model.freeness_basis_matrix(k);
        s.record("freeness", r.is_full_rank(), || {
            format!("k={k}: {}x{} matrix of rank {}", r.rows.len(), r.cols.len(), r.rank)
        });
    }
}

fn module_suite(s: &mut Suite, m: &Module, rng: &mut ChaCha8Rng) {
    let alg = m.model().algebra().clone();
    let eta = m.eta_e().clone();
    let n = m.n().expect("catalog g is nonzero");
    let g = m.g().clone();
    let e_minus = &PbwElement::e() - &PbwElement::scalar(eta.clone());
    let g_omega = alg.casimir_poly(&g);
    for _ in 0..50 {
        let y = random_element(rng, 2, 2);
        let z = random_element(rng, 2, 2);
        let mut x = &alg.mul(&y, &g_omega) + &alg.mul(&z, &e_minus);
        if rng.gen_bool(0.5) {
            x = &x + &random_element(rng, 2, 2);
        }
        let by_action = m.act_element(&x, &m.w()).is_zero();
        let by_window = m.ideal_membership_in_window(&x, 5);
        let stable = m.ideal_membership_in_window(&x, 10) == by_window;
        s.record("annihilator-theorem", by_action == by_window && stable, || {
            format!("x = {x}: action says {by_action}, ideal membership says {by_window}")
        });
    }

    let found = m.whittaker_vectors(s.scenario.j);
    let expected = s.scenario.expected.whittaker_dim;
    s.record("whittaker-vectors", found.len() == expected, || {
        format!("J={}: dimension {} instead of {expected}", s.scenario.j, found.len())
    });
    let deg_u = alg.u_poly().degree().unwrap_or(0);
    if s.scenario.j >= n * (deg_u + 1) {
        let ok = same_span(&found, &m.omega_powers_on_w(n));
        s.record("whittaker-vectors", ok, || "span differs from span{Omega^k w}".into());
    }

    for _ in 0..10 {
        use Generator::*;
        let v = random_vector(rng, n);
        let word = |w: &[Generator]| w.iter().rev().fold(v.clone(), |acc, &g| m.act_generator(g, &acc));
        let f_v = m.act_element(&PbwElement::from_h_poly(alg.f_poly()), &v);
        let ok = word(&[E, F]).sub(&word(&[F, E])) == f_v
            && word(&[H, E]).sub(&word(&[E, H])) == m.act_generator(E, &v)
            && word(&[H, F]).sub(&word(&[F, H])) == m.act_generator(F, &v).scale(&q(-1, 1));
        s.record("relations-act", ok, || format!("relations fail on v = {}", crate::json::vector_to_text(&v)));
    }

    let ann = central_annihilator(m, &m.w(), n + 1);
    s.record("central-annihilator", ann == g, || format!("annihilator {}", ann.to_string_in("Omega")));

    if n == 1 {
        let a = -g.coeff(0);
        let hs: Vec<Vector> = (0..=20).map(|j| h_poly_on_w(m, &Polynomial::monomial(q(1, 1), j))).collect();
        let closed = hs.iter().all(|v| {
            [Generator::E, Generator::F, Generator::H]
                .iter()
                .all(|&gen| m.act_generator(gen, v).keys().all(|&(i, _)| i == 0))
        });
        s.record("h-basis", rank(&hs) == 21 && closed, || "H^j w not a closed independent family".into());

        let u1 = alg.u_poly().shift_int(1);
        let fw = (&Polynomial::constant(a.clone()) - &u1).scale(&(q(1, 1) / (q(2, 1) * eta.clone())));
        for (j, hv) in hs.iter().enumerate().take(11) {
            let hj = Polynomial::monomial(q(1, 1), j);
            let ev = m.act_generator(Generator::E, hv);
            let fv = m.act_generator(Generator::F, hv);
            let ok = ev == h_poly_on_w(m, &hj.shift_int(-1).scale(&eta)) && fv == h_poly_on_w(m, &(&hj.shift_int(1) * &fw));
            s.record("closed-forms", ok, || format!("j={j}"));
        }

        let iso = s.scenario.module_for(&g).and_then(|twin| Ok(isomorphism_test(m, &twin)?));
        s.record("isomorphism", matches!(iso, Ok(Isomorphism::Isomorphic)), || format!("rebuilt module: {iso:?}"));
        let other = s
            .scenario
            .module_for(&Polynomial::linear(a + q(1, 1)))
            .and_then(|o| Ok(isomorphism_test(m, &o)?));
        s.record("isomorphism", matches!(other, Ok(Isomorphism::NotIsomorphic)), || format!("shifted module: {other:?}"));
    }
}

fn structure_suite(s: &mut Suite, m: &Module) {
    let scenario = s.scenario;
    let lattice = divisor_lattice(m);
    let expected_size: u32 = scenario.factors.iter().map(|(_, k)| k + 1).product();
    match lattice {
        Ok(lattice) => {
            s.record("structure", lattice.len() == expected_size as usize, || {
                format!("lattice has {} divisors, expected {expected_size}", lattice.len())
            });
            for (i, entry) in lattice.entries.iter().enumerate() {
                let r = lattice.handle(m, i).and_then(|h| transporter_ideal(&h)).map(|t| t == entry.divisor);
                s.record_result("structure", r.map_err(|e| e.to_string()), || {
                    format!("transporter of R d(Omega) w is not d = {}", entry.divisor.to_string_in("Omega"))
                });
            }
        }
        Err(e) => s.record("structure", false, || format!("lattice: {e}")),
    }

    let g = m.g();
    match crt_decompose(m) {
        Ok(comps) => {
            let sum = comps.iter().fold(Polynomial::zero(), |acc, c| &acc + &c.idempotent);
            let mut ok = sum.rem(g).ok() == Some(Polynomial::one());
            for (i, a) in comps.iter().enumerate() {
                for (j, b) in comps.iter().enumerate() {
                    let prod = (&a.idempotent * &b.idempotent).rem(g).ok();
                    let want = if i == j { a.idempotent.clone() } else { Polynomial::zero() };
                    ok &= prod == Some(want);
                }
            }
            s.record("structure", ok && comps.len() == scenario.factors.len(), || "CRT idempotents".into());
        }
        Err(e) => {
            s.record("structure", scenario.factors.len() == 1, || format!("decomposition: {e}"));
        }
    }

    match composition_series(m) {
        Ok(series) => {
            let ok = series.len() == g.degree().unwrap_or(0)
                && series.steps.iter().all(|st| st.quotient_whittaker_dimension == 1 && st.quotient_annihilator == st.factor);
            s.record("structure", ok, || format!("series of length {}", series.len()));
        }
        Err(e) => s.record("structure", false, || format!("series: {e}")),
    }

    let maximal = unique_maximal_submodule(m);
    let ok = match &maximal {
        Ok(mx) => scenario.expected.primary && mx.verified,
        Err(smithalg::Error::NoUniqueMaximal) => !scenario.expected.primary,
        Err(_) => false,
    };
    s.record("structure", ok, || format!("maximal submodule: {:?}", maximal.as_ref().map(|mx| mx.handle.divisor().clone())));

    let cert = certify_irreducible(m, scenario.j);
    let ok = matches!(&cert, Ok(c) if (c.verdict == Verdict::Irreducible) == scenario.expected.irreducible
        && c.whittaker_dimension == scenario.expected.whittaker_dim);
    s.record("certify", ok, || format!("{cert:?}"));
}

fn verma_suite(s: &mut Suite, alg: &Algebra, rng: &mut ChaCha8Rng) {
    for _ in 0..5 {
        let lambda = random_rational(rng);
        let verma = Verma::new(alg.clone(), lambda.clone());
        let expected = alg.u_poly().eval(&(lambda.clone() + q(1, 1)));
        for k in 0..=10u32 {
            let v = SparseVector::basis(k);
            let got = verma.act(alg.casimir(), &v);
            s.record("verma", got == v.scale(&expected), || format!("lambda={lambda} k={k}"));
        }
    }
}

fn run_scenario(index: usize, scenario: &Scenario, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index as u64);
    let mut suite = Suite { scenario, checks: Vec::new() };
    let alg = scenario.algebra();
    casimir_suite(&mut suite, &alg, &mut rng);
    verma_suite(&mut suite, &alg, &mut rng);
    match scenario.module() {
        Ok(m) => {
            projection_suite(&mut suite, &m);
            module_suite(&mut suite, &m, &mut rng);
            structure_suite(&mut suite, &m);
        }
        Err(e) => suite.record("relations-act", false, || format!("module construction failed: {e}")),
    }
    suite.checks
}

pub fn verify_all(scenarios: &[Scenario], seed: u64) -> VerifyReport {
    let per_scenario: Vec<Vec<Check>> = scenarios
        .par_iter()
        .enumerate()
        .map(|(i, sc)| run_scenario(i, sc, seed))
        .collect();
    let tags: Vec<TagReport> = TAGS
        .iter()
        .map(|&tag| {
            let checks: Vec<&Check> = per_scenario.iter().flatten().filter(|c| c.tag == tag).collect();
            let failures: Vec<&String> = checks.iter().filter_map(|c| c.failure.as_ref()).collect();
            TagReport {
                tag: tag.to_string(),
                checks: checks.len(),
                failures: failures.len(),
                passed: failures.is_empty(),
                counterexample: failures.first().map(|s| s.to_string()),
            }
        })
        .collect();
    VerifyReport { seed, scenarios: scenarios.len(), passed: tags.iter().all(|t| t.passed), tags }
}

pub fn verify_records(records: &[crate::catalog::ScenarioRecord], seed: u64) -> Result<VerifyReport, CliError> {
    Ok(verify_all(&crate::catalog::validate_all(records)?, seed))
}
