//! Command-line definitions and dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use smithalg::factor::FactoredPoly;
use smithalg::modules::{central_annihilator, CyclicModule, Generator};
use smithalg::structure::{
    certify_irreducible, composition_series, crt_decompose, divisor_lattice, transporter_ideal,
    unique_maximal_submodule, Verdict,
};
use smithalg::{Algebra, Character, Model, Module, Poly, Rational, Verma};

use crate::catalog::{default_catalog, parse_catalog};
use crate::error::CliError;
use crate::json::{rational_from_str, vector_to_text, PbwJson, PolyJson, VectorJson};
use crate::parse::{normalize, parse_poly};
use crate::verify::verify_records;

/// Overrides the default Whittaker-vector truncation `J`.
pub const TRUNCATION_ENV: &str = "SMITHALG_TRUNCATION";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "smithalg", version, about = "Exact computation in the algebras R(f) and their Whittaker modules")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// f as a polynomial in H, e.g. "2*H" or "H^3 - 1".
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    /// eta(E), a nonzero rational.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// g as a monic polynomial in Omega; "0" gives the universal module.
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form F^a H^b E^c of an expression.
    NormalForm {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// The antiderivative u, the Casimir Omega and its centrality.
    Casimir {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// The projection x -> x^eta.
    Project {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Freeness of R(F,H) over the projected center at filtration level k.
    Freeness {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        k: usize,
    },
    /// Whittaker modules R / (R g(Omega) + R R_eta(E)).
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Verma modules M_lambda.
    Verma {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
    /// Submodule structure.
    #[command(subcommand)]
    Structure(StructureCommand),
    /// Runs every property suite over a catalog.
    Verify {
        /// "default" or a path to a JSON catalog.
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleCommand {
    Build(ModuleArgs),
    Act {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        gen: Generator,
        /// `{"terms":[{"F":i,"H":j,"coeff":"p/q"}]}`
        #[arg(long)]
        vec: String,
    },
    WhittakerVectors {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "J", alias = "j")]
        j: Option<usize>,
    },
    Annihilator(ModuleArgs),
}

#[derive(Debug, Subcommand)]
pub enum StructureCommand {
    Lattice(ModuleArgs),
    Series(ModuleArgs),
    Decompose(ModuleArgs),
    Maximal(ModuleArgs),
    Certify {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "J", alias = "j")]
        j: Option<usize>,
    },
}

/// Output of a command in both formats, plus whether a property failed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub property_failure: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, property_failure: false }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n",
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
        }
    }
}

fn algebra(a: &AlgebraArgs) -> Result<Algebra, CliError> {
    Ok(Algebra::new(parse_poly(&a.f, "H")?))
}

fn model(m: &ModelArgs) -> Result<Model, CliError> {
    let eta = rational_from_str(&m.eta)?;
    Ok(Model::new(algebra(&m.alg)?, Character::new(eta)?))
}

fn module(m: &ModuleArgs) -> Result<Module, CliError> {
    let eta = rational_from_str(&m.model.eta)?;
    let g = parse_poly(&m.g, "Omega")?;
    Ok(Module::new(algebra(&m.model.alg)?, Character::new(eta)?, g)?)
}

fn truncation(explicit: Option<usize>, m: &Module) -> Result<usize, CliError> {
    if let Some(j) = explicit {
        return Ok(j);
    }
    match std::env::var(TRUNCATION_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("{TRUNCATION_ENV} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(m.default_truncation()),
    }
}

fn poly_json(p: &Poly, var: &str) -> Value {
    json!({ "coeffs": PolyJson::from_poly(p).coeffs, "text": p.to_string_in(var) })
}

fn factors_json(fp: Option<&FactoredPoly<Rational>>) -> Value {
    match fp {
        None => Value::Null,
        Some(fp) => Value::Array(
            fp.factors
                .iter()
                .map(|f| {
                    json!({
                        "poly": poly_json(&f.poly, "Omega"),
                        "multiplicity": f.multiplicity,
                        "certified_irreducible": f.certified_irreducible,
                    })
                })
                .collect(),
        ),
    }
}

fn vector_json(v: &smithalg::Vector) -> Value {
    json!({ "terms": VectorJson::from_vector(v).terms, "text": vector_to_text(v) })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Irreducible => "irreducible",
        Verdict::Reducible => "reducible",
        Verdict::IrreducibleOverRationals => "irreducible-over-rationals",
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::NormalForm { alg, expr } => {
            let x = normalize(expr, &algebra(alg)?)?;
            Ok(Report::ok(json!({ "normal_form": PbwJson::from_element(&x), "text": x.to_string() }), x.to_string()))
        }
        Command::Casimir { alg, eta } => {
            let a = algebra(alg)?;
            let central = a.is_central(a.casimir());
            let mut out = json!({
                "f": poly_json(a.f_poly(), "H"),
                "u": poly_json(a.u_poly(), "H"),
                "omega": { "terms": PbwJson::from_element(a.casimir()).terms, "text": a.casimir().to_string() },
                "is_central": central,
            });
            let mut text = format!(
                "u = {}\nOmega = {}\ncentral: {central}\n",
                a.u_poly().to_string_in("H"),
                a.casimir()
            );
            if let Some(eta) = eta {
                let m = Model::new(a.clone(), Character::new(rational_from_str(eta)?)?);
                let oe = m.omega_eta().as_element();
                out["omega_eta"] = json!({ "terms": PbwJson::from_element(oe).terms, "text": oe.to_string() });
                text.push_str(&format!("Omega^eta = {oe}\n"));
            }
            Ok(Report::ok(out, text))
        }
        Command::Project { model: margs, expr } => {
            let m = model(margs)?;
            let x = normalize(expr, m.algebra())?;
            let p = m.project(&x);
            let oe = m.omega_eta().as_element();
            Ok(Report::ok(
                json!({
                    "normal_form": PbwJson::from_element(&x),
                    "projection": { "terms": PbwJson::from_element(p.as_element()).terms, "text": p.to_string() },
                    "omega_eta": { "terms": PbwJson::from_element(oe).terms, "text": oe.to_string() },
                }),
                format!("x = {x}\nx^eta = {p}\nOmega^eta = {oe}\n"),
            ))
        }
        Command::Freeness { model: margs, k } => {
            let m = model(margs)?;
            let r = m.freeness_basis_matrix(*k);
            Ok(Report::ok(
                json!({
                    "k": k,
                    "dim": r.rows.len(),
                    "columns": r.cols.len(),
                    "rank": r.rank,
                    "square": r.is_square(),
                    "full_rank": r.is_full_rank(),
                }),
                format!(
                    "level {k}: {} monomials F^i H^j, {} products H^p (Omega^eta)^q, rank {}, {}\n",
                    r.rows.len(),
                    r.cols.len(),
                    r.rank,
                    if r.is_full_rank() { "free" } else { "NOT free" }
                ),
            ))
        }
        Command::Module(cmd) => run_module(cmd),
        Command::Verma { alg, lambda, depth } => {
            let a = algebra(alg)?;
            let lambda = rational_from_str(lambda)?;
            let verma = Verma::new(a.clone(), lambda.clone());
            let scalar = verma.casimir_scalar();
            let v = verma.cyclic_vector();
            let ann = central_annihilator(&verma, &v, 2);
            let mut rows = Vec::new();
            let mut text = format!("lambda = {lambda}\nOmega acts by u(lambda+1) = {scalar}\n");
            for k in 0..=*depth {
                let fk = smithalg::linalg::SparseVector::basis(k);
                let e = verma.act_generator(Generator::E, &fk);
                let e_coeff = if k == 0 { Rational::from_integer(0.into()) } else { e.get(&(k - 1)) };
                let h = lambda.clone() - Rational::from_integer(k.into());
                rows.push(json!({ "k": k, "E": e_coeff.to_string(), "H": h.to_string() }));
                text.push_str(&format!("k={k}: E F^k v = {e_coeff} F^(k-1) v, H F^k v = {h} F^k v\n"));
            }
            Ok(Report::ok(
                json!({
                    "lambda": lambda.to_string(),
                    "casimir_scalar": scalar.to_string(),
                    "annihilator": poly_json(&ann, "Omega"),
                    "actions": rows,
                }),
                text,
            ))
        }
        Command::Structure(cmd) => run_structure(cmd),
        Command::Verify { catalog, seed } => {
            let records = if catalog == "default" {
                default_catalog()
            } else {
                let text = std::fs::read_to_string(catalog)
                    .map_err(|e| CliError::Validation(format!("cannot read catalog {catalog}: {e}")))?;
                parse_catalog(&text)?
            };
            let report = verify_records(&records, *seed)?;
            Ok(Report {
                json: serde_json::to_value(&report).expect("report serializes"),
                text: report.to_text(),
                property_failure: !report.passed,
            })
        }
    }
}

fn run_module(cmd: &ModuleCommand) -> Result<Report, CliError> {
    match cmd {
        ModuleCommand::Build(args) => {
            let m = module(args)?;
            let basis = match m.n() {
                None => "F^i H^j w, i, j >= 0".to_string(),
                Some(0) => "zero module".to_string(),
                Some(n) => format!("F^i H^j w, 0 <= i <= {}, j >= 0", n - 1),
            };
            Ok(Report::ok(
                json!({
                    "g": poly_json(m.g(), "Omega"),
                    "n": m.n(),
                    "universal": m.is_universal(),
                    "factors": factors_json(m.factored()),
                    "reduction_rule": { "terms": PbwJson::from_element(m.reduction_rule().as_element()).terms,
                                        "text": m.reduction_rule().to_string() },
                    "basis": basis,
                }),
                format!(
                    "g = {}\nbasis: {basis}\nrelation: {} = 0 on w\n",
                    m.g().to_string_in("Omega"),
                    m.reduction_rule()
                ),
            ))
        }
        ModuleCommand::Act { module: args, gen, vec } => {
            let m = module(args)?;
            let parsed: VectorJson =
                serde_json::from_str(vec).map_err(|e| CliError::Validation(format!("bad vector: {e}")))?;
            let v = parsed.to_vector()?;
            m.validate(&v)?;
            let out = m.act_generator(*gen, &v);
            Ok(Report::ok(
                json!({ "generator": gen.to_string(), "input": vector_json(&v), "result": vector_json(&out) }),
                format!("{gen} . ({}) = {}\n", vector_to_text(&v), vector_to_text(&out)),
            ))
        }
        ModuleCommand::WhittakerVectors { module: args, j } => {
            let m = module(args)?;
            let j = truncation(*j, &m)?;
            let found = m.whittaker_vectors(j);
            let mut text = format!("J = {j}: {} Whittaker vector(s)\n", found.len());
            for v in &found {
                text.push_str(&format!("  {}\n", vector_to_text(v)));
            }
            Ok(Report::ok(
                json!({ "J": j, "dimension": found.len(), "vectors": found.iter().map(vector_json).collect::<Vec<_>>() }),
                text,
            ))
        }
        ModuleCommand::Annihilator(args) => {
            let m = module(args)?;
            let bound = m.n().unwrap_or(m.default_truncation()) + 1;
            let ann = central_annihilator(&m, &m.w(), bound);
            Ok(Report::ok(
                json!({ "annihilator": poly_json(&ann, "Omega"), "search_bound": bound }),
                format!("Z_V = ({})\n", ann.to_string_in("Omega")),
            ))
        }
    }
}

fn run_structure(cmd: &StructureCommand) -> Result<Report, CliError> {
    match cmd {
        StructureCommand::Lattice(args) => {
            let m = module(args)?;
            let lattice = divisor_lattice(&m)?;
            let mut rows = Vec::new();
            let mut text = format!("{} submodules R d(Omega) w\n", lattice.len());
            for i in 0..lattice.len() {
                let h = lattice.handle(&m, i)?;
                let t = transporter_ideal(&h)?;
                let d = &lattice.entries[i].divisor;
                rows.push(json!({
                    "divisor": poly_json(d, "Omega"),
                    "exponents": lattice.entries[i].exponents,
                    "transporter": poly_json(&t, "Omega"),
                    "generator": vector_json(h.generator()),
                }));
                text.push_str(&format!(
                    "  d = {:<24} transporter = {}\n",
                    d.to_string_in("Omega"),
                    t.to_string_in("Omega")
                ));
            }
            Ok(Report::ok(json!({ "factors": factors_json(m.factored()), "divisors": rows }), text))
        }
        StructureCommand::Series(args) => {
            let m = module(args)?;
            let series = composition_series(&m)?;
            let mut rows = Vec::new();
            let mut text = format!("composition series of length {}\n", series.len());
            for s in &series.steps {
                rows.push(json!({
                    "divisor": poly_json(&s.divisor, "Omega"),
                    "factor": poly_json(&s.factor, "Omega"),
                    "quotient_annihilator": poly_json(&s.quotient_annihilator, "Omega"),
                    "quotient_whittaker_dimension": s.quotient_whittaker_dimension,
                    "certified": s.certified,
                }));
                text.push_str(&format!(
                    "  R ({})(Omega) w / R ({})(Omega) w: annihilator {}, {} Whittaker vector(s)\n",
                    s.divisor.to_string_in("Omega"),
                    (&s.divisor * &s.factor).to_string_in("Omega"),
                    s.quotient_annihilator.to_string_in("Omega"),
                    s.quotient_whittaker_dimension
                ));
            }
            Ok(Report::ok(json!({ "series": rows, "verified": series.is_verified() }), text))
        }
        StructureCommand::Decompose(args) => {
            let m = module(args)?;
            let comps = crt_decompose(&m)?;
            let mut rows = Vec::new();
            let mut text = format!("{} summands\n", comps.len());
            for c in &comps {
                rows.push(json!({
                    "primary": poly_json(&c.primary, "Omega"),
                    "cofactor": poly_json(&c.cofactor, "Omega"),
                    "idempotent": poly_json(&c.idempotent, "Omega"),
                    "generator": vector_json(&c.generator),
                }));
                text.push_str(&format!(
                    "  annihilator {}: e = {}\n",
                    c.primary.to_string_in("Omega"),
                    c.idempotent.to_string_in("Omega")
                ));
            }
            Ok(Report::ok(json!({ "idempotents": rows }), text))
        }
        StructureCommand::Maximal(args) => {
            let m = module(args)?;
            let mx = unique_maximal_submodule(&m)?;
            Ok(Report::ok(
                json!({
                    "maximal": {
                        "divisor": poly_json(mx.handle.divisor(), "Omega"),
                        "transporter": poly_json(&mx.transporter, "Omega"),
                        "quotient_whittaker_dimension": mx.quotient_whittaker_dimension,
                        "verified": mx.verified,
                    }
                }),
                format!(
                    "unique maximal submodule R ({})(Omega) w{}\n",
                    mx.handle.divisor().to_string_in("Omega"),
                    if mx.verified { "" } else { " (unverified)" }
                ),
            ))
        }
        StructureCommand::Certify { module: args, j } => {
            let m = module(args)?;
            let j = truncation(*j, &m)?;
            let cert = certify_irreducible(&m, j)?;
            let degree = cert.annihilator_degree.map_or("infinite".to_string(), |d| d.to_string());
            Ok(Report::ok(
                json!({
                    "verdict": verdict_name(cert.verdict),
                    "evidence": {
                        "annihilator_degree": cert.annihilator_degree,
                        "whittaker_dimension": cert.whittaker_dimension,
                        "J": j,
                    },
                }),
                format!(
                    "{}: deg g = {degree}, {} Whittaker vector(s) at J = {j}\n",
                    verdict_name(cert.verdict),
                    cert.whittaker_dimension
                ),
            ))
        }
    }
}
