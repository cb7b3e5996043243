//! Exact computation in Smith's algebras `R(f)`: the associative algebras on
//! `E`, `F`, `H` with `EF - FE = f(H)`, `HE - EH = E`, `HF - FH = -F`.
//!
//! The crate is generic over the coefficient field (see [`Scalar`]); the
//! aliases at the root fix it to arbitrary-precision rationals.

pub mod center;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod modules;
pub mod pbw;
pub mod poly;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Poly = poly::Polynomial<Rational>;
pub type Element = pbw::PbwElement<Rational>;
pub type Algebra = pbw::SmithAlgebra<Rational>;
pub type Character = center::WhittakerCharacter<Rational>;
pub type Model = center::WhittakerModel<Rational>;
pub type Module = modules::WhittakerModule<Rational>;
pub type Vector = modules::ModuleVector<Rational>;
pub type Verma = modules::VermaModule<Rational>;
