use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("cannot factor the zero polynomial")]
    FactorZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("character is singular: eta(E) must be nonzero")]
    SingularCharacter,
    #[error("annihilator generator must be monic or zero, got leading coefficient {0}")]
    NotMonic(String),
    #[error("reduced action is only defined for polynomials in E, got a term F^{a} H^{b} E^{c}")]
    NotInEAlgebra { a: u32, b: u32, c: u32 },
    #[error("expected an element of R(F,H), found a term with E^{0}")]
    NotInFHAlgebra(u32),
    #[error("(ad E)^N did not vanish for N <= {cap}")]
    NilpotencyCapExceeded { cap: usize },
    #[error("vector has a basis term F^{i} H^{j} outside the module basis (F-degree bound {bound})")]
    NotInModule { i: u32, j: u32, bound: usize },
    #[error("the universal module has an infinite submodule lattice")]
    InfiniteLattice,
    #[error("module is already indecomposable: its annihilator is primary")]
    AlreadyIndecomposable,
    #[error("annihilator is not primary, so there is no unique maximal submodule")]
    NoUniqueMaximal,
    #[error("{0} is not a monic divisor of the annihilator")]
    NotADivisor(String),
    #[error("modules are built over different algebras or characters")]
    MismatchedModules,
    #[error("membership answer changed when the search window grew; no certificate")]
    UnstableMembership,
    #[error("irreducibility criteria disagree: annihilator degree {degree}, Whittaker dimension {dimension}")]
    InconsistentCertification { degree: usize, dimension: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
