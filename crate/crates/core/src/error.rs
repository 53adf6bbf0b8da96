use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("non-integral entry: {0}")]
    NonIntegral(String),

    #[error("not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit fails on basis element {0}")]
    UnitFails(usize),
    #[error("non-integral structure constant at ({i}, {j}, {k})")]
    NonIntegralStructure { i: usize, j: usize, k: usize },
    #[error("not invertible in K⊗A")]
    NotInvertible,
    #[error("not idempotent")]
    NotIdempotent,
    #[error("not a sublattice")]
    NotSublattice,

    #[error("form not symmetrising")]
    FormNotSymmetrising,
    #[error("not a central unit")]
    NotCentralUnit,
    #[error("regular Gram singular")]
    RegularGramSingular,
    #[error("characters do not span the form")]
    CharactersDoNotSpan,
    #[error("zero Schur coefficient for character {0}")]
    ZeroSchurCoefficient(usize),
    #[error("system inconsistent: {0}")]
    SystemInconsistent(String),

    #[error("module axiom fails for basis pair ({i}, {j})")]
    ModuleAxiom { i: usize, j: usize },
    #[error("unit acts nontrivially")]
    UnitActsNontrivially,
    #[error("free part nonzero: stable Hom is not torsion")]
    FreePartNonzero,
    #[error("pairing degenerate; witness class {0}")]
    PairingDegenerate(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("U projective — property undefined")]
    Projective,
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("negative height — inconsistent data")]
    NegativeHeight,
    #[error("height mismatch: {0}")]
    HeightMismatch(String),
    #[error("violation: {0}")]
    Violation(String),
    #[error("invalid character data: {0}")]
    InvalidCharacters(String),
    #[error("invalid decomposition matrix: {0}")]
    InvalidDecomposition(String),

    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("orthogonality fails: {0}")]
    OrthogonalityFails(String),
    #[error("q not a unit")]
    QNotUnit,
    #[error("unresolved reference: {0}")]
    Resolution(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Resource refusals are distinguished from input errors by the CLI.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::ResourceBound(_))
    }
}
