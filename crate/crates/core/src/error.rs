use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the supported size")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("element {0} is not in the field")]
    BadElement(u64),
    #[error("field mismatch: F_{left_p}^{left_m} vs F_{right_p}^{right_m}")]
    FieldMismatch {
        left_p: u32,
        left_m: u32,
        right_p: u32,
        right_m: u32,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("sigma does not satisfy sigma^p = 1")]
    SigmaOrder,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("Tate window unstable at degree {degree}: {narrow} vs {wide}")]
    UnstableWindow {
        degree: i64,
        narrow: usize,
        wide: usize,
    },
    #[error("not a short exact sequence: {0}")]
    NotShortExact(String),
    #[error("sigma does not act trivially")]
    NontrivialAction,
    #[error("permutation is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("complex is not admissible; subdivide first")]
    NotAdmissible,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("subgroup is not sigma-stable")]
    NotSigmaStable,
    #[error("subgroup is not plain")]
    NotPlain,
    #[error("Hecke element is not sigma-invariant")]
    NotSigmaInvariant,
    #[error("Hecke elements belong to different algebras")]
    HeckeMismatch,
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid sigma data: {0}")]
    InvalidSigmaData(String),
    #[error("representation is not sigma-fixed")]
    NotSigmaFixed,
    #[error("representation is not absolutely irreducible (endomorphism space has dimension {0})")]
    NotAbsolutelyIrreducible(usize),
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("character does not vanish on N.A")]
    CharacterNotKillingTrace,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("function is not bi-invariant under the dual group")]
    NotInvariant,
    #[error("invalid parameter target: {0}")]
    InvalidTarget(String),
    #[error("homomorphism does not lie over Q")]
    NotOverQ,
    #[error("target carries no sigma action")]
    MissingSigma,
    #[error("admissible family failed the fusion self-test: {0}")]
    FusionCheck(String),
    #[error("subalgebra saturation exceeded degree cap {0}")]
    SaturationCap(usize),
    #[error("brute-force size {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("p must be odd, got {0}")]
    EvenPrime(u32),
    #[error("invalid torus data: {0}")]
    InvalidTorus(String),
    #[error("{0}")]
    Parse(String),
}
