use thiserror::Error;

/// Failure to prove that a collection of subgroups partitions the group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PartitionWitness {
    /// An element lying in none of the subgroups.
    Uncovered { element: usize },
    /// A non-identity element shared by subgroups `first` and `second`.
    Overlap {
        first: usize,
        second: usize,
        element: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // group construction and subgroup machinery
    #[error("generator list is empty")]
    EmptyGeneratorList,
    #[error("generators act on different numbers of points ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image list is not a permutation of 0..{degree}")]
    NotAPermutation { degree: usize },
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element index {index} is out of range for a group of order {order}")]
    InvalidElementIndex { index: usize, order: usize },
    #[error("the given element set is not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("invalid preset parameter: {0}")]
    InvalidPreset(String),

    // cyclotomic arithmetic
    #[error("cyclotomic conductor must be positive")]
    ZeroConductor,
    #[error("cyclotomic conductors differ ({0} vs {1})")]
    ConductorMismatch(u32, u32),
    #[error("Galois exponent {k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },

    // characters
    #[error("no prime p = 1 mod {exponent} below the search bound {bound}")]
    NoSuitablePrime { exponent: u64, bound: u64 },
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("inner product is not rational: {0}")]
    IrrationalInnerProduct(String),
    #[error("average over the subgroup is not a non-negative integer; not a character")]
    NonIntegralAverage,
    #[error("class function is not an irreducible character")]
    NotIrreducible,
    #[error("Schur index {schur} does not divide degree {degree}")]
    NonIntegralN { degree: u64, schur: u64 },
    #[error("Schur override given for irreducible {0}, which is not an orbit representative")]
    OverrideNotRepresentative(usize),
    #[error("character table construction failed: {0}")]
    CharacterTableFailure(String),

    // coverings
    #[error("branch element {index} has order {order}, but the period is {period}")]
    PeriodMismatch {
        index: usize,
        order: usize,
        period: u64,
    },
    #[error("the long relation does not multiply to the identity")]
    RelationFails,
    #[error("the generating vector generates a proper subgroup of order {generated}")]
    NotGenerating { generated: usize },
    #[error("Riemann-Hurwitz gives a non-integral or negative genus ({0})")]
    NonIntegralGenus(String),
    #[error("periods and branch elements have different lengths ({periods} vs {elements})")]
    SignatureLength { periods: usize, elements: usize },
    #[error("orbit genus {genus} needs {genus} handle pairs, got {found}")]
    HandleCount { genus: u64, found: usize },
    #[error("period {period} at branch point {index} is smaller than 2")]
    PeriodTooSmall { index: usize, period: u64 },

    // decomposition
    #[error("factor dimension for class {class} is not a non-negative integer ({value})")]
    NonIntegralDimension { class: usize, value: String },
    #[error("rational representation multiplicity for class {class} is not integral")]
    NonIntegralMultiplicity { class: usize },
    #[error("collection is not admissible")]
    NotAdmissible,
    #[error("collection does not partition the group: {0:?}")]
    NotAPartition(PartitionWitness),
    #[error("collection is empty")]
    EmptyCollection,
    #[error("collection index {index} out of range for a collection of size {len}")]
    CollectionIndex { index: usize, len: usize },
    #[error("fiber products need at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("genera of the factor curves must be at least 1")]
    InvalidGenus,
    #[error("identity check failed: {0}")]
    IdentityViolated(String),

    // scenario input
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("scenario validation failed: {0}")]
    Validation(Box<Error>),
    #[error("unknown collection `{0}`")]
    UnknownCollection(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the error signals a failed mathematical identity inside the
    /// engine rather than bad user input.
    pub fn is_identity_failure(&self) -> bool {
        matches!(
            self,
            Error::IdentityViolated(_)
                | Error::NonIntegralDimension { .. }
                | Error::NonIntegralMultiplicity { .. }
                | Error::CharacterTableFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
