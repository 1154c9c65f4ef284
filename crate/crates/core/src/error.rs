use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square: {rows} rows but a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor {index} has order 0")]
    ZeroOrder { index: usize },
    #[error("weight matrix has {rows} rows but there are {factors} cyclic factors")]
    WeightRows { rows: usize, factors: usize },
    #[error("weight matrix row {row} has {len} entries, expected {n}")]
    WeightColumns { row: usize, len: usize, n: usize },
    #[error("ambient dimension must be at least 1")]
    EmptyDimension,
    #[error("the action is not faithful: the variables generate {generated} of {order} characters")]
    NotFaithful { generated: u64, order: u64 },
    #[error("character {0} does not belong to the group")]
    BadCharacter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("ray E{label} has {len} coordinates, expected {n}")]
    RayDimension { label: usize, len: usize, n: usize },
    #[error("ray E{label} is not a point of the lattice L")]
    RayNotInLattice { label: usize },
    #[error("ray E{label} has a negative coordinate")]
    RayNegative { label: usize },
    #[error("ray E{label} is not primitive in L")]
    RayNotPrimitive { label: usize },
    #[error("cone {cone} has {len} rays, expected {n}")]
    ConeSize { cone: usize, len: usize, n: usize },
    #[error("cone {cone} refers to ray index {ray}, which does not exist")]
    ConeRayIndex { cone: usize, ray: usize },
    #[error("cone {cone} is not basic: |det| = {det}, expected 1/{order}")]
    NotBasic { cone: usize, det: String, order: u64 },
    #[error("cone index {0} is out of range")]
    NoSuchCone(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("coefficient of E{ray} is {coeff}, which is not congruent to {expected} mod 1 for character {character}")]
    CongruenceViolation {
        ray: usize,
        coeff: String,
        expected: String,
        character: String,
    },
    #[error("local exponent on cone {cone} has weight {found}, expected {expected}")]
    WeightMismatch {
        cone: usize,
        found: String,
        expected: String,
    },
    #[error("cones {first} and {second} disagree on E{ray}: {a} vs {b}")]
    GluingViolation {
        ray: usize,
        first: usize,
        second: usize,
        a: String,
        b: String,
    },
    #[error("no ray is labelled {0:?}")]
    UnknownRay(String),
    #[error("Cartier data has {found} cones, fan has {expected}")]
    ConeCount { found: usize, expected: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error("expected one divisor per character ({expected}), got {found}")]
    DivisorCount { found: usize, expected: usize },
    #[error("divisor for character {expected} carries character {found}")]
    CharacterMismatch { expected: String, found: String },
    #[error("character {0} appears twice")]
    DuplicateCharacter(String),
}
