use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown family letter `{0}`")]
    UnknownFamily(String),
    #[error("unsupported type {0}")]
    UnsupportedType(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: i64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("node subset {0:?} does not generate a finite parabolic subgroup")]
    InfiniteParabolic(Vec<usize>),
    #[error("element is not an involution")]
    NotInvolution,
    #[error("equal generators passed to pair_order")]
    EqualGenerators,
    #[error("product order {0} is not crystallographic")]
    NonCrystallographic(usize),
    #[error("Coxeter graph does not match any finite or affine catalog entry: {0}")]
    UnmatchedGraph(String),
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("gamma is not a presentation automorphism")]
    GammaNotAutomorphism,
    #[error("gamma does not stabilize J'")]
    GammaMovesJprime,
    #[error("J' is not of finite type")]
    JprimeInfinite,
    #[error("orbit {0:?} is not an admissible orbit")]
    OrbitNotInK(Vec<usize>),
    #[error("w0(J'+k) and w0(J') do not commute for orbit {0:?}")]
    CommutationFailure(Vec<usize>),
    #[error("tau for orbit {0:?} is not an involution")]
    TauNotInvolution(Vec<usize>),
    #[error("tau for orbit {0:?} does not normalize W_J'")]
    TauNotNormalizing(Vec<usize>),
    #[error("tau for orbit {0:?} is not fixed by gamma")]
    TauNotGammaFixed(Vec<usize>),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("weight values must agree across odd bond between generators {0} and {1} ({2} != {3})")]
    OddBondViolation(usize, usize, u64, u64),
    #[error("expected {expected} weight values, got {got}")]
    WeightArity { expected: usize, got: usize },
    #[error("embedding check failed")]
    EmbeddingFailed,
    #[error("odd difference of centralizer dimensions ({0} - {1})")]
    OddDimensionDifference(u64, u64),
    #[error("negative flag dimension ({0} < {1})")]
    NegativeDimension(u64, u64),
    #[error("cell identification not implemented for {0}")]
    CellNotImplemented(String),
    #[error("a-function not constant on {0}")]
    NonConstantA(String),
    #[error("parameters out of range for family {family}: {detail}")]
    ParamsOutOfRange { family: char, detail: String },
    #[error("no embedding pattern defined for {0}")]
    NoPattern(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
