use alloc::string::String;

/// Everything that can go wrong while building or querying the algebraic objects.
///
/// Each variant has a stable machine-readable [`code`](Error::code) which the
/// command line front-end puts into its JSON output.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has degree 0; only the unit may live in degree 0")]
    DegreeZeroGenerator(String),
    #[error("differential of `{generator}` has degree {found}, expected {expected}")]
    DegreeMismatch { generator: String, expected: u32, found: u32 },
    #[error("d(d({generator})) = {residual} is not zero")]
    D2Nonzero { generator: String, residual: String },
    #[error("differential of `{generator}` is not homogeneous of weight {weight}")]
    WeightViolation { generator: String, weight: i64 },
    #[error("generator `{0}` has no weight but other generators do")]
    PartialWeights(String),
    #[error("truncation degree must be positive")]
    ZeroTruncation,
    #[error("degree {degree} is beyond the valid range (limit {limit})")]
    BeyondTruncation { degree: u32, limit: u32 },
    #[error("elements belong to different presentations")]
    MixedPresentations,
    #[error("element is zero or not homogeneous")]
    Inhomogeneous,
    #[error("morphism image of `{generator}` has the wrong degree or weight")]
    MorphismGrading { generator: String },
    #[error("morphism does not commute with d on `{generator}`: residual {residual}")]
    MorphismNotChainMap { generator: String, residual: String },
    #[error("morphism needs an image for every source generator")]
    MorphismArity,
    #[error("Euler element is not closed: d(e) = {0}")]
    EulerNotClosed(String),
    #[error("odd rank {0} is not supported; use the cohomology with zero differential instead")]
    OddRankUnsupported(u32),
    #[error("Euler element is not homogeneous of degree {rank} (and weight, when weighted)")]
    EulerInhomogeneous { rank: u32 },
    #[error("d(z) differs from e - e': residual {0}")]
    NotCohomologous(String),
    #[error("cohomology in degree 1 is nonzero (dimension {0}); a simply connected input is required")]
    NotSimplyConnected(usize),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("Massey system axiom {axiom} fails at ({i}, {j})")]
    InvalidMasseySystem { axiom: u8, i: usize, j: usize },
    #[error("Massey input classes must be closed")]
    NotClosed,
    #[error("Lie differential of `{0}` is not quadratic")]
    NonQuadratic(String),
    #[error("Lie differential of `{0}` is not order-preserving")]
    NotOrderPreserving(String),
    #[error("d(d({generator})) = {residual} in the Lie model is not zero")]
    DglD2Nonzero { generator: String, residual: String },
    #[error("Lie differential of `{generator}` does not lower degree by one")]
    DglDegree { generator: String },
    #[error("Lie degree {0} must be positive")]
    LieDegree(String),
    #[error("map on generators does not respect degrees (`{0}`)")]
    MapDegree(String),
    #[error("bigrading violated by the differential of `{0}`")]
    BigradingViolation(String),
    #[error("Euler element is not pure of type ({k}, {k})")]
    EulerNotPure { k: i64 },
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::DuplicateGenerator(_) => "duplicate_generator",
            Error::DegreeZeroGenerator(_) => "degree_zero_generator",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::D2Nonzero { .. } => "d2_nonzero",
            Error::WeightViolation { .. } => "weight_violation",
            Error::PartialWeights(_) => "weight_violation",
            Error::ZeroTruncation => "bad_truncation",
            Error::BeyondTruncation { .. } => "cutoff_exceeded",
            Error::MixedPresentations => "mixed_presentations",
            Error::Inhomogeneous => "inhomogeneous",
            Error::MorphismGrading { .. } => "morphism_grading",
            Error::MorphismNotChainMap { .. } => "morphism_not_chain_map",
            Error::MorphismArity => "morphism_arity",
            Error::EulerNotClosed(_) => "euler_not_closed",
            Error::OddRankUnsupported(_) => "odd_rank_unsupported",
            Error::EulerInhomogeneous { .. } => "euler_inhomogeneous",
            Error::NotCohomologous(_) => "not_cohomologous",
            Error::NotSimplyConnected(_) => "not_simply_connected",
            Error::ZeroScale => "zero_scale",
            Error::InvalidMasseySystem { .. } => "invalid_massey_system",
            Error::NotClosed => "not_closed",
            Error::NonQuadratic(_) => "non_quadratic",
            Error::NotOrderPreserving(_) => "not_order_preserving",
            Error::DglD2Nonzero { .. } => "dgl_d2_nonzero",
            Error::DglDegree { .. } => "dgl_degree",
            Error::LieDegree(_) => "lie_degree",
            Error::MapDegree(_) => "map_degree",
            Error::BigradingViolation(_) => "bigrading_violation",
            Error::EulerNotPure { .. } => "euler_not_pure",
        }
    }
}
