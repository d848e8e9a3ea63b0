use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse rational {0:?}")]
    Rational(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid file contents: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not square or has entries out of range")]
    Malformed,
    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("element 0 is not a two-sided identity (fails at element {0})")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("generator index {index} out of range (presentation has {count} generators)")]
    BadGenerator { index: usize, count: usize },
    #[error("search space of {candidates} exceeds cap {cap}")]
    SizeLimit { candidates: u128, cap: u64 },
    #[error("homomorphism set is not closed under conjugation")]
    NotClosed,
    #[error("groups of order {0} are not supported (max 64)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("coboundary of an arity-{0} cochain is not supported (max arity 3)")]
    ArityTooHigh(usize),
    #[error("expected an arity-{expected} cochain, got arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cochain is not a cocycle (fails at {0:?})")]
    NotCocycle(Vec<usize>),
    #[error("cochain is defined on a group of order {found}, expected {expected}")]
    GroupMismatch { expected: usize, found: usize },
    #[error("cochain is not normalized at {0:?}")]
    NotNormalized(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("gluing table is not a symmetric involution at tetrahedron {tet} face {face}")]
    NotInvolution { tet: usize, face: usize },
    #[error("face gluing at tetrahedron {tet} face {face} does not respect vertex order")]
    NotOrderRespecting { tet: usize, face: usize },
    #[error("complex is not orientable (conflict at tetrahedron {tet} face {face})")]
    NonOrientable { tet: usize, face: usize },
    #[error("gluing references a missing simplex or face: {0}")]
    DanglingFace(String),
    #[error("unknown manifold name {0:?}")]
    UnknownName(String),
    #[error("boundary matching is incompatible: {0}")]
    IncompatibleMatching(String),
    #[error("matching is orientation preserving at {0}")]
    OrientationClash(String),
    #[error("triangle set is not a closed surface: {0}")]
    NotASurface(String),
    #[error("complex is not a manifold: {0}")]
    NotManifold(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaugeError {
    #[error("search exceeded {0} nodes")]
    SizeLimit(u64),
    #[error("coloring set is not closed under gauge transformations")]
    NotClosed,
    #[error("complex carries no named loops")]
    UnknownLoops,
    #[error("coloring is not flat at triangle {0}")]
    NotFlat(usize),
    #[error("coloring has the wrong length or out-of-range entries")]
    BadColoring,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathIntegralError {
    #[error("complex has boundary; a closed complex is required")]
    NotClosed,
    #[error("complex is closed; a boundary is required")]
    NoBoundary,
    #[error("coloring is not flat at triangle {0}")]
    NotFlat(usize),
    #[error("boundary value is not flat at triangle {0}")]
    NotFlatBoundary(usize),
    #[error("twisted Hilbert spaces are only available in genus 1 (got genus {0})")]
    TwistedGenusUnsupported(usize),
    #[error("amplitudes are indexed by different sector sets")]
    SectorMismatch,
    #[error("unsupported surface for this check: {0}")]
    UnsupportedSurface(String),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("base surface has boundary")]
    NotClosed,
    #[error("base surface is closed; use the absolute Euler number")]
    NotRelative,
    #[error("curvature and holonomy disagree on triangle {0}")]
    Incompatible(usize),
    #[error("total curvature {0} is not an integer")]
    NonIntegerTotal(String),
    #[error("relative Euler number {0} is not an integer")]
    NonIntegerRelative(String),
    #[error("torsors do not match: {0}")]
    TorsorMismatch(String),
    #[error("data has the wrong shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Umbrella error used by file loaders and the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    PathIntegral(#[from] PathIntegralError),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

impl Error {
    /// True when the failure was a search-space cap rather than bad input.
    pub fn is_size_limit(&self) -> bool {
        matches!(
            self,
            Error::Group(GroupError::SizeLimit { .. })
                | Error::Gauge(GaugeError::SizeLimit(_))
                | Error::PathIntegral(PathIntegralError::Gauge(GaugeError::SizeLimit(_)))
                | Error::PathIntegral(PathIntegralError::Group(GroupError::SizeLimit { .. }))
        )
    }
}
