use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input rejected ({0})")]
    ZeroInput(&'static str),
    #[error("substitution undefined: denominator vanishes identically")]
    SubstitutionUndefined,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("components are not homogeneous of a common degree")]
    Inhomogeneous,
    #[error("zero map: all components vanish")]
    ZeroMap,
    #[error("composition degenerate: the inner map lands in the base locus of the outer map")]
    CompositionDegenerate,
    #[error("undefined at point")]
    UndefinedAtPoint,
    #[error("not a local isomorphism: the Jacobian is singular")]
    NotLocalIsomorphism,
    #[error("point is not fixed by the map")]
    PointNotFixed,
    #[error("map does not preserve H0: x0 does not divide the 0-th component")]
    DoesNotPreserveH0,
    #[error("restriction degenerate: all restricted components vanish")]
    RestrictionDegenerate,
    #[error("no inversion rule applies")]
    NoInversionRule,
    #[error("image not contained in the affine chart")]
    NotInChart,
    #[error("not de Jonquieres: {0}")]
    NotJonquieres(&'static str),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("map does not preserve X = {{y = 0}}")]
    DoesNotPreserveX,
    #[error("map contracts the normal direction of X")]
    ContractsNormalDirection,
    #[error("base components undefined on X")]
    BaseUndefinedOnX,
    #[error("excluded parameter value")]
    ExcludedParameter,
    #[error("degenerate composite on the whole line")]
    DegenerateFamily,
    #[error("no pointwise inverse available")]
    NoPointwiseInverse,
    #[error("sampling exhausted after {0} trials")]
    SamplingExhausted(usize),
    #[error("restriction check failed: the conjugate does not preserve H0")]
    RestrictionCheckFailed,
    #[error("no suitable lambda found")]
    NoSuitableLambda,
    #[error("beta search exhausted")]
    BetaSearchExhausted,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("could not sample a point off the degeneracy locus")]
    CouldNotSample,
    #[error("parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}
