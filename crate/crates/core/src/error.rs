use thiserror::Error;

/// Errors raised by the exact engines.
///
/// Verification failures are never errors: they are reported as content of a
/// [`VerificationReport`](crate::report::VerificationReport). An `Error` means
/// the inputs violated a precondition or could not be evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different symbol tables")]
    TableMismatch,
    #[error("product of two symbolic values in q-linear mode; rebuild the inputs over an algebraic symbol table")]
    QLinearProduct,
    #[error("value {0} has a symbol monomial of degree > 1, which q-linear mode cannot hold")]
    QLinearDegree(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("substituted polynomials disagree on the number of variables")]
    VariableCountMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact in the symbol ring")]
    NotExact,
    #[error("invalid symbol table: {0}")]
    InvalidSymbols(String),
    #[error("no table entry for point ({0})")]
    MissingTableKey(String),
    #[error("generator set is not injective; integer relation {0:?}")]
    NonInjective(Vec<String>),
    #[error("duplicate node on axis {axis}: {node}")]
    DuplicateNode { axis: usize, node: String },
    #[error("nodes {a} and {b} on axis {axis} differ by a non-rational amount")]
    NonRationalNodeGap { axis: usize, a: String, b: String },
    #[error("missing grid value at index {0:?}")]
    MissingValue(Vec<usize>),
    #[error("singular linear system")]
    SingularSystem,
    #[error("point set has {found} points, the polynomial space has dimension {expected}")]
    CardinalityMismatch { expected: usize, found: usize },
    #[error("box does not contain the base grid on axis {0}")]
    BoxNotConnected(usize),
    #[error("{nodes} nodes requested, cap is {cap}")]
    NodeCapExceeded { nodes: usize, cap: usize },
    #[error("theta_{0} is zero")]
    ZeroTheta(usize),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("perturbation bound {bound} is not below |a_N|/2 = {limit}")]
    PerturbationTooLarge { bound: String, limit: String },
    #[error("value {0} is not rational")]
    NotRational(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("point set is not a correct interpolation set (determinant vanishes)")]
    NotInterpolationSet,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
