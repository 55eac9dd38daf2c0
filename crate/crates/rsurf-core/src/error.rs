use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("negative exponent not allowed here")]
    NegativeExponent,
    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),
    #[error("degenerate Newton polytope (dimension {0})")]
    DegenerateHull(usize),
    #[error("odd degree polynomial where even degree is required")]
    OddDegree,
    #[error("leading coefficient is not a rational square")]
    NonSquareLeading,
    #[error("point is not on the curve (relative residual {0:e})")]
    OffCurve(f64),
    #[error("evaluation at a singular point: {0}")]
    Singular(&'static str),
    #[error("nodal point: both partial derivatives vanish")]
    Nodal,
    #[error("theta denominator too small: |theta| = {value:e}, bound {bound:e}")]
    SmallDenominator { value: f64, bound: f64 },
    #[error("matrix is not a Siegel matrix: {0}")]
    NotSiegel(&'static str),
    #[error("modular matrix must have determinant 1")]
    BadModular,
    #[error("iteration cap of {0} steps reached")]
    StepCap(usize),
    #[error("integration path passes through a branch point")]
    PathThroughBranchPoint,
    #[error("inconclusive lattice test: distance {0:e}")]
    Inconclusive(f64),
    #[error("unstable type (g, n) = ({0}, {1})")]
    Unstable(i64, i64),
    #[error("size cap exceeded: {0}")]
    TooLarge(&'static str),
    #[error("coincident points")]
    Coincident,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine readable tag, used by the command line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownIdentifier { .. } => "unknown_identifier",
            Error::ZeroInput(_) => "zero_input",
            Error::NegativeExponent => "negative_exponent",
            Error::NonConvergence(_) => "non_convergence",
            Error::DegenerateHull(_) => "degenerate_hull",
            Error::OddDegree => "odd_degree",
            Error::NonSquareLeading => "non_square_leading",
            Error::OffCurve(_) => "off_curve",
            Error::Singular(_) => "singular",
            Error::Nodal => "nodal",
            Error::SmallDenominator { .. } => "small_denominator",
            Error::NotSiegel(_) => "not_siegel",
            Error::BadModular => "bad_modular",
            Error::StepCap(_) => "step_cap",
            Error::PathThroughBranchPoint => "path_through_branch_point",
            Error::Inconclusive(_) => "inconclusive",
            Error::Unstable(..) => "unstable",
            Error::TooLarge(_) => "too_large",
            Error::Coincident => "coincident",
            Error::Invalid(_) => "invalid",
        }
    }
}
