use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error taxonomy shared by every module.
///
/// The variants split into four families, mirrored by the CLI exit codes:
/// malformed input, mathematical preconditions that fail on honest input,
/// certificates that do not verify, and internal contradictions that are
/// impossible on correct input and indicate a bug if ever raised.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: {expected} variables, {got} substitutions")]
    ArityMismatch { expected: usize, got: usize },

    #[error("input columns are linearly dependent")]
    DependentColumns,

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("element has nonzero unit coordinate {0}; expected a member of the maximal ideal")]
    NotInMaximalIdeal(String),

    #[error("element has unit coordinate {0}; expected a unital element 1 + u")]
    NotUnital(String),

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("algebra is not Gorenstein: annihilator has dimension {ann_dim}")]
    NotGorenstein { ann_dim: usize },

    #[error("algebra is not graded: {0}")]
    NotGraded(String),

    #[error("annihilator of the maximal ideal differs from the top graded component")]
    AnnihilatorNotTop,

    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },

    #[error("hyperplane is not complementary to the annihilator")]
    NotComplementary,

    #[error("point is not on the hypersurface: membership value {0}")]
    NotOnHypersurface(String),

    #[error("projection kernel is zero-dimensional; the hypersurface degenerates to the single point 0")]
    ZeroDimensionalKernel,

    #[error("tensors are not realizable as an algebra: {0}")]
    NotRealizable(String),

    #[error("axiom fails: {0}")]
    AxiomFailed(String),

    #[error("matrix is singular")]
    Singular,

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("linear part of the supplied map is singular")]
    SingularLinearPart,

    #[error("graph equation is not in Blaschke normal form")]
    NotBlaschke,

    /// Raised when an exact verification that must always succeed on valid
    /// input fails.  Carries a witness dump for debugging.
    #[error("internal contradiction in {context}: {witness}")]
    Contradiction { context: String, witness: String },
}

impl Error {
    pub fn contradiction(context: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Contradiction {
            context: context.into(),
            witness: witness.into(),
        }
    }
}
