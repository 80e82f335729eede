use std::fmt;

/// Errors shared by all modules of the crate.
///
/// The variants split into three groups that the CLI maps onto distinct exit
/// codes: structural misuse (ring mismatches, bad indices), precondition
/// violations (non-isolated germs, invalid factorizations), and budget
/// exhaustion (degree caps reached without a certificate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two values living in different polynomial rings were combined.
    RingMismatch { expected: String, found: String },
    /// A variable index outside `0..var_count`.
    VarIndexOutOfRange { index: usize, count: usize },
    /// `substitute` was given the wrong number of images.
    ImageCountMismatch { expected: usize, found: usize },
    /// A substitution image with a nonzero constant term (it would not fix
    /// the origin).
    NonGermImage { index: usize },
    /// A variable name that is not valid or collides with an existing one.
    NameCollision { name: String },
    /// An operation required a nonzero polynomial.
    ZeroPolynomial,
    /// A generator list for a standard basis contained the zero polynomial.
    ZeroGenerator,
    /// A ring context with no variables or duplicate names.
    InvalidRing { detail: String },
    /// The polynomial is not a germ (order zero: nonzero constant term).
    NotAGerm,
    /// Classification entry points require order at least two.
    OrderTooLow { required: u32, actual: u32 },
    /// Completion stopped at the degree cap without a certificate; dimensions
    /// derived from this basis would only be lower bounds, so they are
    /// refused.
    IncompleteBasis { degree_cap: u32 },
    /// A quotient with infinitely many standard monomials where a finite one
    /// was required.
    InfiniteDimension,
    /// The germ has a non-isolated critical point; carries the witnessing
    /// variable whose pure powers never enter the leading ideal.
    NotIsolated { detail: String },
    /// `validate` failed: the matrix products do not equal f times the
    /// identity.  Reports the first failing entry.
    InvalidFactorization { row: usize, col: usize, detail: String },
    /// The matrices of a would-be morphism do not satisfy the commutation
    /// relations.
    InvalidMorphism { detail: String },
    /// Matrix shape mismatch.
    ShapeMismatch { detail: String },
    /// A homotopy-theoretic answer could not be stabilized within the bound.
    Inconclusive { detail: String },
    /// A search or completion budget was exhausted.
    BudgetExhausted { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch { expected, found } => {
                write!(f, "ring mismatch: expected [{expected}], found [{found}]")
            }
            Error::VarIndexOutOfRange { index, count } => {
                write!(f, "variable index {index} out of range (ring has {count} variables)")
            }
            Error::ImageCountMismatch { expected, found } => {
                write!(f, "substitution needs {expected} images, got {found}")
            }
            Error::NonGermImage { index } => {
                write!(f, "substitution image {index} has a nonzero constant term")
            }
            Error::NameCollision { name } => write!(f, "variable name collision: {name}"),
            Error::ZeroPolynomial => write!(f, "operation requires a nonzero polynomial"),
            Error::ZeroGenerator => write!(f, "generator lists must not contain zero"),
            Error::InvalidRing { detail } => write!(f, "invalid ring: {detail}"),
            Error::NotAGerm => write!(f, "polynomial does not vanish at the origin"),
            Error::OrderTooLow { required, actual } => {
                write!(f, "germ order {actual} below required {required}")
            }
            Error::IncompleteBasis { degree_cap } => {
                write!(f, "standard basis incomplete at degree cap {degree_cap}")
            }
            Error::InfiniteDimension => write!(f, "quotient is infinite-dimensional"),
            Error::NotIsolated { detail } => write!(f, "non-isolated singularity: {detail}"),
            Error::InvalidFactorization { row, col, detail } => {
                write!(f, "not a matrix factorization at entry ({row}, {col}): {detail}")
            }
            Error::InvalidMorphism { detail } => write!(f, "not a morphism: {detail}"),
            Error::ShapeMismatch { detail } => write!(f, "shape mismatch: {detail}"),
            Error::Inconclusive { detail } => write!(f, "inconclusive: {detail}"),
            Error::BudgetExhausted { detail } => write!(f, "budget exhausted: {detail}"),
        }
    }
}

impl std::error::Error for Error {}
