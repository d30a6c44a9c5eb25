use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(usize),
    #[error("modulus polynomial is reducible over F_{p}")]
    ReduciblePolynomial { p: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {p}^{n} exceeds 2^16")]
    TooLarge { p: usize, n: usize },
    #[error("element index {index} out of range for field of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("{0}: not unitary")]
    NotUnitary(String),
    #[error("family members {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("no non-degenerate combination found after {attempts} attempts")]
    DegenerateFamily { attempts: usize },
    #[error("{0}: is_hadamard failed")]
    NotHadamard(String),
    #[error("not a controlled Hadamard: member {0} fails is_hadamard")]
    NotControlledHadamard(usize),
    #[error("expected {expected} bases, found {found}")]
    WrongFamilySize { expected: usize, found: usize },
    #[error("not a partitioned unitary error basis: {0}")]
    NotPartitionedUeb(String),
    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not in canonical form: {0}")]
    NotCanonicalForm(String),
    #[error("malformed manifest: {0}")]
    Malformed(String),
}
