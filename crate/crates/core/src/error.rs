use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k must be odd: U_k is trivial for even k (got k = {0})")]
    EvenDegree(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the harmonic oscillator is only defined for n = 1 (got n = {0})")]
    NotOneDimensional(usize),

    #[error("index l = {l} out of range for k = {k}")]
    IndexOutOfRange { k: u32, l: u32 },

    #[error("Hom_U(1)(V_{k}, W_{l}) is trivial; no intertwiner to normalize")]
    TrivialHomSpace { k: u32, l: u32 },

    #[error("det(D_{0}) vanishes because (k+1)/2 is odd; use the kernel dimension instead")]
    SingularOperator(u32),

    #[error("matrix is not tridiagonal: entry ({row}, {col}) is nonzero")]
    NotTridiagonal { row: usize, col: usize },

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
