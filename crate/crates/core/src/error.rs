use thiserror::Error;

/// Every failure mode of the library surfaces as one of these variants.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} too large")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar `{0}`")]
    ScalarSyntax(String),
    #[error("field descriptors do not match")]
    FieldMismatch,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("row subset size {got} does not match column count {want}")]
    SubsetSizeMismatch { got: usize, want: usize },

    #[error("dimension vector length does not match quiver")]
    QuiverShapeMismatch,
    #[error("paths are not composable")]
    NotComposable,
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("framing slot {slot} out of range at vertex {vertex}")]
    SlotOutOfRange { vertex: usize, slot: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("path syntax error: {0}")]
    PathSyntax(String),

    #[error("representation is not stable")]
    NotStable,
    #[error("representation does not lie in the requested chart")]
    NotInChart,
    #[error("row bundle lacks a row for path `{0}`")]
    MissingRow(String),
    #[error("chart point rows do not match the skeleton complement: {0}")]
    IndexMismatch(String),
    #[error("unknown Pluecker variable `{0}`")]
    UnknownVariable(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("oracle requires a prime field")]
    OracleNeedsPrimeField,
    #[error("gave up after {0} rejection-sampling attempts")]
    GaveUp(u64),

    #[error("document error: {0}")]
    Document(String),
}
