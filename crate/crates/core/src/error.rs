use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field exponent {0} is outside 1..=16")]
    FieldExponent(u32),
    #[error("polynomial {modulus:#x} is not an irreducible polynomial of degree {k}")]
    ReducibleModulus { k: u32, modulus: u32 },
    #[error("{value} is not an element of GF(2^{k})")]
    NotAnElement { value: u32, k: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("element order exceeds the cap of {0}")]
    OrderCap(u64),
    #[error("form matrix has a nonzero entry below the diagonal")]
    NotUpperTriangular,
    #[error("quadratic space needs dimension at least 2, found {0}")]
    DimensionTooSmall(usize),
    #[error("scalar at position {0} is zero")]
    ZeroScalar(usize),
    #[error("operation requires {0} dimension")]
    Parity(&'static str),
    #[error("the bilinear form is degenerate")]
    Degenerate,
    #[error("the vector is singular")]
    SingularVector,
    #[error("the spanning vectors are linearly dependent")]
    DependentVectors,
    #[error("line has {0} singular points, which no quadratic form allows")]
    ImpossiblePointCount(usize),
    #[error("the space was not built from a scalar list")]
    NoScalars,
    #[error("scalar {0} does not belong to the admissible set A")]
    ScalarOutsideA(u16),
    #[error("no admissible scalars exist: {0}")]
    NoAdmissibleScalars(&'static str),
    #[error("field too small: q = {0}, need q >= 4")]
    FieldTooSmall(u32),
    #[error("group enumeration exceeded the cap of {0} elements")]
    EnumerationCap(usize),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generator {0} is not an involution")]
    NotInvolution(usize),
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("point set of size q^d = 2^{0} is too large for the stabilizer chain")]
    PointSetTooLarge(u32),
    #[error("generators do not satisfy the string C-group conditions")]
    NotStringCGroup,
}
