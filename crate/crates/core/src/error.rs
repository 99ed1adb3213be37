use thiserror::Error;

/// Errors raised by the exact algebra layer and everything built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is neither hermitian nor skew-hermitian")]
    NotHermitian,

    #[error("matrix {index} is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("value {0} is not on the unit circle")]
    NotUnitModulus(String),

    #[error("{what} has order {order}, which is not a power of {p}")]
    NotPrimePower { what: String, order: u64, p: u64 },

    #[error("character constraint violated: chi(t_{index})^{k} != 1")]
    CharacterConstraint { index: usize, k: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("representation is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("component count mismatch: matrix has {matrix}, representation has {rep}")]
    ComponentMismatch { matrix: usize, rep: usize },

    #[error("incompatible Seifert matrices: {0}")]
    Incompatible(String),

    #[error("certificate block {index} is not unimodular (det = {det})")]
    NotUnimodular { index: usize, det: String },

    #[error("assembled form is not hermitian at block ({i},{j})")]
    FormNotHermitian { i: usize, j: usize },

    #[error("mixed exact and floating-point data")]
    MixedModes,

    #[error("Seifert matrix axioms violated: {0}")]
    Axioms(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
