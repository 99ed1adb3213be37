//! Exact scalars, matrices, Laurent polynomials and signatures.

pub mod approx;
pub mod ball;
pub mod cyclotomic;
pub mod laurent;
pub mod matrix;
pub mod ring;
pub mod signature;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic, Rational, RootOfUnity};
pub use laurent::{laurent_det, LaurentPoly};
pub use matrix::{Matrix, SquareMatrix};
pub use ring::{Conjugate, ExactDiv, Ring};
pub use signature::{
    classify, classify_float, exact_inertia, signature, signature_float, signature_int,
    signature_rational, signature_with, Backend, FloatInertia, Hermiticity, Inertia,
};

/// Floating-point complex scalar used by the float backends.
pub type ComplexF = num_complex::Complex64;
