use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Minimal commutative-ring interface shared by every matrix scalar.
///
/// Operations take references so big-number scalars avoid needless clones.
pub trait Ring: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = if n >= 0 { Self::one() } else { Self::one().neg() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        acc
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
}

/// Complex conjugation (the involution used for hermitian forms).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

/// Rings where division by a known divisor can be carried out exactly.
pub trait ExactDiv: Ring {
    /// Returns `self / divisor` when the quotient exists in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Conjugate for i64 {
    fn conj(&self) -> Self {
        *self
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl ExactDiv for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

impl Conjugate for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}
