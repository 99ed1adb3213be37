//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element of order `n` is stored in the power basis `1, zeta, ..., zeta^{phi(n)-1}`
//! reduced modulo the `n`-th cyclotomic polynomial, with integer numerators over
//! one positive common denominator. The reduced form is unique for a fixed
//! order; values of different orders compare equal after promotion to the
//! least common multiple of their orders.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::FixedComplex;
use super::ring::{self, Conjugate};
use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = BigRational;

pub(crate) struct CycloField {
    phi: usize,
    /// Monic cyclotomic polynomial, low degree first, length `phi + 1`.
    poly: Vec<i64>,
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<CycloField>>> = RefCell::new(HashMap::new());
}

/// Coefficients of the `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    field(n).poly.clone()
}

fn field(n: u32) -> Rc<CycloField> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(f) = FIELDS.with(|c| c.borrow().get(&n).cloned()) {
        return f;
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = field(d).poly.clone();
            num = poly_exact_div_monic(&num, &div);
        }
    }
    let f = Rc::new(CycloField {
        phi: num.len() - 1,
        poly: num,
    });
    FIELDS.with(|c| c.borrow_mut().insert(n, f.clone()));
    f
}

fn poly_exact_div_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &d) in div.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    field(n).phi
}

/// A root of unity `exp(2 pi i num/den)` with `0 <= num < den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity denominator must be positive");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Self {
            num: n / g,
            den: den / g,
        }
    }

    pub fn one() -> Self {
        Self { num: 0, den: 1 }
    }

    /// Angle `a` in `[0,1)` with `z = exp(2 pi i a)`, as `(num, den)`.
    pub fn angle(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn angle_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        Self::new(num as i64, den)
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, e: i64) -> Self {
        let num = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        Self::new(num as i64, self.den)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.num as i64, self.den as u32)
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.num, self.den)
    }
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self {
            order: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self {
            order: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Self {
            order: 1,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
    }

    /// `zeta_n^j` for any integer `j`.
    pub fn root_of_unity(j: i64, n: u32) -> Self {
        let mut raw = vec![BigInt::zero(); n as usize];
        raw[j.rem_euclid(n as i64) as usize] = BigInt::one();
        Self::from_raw(n, raw, BigInt::one())
    }

    /// `sum_j coeffs[j] zeta_n^j` with integer coefficients.
    pub fn from_int_coeffs(order: u32, coeffs: &[i64]) -> Self {
        let mut raw = vec![BigInt::zero(); order as usize];
        for (j, &c) in coeffs.iter().enumerate() {
            raw[j % order as usize] += c;
        }
        Self::from_raw(order, raw, BigInt::one())
    }

    /// Builds `sum_j coeffs[j] zeta_n^j` from any number of coefficients;
    /// exponents are reduced mod `n` and then mod the cyclotomic polynomial.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        assert!(order >= 1);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut raw = vec![BigInt::zero(); order as usize];
        for (j, c) in coeffs.iter().enumerate() {
            raw[j % order as usize] += c.numer() * (&den / c.denom());
        }
        Self::from_raw(order, raw, den)
    }

    /// `raw` holds numerators for `zeta^0 .. zeta^{len-1}` (any length).
    fn from_raw(order: u32, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let f = field(order);
        reduce(&mut raw, &f);
        let mut out = Self {
            order,
            num: raw,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Dimension `phi(n)` of the stored coefficient vector.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeff(&self, j: usize) -> Rational {
        Rational::new(self.num[j].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|j| self.coeff(j)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the element in `Q(zeta_target)`; `order` must divide `target`.
    pub fn promote(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target % self.order == 0,
            "cannot promote order {} to {}",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); target as usize];
        for (j, c) in self.num.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        Self::from_raw(target, raw, self.den.clone())
    }

    fn align<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order == b.order {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = a.order.lcm(&b.order);
        let pa = if a.order == l { Cow::Borrowed(a) } else { Cow::Owned(a.promote(l)) };
        let pb = if b.order == l { Cow::Borrowed(b) } else { Cow::Owned(b.promote(l)) };
        (pa, pb)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg_impl() } else { other.clone() };
        }
        let (a, b) = Self::align(self, other);
        let (num, den) = if a.den == b.den {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect();
            (num, a.den.clone())
        } else {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &a.den * &b.den)
        };
        let mut out = Self {
            order: a.order,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn neg_impl(&self) -> Self {
        Self {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.order == 1 {
            return other.scale_rational_parts(&self.num[0], &self.den);
        }
        if other.order == 1 {
            return self.scale_rational_parts(&other.num[0], &other.den);
        }
        let (a, b) = Self::align(self, other);
        let phi = a.num.len();
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let f = field(a.order);
        reduce(&mut raw, &f);
        let mut out = Self {
            order: a.order,
            num: raw,
            den: &a.den * &b.den,
        };
        out.normalize();
        out
    }

    fn scale_rational_parts(&self, n: &BigInt, d: &BigInt) -> Self {
        let mut out = Self {
            order: self.order,
            num: self.num.iter().map(|c| c * n).collect(),
            den: &self.den * d,
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        if n == 1 {
            return self.clone();
        }
        self.scale_rational_parts(&BigInt::from(n), &BigInt::one())
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (j, c) in self.num.iter().enumerate() {
            raw[(n - j) % n] = c.clone();
        }
        Self::from_raw(self.order, raw, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2 || *self == self.conj()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut out = Self {
                order: 1,
                num: vec![self.den.clone()],
                den: self.num[0].clone(),
            };
            out.normalize();
            return Some(out);
        }
        // Solve (multiplication-by-a matrix) x = den * e_0 over Q.
        let phi = self.num.len();
        let f = field(self.order);
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        let mut cur = self.num.clone();
        for _ in 0..phi {
            cols.push(cur.clone());
            // multiply by zeta
            let mut next = vec![BigInt::zero(); phi + 1];
            for (j, c) in cur.iter().enumerate() {
                next[j + 1] = c.clone();
            }
            reduce(&mut next, &f);
            cur = next;
        }
        let mut rhs = vec![BigInt::zero(); phi];
        rhs[0] = self.den.clone();
        let sol = solve_integer_system(&cols, &rhs)?;
        Some(Self::from_coeffs(self.order, &sol))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_impl(&inv))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        acc
    }

    /// Squared modulus `z * conj(z)`.
    pub fn norm_sqr(&self) -> Self {
        self.mul_impl(&self.conj())
    }

    /// Fixed-point approximation at `bits` bits.
    pub fn approx(&self, bits: u32) -> FixedComplex {
        FixedComplex::from_power_basis(self.order, &self.num, &self.den, bits)
    }

    /// Double-precision value with
    /// `|result - exact| < 2^{1-precision} (1 + |exact|)` for `precision <= 52`.
    pub fn to_complex_with(&self, precision: u32) -> Complex64 {
        let precision = precision.min(52);
        let mass: BigInt = self.num.iter().map(|c| c.abs()).sum::<BigInt>() * 2u32;
        let extra = (mass / &self.den).bits() as u32 + 4;
        let fx = self.approx(precision + extra + 2);
        Complex64::new(fx.re_f64(), fx.im_f64())
    }

    pub fn to_complex(&self) -> Complex64 {
        self.to_complex_with(52)
    }

    /// Certified sign of the real part; exact zero gives `Equal`.
    ///
    /// Precision doubles until the approximation error is smaller than the
    /// value, which always terminates for a nonzero real part.
    pub fn real_sign(&self) -> Ordering {
        let re = if self.is_real() {
            self.clone()
        } else {
            (self + &self.conj()).scale_rational_parts(&BigInt::one(), &BigInt::from(2))
        };
        if re.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            if let Some(s) = re.approx(bits).re_sign() {
                return if s > 0 { Ordering::Greater } else { Ordering::Less };
            }
            bits *= 2;
        }
    }

    /// Recognises `±zeta_n^j` and returns it as a root of unity.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if !self.den.is_one() {
            return None;
        }
        let n = self.order as u64;
        let big = n.lcm(&2);
        for j in 0..big {
            let cand = Cyclotomic::root_of_unity(j as i64, big as u32);
            if &cand == self {
                return Some(RootOfUnity::new(j as i64, big));
            }
        }
        None
    }

    /// Approximate magnitude of the largest coefficient, used for diagnostics.
    pub fn height(&self) -> f64 {
        let m = self.num.iter().map(|c| c.abs()).max().unwrap_or_default();
        m.to_f64().unwrap_or(f64::INFINITY) / self.den.to_f64().unwrap_or(1.0)
    }
}

fn reduce(raw: &mut Vec<BigInt>, f: &CycloField) {
    let phi = f.phi;
    if raw.len() > phi {
        for d in (phi..raw.len()).rev() {
            if raw[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[d]);
            for (i, &p) in f.poly[..phi].iter().enumerate() {
                if p != 0 {
                    raw[d - phi + i] -= &c * p;
                }
            }
        }
    }
    raw.resize(phi, BigInt::zero());
}

/// Solves `sum_j x_j cols[j] = rhs` over Q by Gaussian elimination.
fn solve_integer_system(cols: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| Rational::from(c[r].clone())).collect();
            row.push(Rational::from(rhs[r].clone()));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let inv = a[k][k].recip();
        for v in a[k].iter_mut().skip(k) {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for c in k..=n {
                    let t = &f * &a[k][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::align(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = Rational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if j == 1 {
                        write!(f, "z{}", self.order)?;
                    } else {
                        write!(f, "z{}^{}", self.order, j)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl ring::Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_impl(other, false)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add_impl(other, true)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
    fn neg(&self) -> Self {
        self.neg_impl()
    }
    fn from_i64(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
    fn scale_i64(&self, n: i64) -> Self {
        self.scale_int(n)
    }
}

impl ring::ExactDiv for Cyclotomic {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor).ok()
    }
}

impl Conjugate for Cyclotomic {
    fn conj(&self) -> Self {
        Cyclotomic::conj(self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero cyclotomic"));

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_impl()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_impl()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(j: i64, n: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(j, n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(64), 32);
        assert_eq!(totient(105), 48);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(1, 4) * &z(1, 4), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn sqrt_two_from_eighth_roots() {
        let s = &z(1, 8) + &z(7, 8);
        assert_eq!(&s * &s, Cyclotomic::from_integer(2));
        assert!(s.is_real());
        assert_eq!(s.real_sign(), Ordering::Greater);
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one() + &z(1, 3)) + &z(2, 3);
        assert!(s.is_zero());
    }

    #[test]
    fn mixed_orders_promote() {
        let a = z(1, 4);
        let b = z(1, 6);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, z(5, 12));
        // -1 as a 4th root equals -1 as an integer
        assert_eq!(z(2, 4), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn inverse_and_division() {
        let a = &Cyclotomic::from_integer(2) + &z(1, 5);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one());
        assert_eq!(Cyclotomic::zero().inv(), None);
        assert!(Cyclotomic::one().checked_div(&Cyclotomic::zero()).is_err());
    }

    #[test]
    fn conjugation_inverts_roots() {
        let a = z(3, 8);
        assert_eq!(a.conj(), z(5, 8));
        assert_eq!(&a * &a.conj(), Cyclotomic::one());
    }

    #[test]
    fn complex_values() {
        let i = z(1, 4).to_complex();
        assert!((i.re).abs() < 1e-15 && (i.im - 1.0).abs() < 1e-15);
        let e = z(1, 8).to_complex();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.re - s).abs() < 1e-15 && (e.im - s).abs() < 1e-15);
        let zero = Cyclotomic::zero().to_complex();
        assert_eq!((zero.re, zero.im), (0.0, 0.0));
    }

    #[test]
    fn precision_bound_holds_under_cancellation() {
        // 10^12 (zeta_8 + zeta_8^7) - 10^12 sqrt 2 style cancellation:
        // huge coefficients but tiny value
        let big = Cyclotomic::from_integer(1_000_000_000_000);
        let s = &z(1, 8) + &z(7, 8);
        let approx_sqrt2 = Cyclotomic::from_rational(&Rational::new(
            BigInt::from(1_414_213_562_373i64),
            BigInt::from(1_000_000_000_000i64),
        ));
        let v = &(&big * &s) - &(&big * &approx_sqrt2);
        let c = v.to_complex_with(52);
        let exact = 1e12 * (2f64.sqrt() - 1.414213562373);
        assert!((c.re - exact).abs() < 2f64.powi(-51) * (1.0 + exact.abs()) + 1e-3);
        assert_eq!(v.real_sign(), Ordering::Greater);
    }

    #[test]
    fn roots_of_unity_recognised() {
        assert_eq!(z(3, 8).as_root_of_unity(), Some(RootOfUnity::new(3, 8)));
        assert_eq!((-z(1, 3)).as_root_of_unity(), Some(RootOfUnity::new(5, 6)));
        let not_root = &Cyclotomic::from_integer(2) + &z(1, 8);
        assert_eq!(not_root.as_root_of_unity(), None);
    }

    #[test]
    fn root_of_unity_arithmetic() {
        let a = RootOfUnity::new(1, 8);
        assert_eq!(a.mul(&RootOfUnity::new(3, 8)), RootOfUnity::new(1, 2));
        assert_eq!(a.inv(), RootOfUnity::new(7, 8));
        assert_eq!(RootOfUnity::new(4, 8).order(), 2);
        assert_eq!(a.pow(8), RootOfUnity::one());
    }
}
