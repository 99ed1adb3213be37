//! Fixed-point evaluation of roots of unity with rigorous error bounds.
//!
//! A value `x` is represented at `bits` bits as an integer `X` with
//! `|x - X * 2^-bits| <= err * 2^-bits`. These approximations drive the
//! certified sign test for real cyclotomic numbers and the conversion of exact
//! entries into floating-point balls.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const GUARD_BITS: u32 = 40;

thread_local! {
    static PI_CACHE: RefCell<HashMap<u32, BigInt>> = RefCell::new(HashMap::new());
    static TRIG_CACHE: RefCell<HashMap<(u32, u32), Rc<Vec<(BigInt, BigInt)>>>> =
        RefCell::new(HashMap::new());
}

/// `atan(1/x) * 2^bits`, truncated series; absolute error below a few units.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = one / BigInt::from(x);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `pi * 2^bits` with absolute error at most one unit.
pub(crate) fn pi_fixed(bits: u32) -> BigInt {
    if let Some(v) = PI_CACHE.with(|c| c.borrow().get(&bits).cloned()) {
        return v;
    }
    let w = bits + GUARD_BITS;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let pi_w = atan_inv(5, w) * 16u32 - atan_inv(239, w) * 4u32;
    let v = pi_w >> GUARD_BITS;
    PI_CACHE.with(|c| c.borrow_mut().insert(bits, v.clone()));
    v
}

/// `(cos theta, sin theta) * 2^w` for `0 <= theta <= pi` given at `w` bits.
fn cos_sin_series(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let theta2 = (theta * theta) >> w;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut cterm = one;
    let mut sterm = theta.clone();
    let mut k: u64 = 1;
    loop {
        cterm = -((&cterm * &theta2) >> w) / BigInt::from((2 * k - 1) * (2 * k));
        sterm = -((&sterm * &theta2) >> w) / BigInt::from((2 * k) * (2 * k + 1));
        if cterm.is_zero() && sterm.is_zero() {
            break;
        }
        cos += &cterm;
        sin += &sterm;
        k += 1;
    }
    (cos, sin)
}

/// Table of `(cos(2 pi j/n), sin(2 pi j/n)) * 2^bits` for `j in 0..n`, each
/// component within two units of the true value.
pub(crate) fn trig_table(n: u32, bits: u32) -> Rc<Vec<(BigInt, BigInt)>> {
    if let Some(t) = TRIG_CACHE.with(|c| c.borrow().get(&(n, bits)).cloned()) {
        return t;
    }
    let w = bits + GUARD_BITS;
    let pi = pi_fixed(w);
    let mut table = Vec::with_capacity(n as usize);
    for j in 0..n {
        // reflect into [0, pi]
        let (jj, flip) = if 2 * j > n { (n - j, true) } else { (j, false) };
        let (cos, sin) = if jj == 0 {
            (BigInt::one() << w, BigInt::zero())
        } else if 2 * jj == n {
            (-(BigInt::one() << w), BigInt::zero())
        } else {
            let theta = (&pi * BigInt::from(2 * jj as u64)) / BigInt::from(n);
            cos_sin_series(&theta, w)
        };
        let round = |x: BigInt| -> BigInt {
            let half = BigInt::one() << (GUARD_BITS - 1);
            (x + half) >> GUARD_BITS
        };
        let sin = if flip { -sin } else { sin };
        table.push((round(cos), round(sin)));
    }
    let table = Rc::new(table);
    TRIG_CACHE.with(|c| c.borrow_mut().insert((n, bits), table.clone()));
    table
}

/// A complex fixed-point approximation: value ≈ `(re + i im) * 2^-bits`,
/// each component within `err * 2^-bits` of the truth.
#[derive(Clone, Debug)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub err: BigInt,
    pub bits: u32,
}

impl FixedComplex {
    /// Evaluates `(1/den) * sum_j num[j] * zeta_n^j`.
    pub(crate) fn from_power_basis(order: u32, num: &[BigInt], den: &BigInt, bits: u32) -> Self {
        let table = trig_table(order.max(1), bits);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut abs_sum = BigInt::zero();
        for (j, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cs, sn) = &table[j];
            re += c * cs;
            im += c * sn;
            abs_sum += c.abs();
        }
        // each table entry is within 2 units; division by den adds one more
        let err = (abs_sum * 2u32).div_ceil(den) + 1;
        Self {
            re: re.div_floor(den),
            im: im.div_floor(den),
            err,
            bits,
        }
    }

    /// Sign of the real part when it is certified, `None` otherwise.
    pub fn re_sign(&self) -> Option<i8> {
        if self.re.abs() > self.err {
            Some(if self.re.is_positive() { 1 } else { -1 })
        } else {
            None
        }
    }

    pub fn re_f64(&self) -> f64 {
        scaled_to_f64(&self.re, self.bits)
    }

    pub fn im_f64(&self) -> f64 {
        scaled_to_f64(&self.im, self.bits)
    }

    pub fn err_f64(&self) -> f64 {
        scaled_to_f64(&self.err, self.bits)
    }
}

pub(crate) fn scaled_to_f64(x: &BigInt, bits: u32) -> f64 {
    use num_traits::ToPrimitive;
    // keep 64 significant bits before handing to f64
    let len = x.bits() as i64;
    let shift = (len - 64).max(0);
    let head = (x >> shift as usize).to_f64().unwrap_or(0.0);
    head * 2f64.powi((shift - bits as i64) as i32)
}
