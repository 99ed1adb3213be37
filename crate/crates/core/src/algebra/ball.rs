//! Complex midpoint-radius balls with conservative rounding.
//!
//! Every operation returns a ball that contains all results of applying the
//! exact operation to points of the input balls. Rounding of the midpoint
//! computation is absorbed by inflating the radius with a few units in the
//! last place, so the enclosure holds under round-to-nearest.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::approx::{scaled_to_f64, trig_table};
use super::cyclotomic::Cyclotomic;

const U: f64 = f64::EPSILON / 2.0;

/// Rounds a nonnegative bound upward (absorbs rounding in the bound itself).
fn up(x: f64) -> f64 {
    x * (1.0 + 8.0 * U) + f64::MIN_POSITIVE
}

#[derive(Clone, Copy, Debug)]
pub struct Ball {
    pub mid: Complex64,
    pub rad: f64,
}

impl Ball {
    pub fn exact(mid: Complex64) -> Self {
        Self { mid, rad: 0.0 }
    }

    pub fn zero() -> Self {
        Self::exact(Complex64::new(0.0, 0.0))
    }

    fn mag(&self) -> f64 {
        up(self.mid.norm())
    }

    /// Upper bound on `|z|` over the ball.
    pub fn upper(&self) -> f64 {
        up(self.mag() + self.rad)
    }

    /// Lower bound on `|z|` over the ball (zero if the ball contains 0).
    pub fn lower(&self) -> f64 {
        let l = self.mid.norm() * (1.0 - 8.0 * U) - self.rad;
        l.max(0.0)
    }

    pub fn contains_zero(&self) -> bool {
        self.lower() == 0.0
    }

    /// Certified sign of the real part, `None` when the ball straddles zero.
    pub fn re_sign(&self) -> Option<i8> {
        let m = self.mid.re;
        let slack = up(self.rad + m.abs() * 4.0 * U);
        if m > slack {
            Some(1)
        } else if m < -slack {
            Some(-1)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mid = self.mid + o.mid;
        Self {
            mid,
            rad: up(self.rad + o.rad + 2.0 * U * (mid.re.abs() + mid.im.abs())),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -self.mid,
            rad: self.rad,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            mid: self.mid.conj(),
            rad: self.rad,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mid = self.mid * o.mid;
        let (a, b) = (self.mag(), o.mag());
        let rad = a * o.rad + b * self.rad + self.rad * o.rad + 6.0 * U * a * b;
        Self { mid, rad: up(rad) }
    }

    /// Reciprocal, `None` if the ball may contain zero.
    pub fn inv(&self) -> Option<Self> {
        let low = self.lower();
        if low <= 0.0 {
            return None;
        }
        let mid = self.mid.inv();
        let m = self.mid.norm();
        let rad = self.rad / (m * low) + 8.0 * U / low;
        Some(Self { mid, rad: up(rad) })
    }
}

thread_local! {
    static F64_TABLES: RefCell<HashMap<u32, Rc<Vec<Complex64>>>> = RefCell::new(HashMap::new());
}

/// `exp(2 pi i j/n)` rounded to double, each component within `2^-52`.
fn f64_table(n: u32) -> Rc<Vec<Complex64>> {
    if let Some(t) = F64_TABLES.with(|c| c.borrow().get(&n).cloned()) {
        return t;
    }
    let fixed = trig_table(n, 64);
    let t: Rc<Vec<Complex64>> = Rc::new(
        fixed
            .iter()
            .map(|(c, s)| Complex64::new(scaled_to_f64(c, 64), scaled_to_f64(s, 64)))
            .collect(),
    );
    F64_TABLES.with(|c| c.borrow_mut().insert(n, t.clone()));
    t
}

const SAFE: f64 = 9007199254740992.0; // 2^53

/// Encloses an exact cyclotomic number.
pub fn enclose(z: &Cyclotomic) -> Ball {
    if z.is_zero() {
        return Ball::zero();
    }
    let den = z.denominator();
    let nums = z.numerators();
    let small = den.to_f64().is_some_and(|d| d < SAFE)
        && nums.iter().all(|c| c.abs().to_f64().is_some_and(|x| x < SAFE));
    if small {
        let table = f64_table(z.order());
        let mut s = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (j, c) in nums.iter().enumerate() {
            let cf = c.to_f64().unwrap();
            if cf != 0.0 {
                s += table[j] * cf;
                mass += cf.abs();
            }
        }
        let len = nums.len() as f64;
        let d = den.to_f64().unwrap();
        // table error 2^-52 per component plus summation error
        let rad_num = mass * (2.0 * f64::EPSILON + (len + 2.0) * 2.0 * U);
        let mid = s / d;
        let rad = rad_num / d + 4.0 * U * (mid.re.abs() + mid.im.abs());
        Ball { mid, rad: up(rad) }
    } else {
        let bits = 64 + (den.bits() as u32);
        let fx = z.approx(bits);
        let mid = Complex64::new(fx.re_f64(), fx.im_f64());
        let err = scaled_to_f64(&(fx.err.clone() * 2 + BigInt::from(2)), bits);
        let rad = err + 4.0 * U * (mid.re.abs() + mid.im.abs());
        Ball { mid, rad: up(rad) }
    }
}
