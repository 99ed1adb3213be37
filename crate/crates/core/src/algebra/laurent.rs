//! Multivariate Laurent polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{Cyclotomic, RootOfUnity};
use super::matrix::Matrix;
use super::ring::{self, ExactDiv};

/// A Laurent polynomial in `t_1, ..., t_nvars`.
///
/// Terms are keyed by exponent vectors of length `nvars`; zero coefficients
/// are never stored. Values with fewer variables are padded with zero
/// exponents when combined, so integer constants mix freely.
#[derive(Clone)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), vec![])
    }

    pub fn monomial(coeff: BigInt, exps: Vec<i32>) -> Self {
        let mut terms = BTreeMap::new();
        let nvars = exps.len();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { nvars, terms }
    }

    /// The variable `t_{i+1}` (0-based `i`) in a ring of `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut out = Self {
            nvars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        let e = pad(exps, self.nvars.max(exps.len()));
        let me = self.padded(e.len());
        me.terms.get(&e).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn padded(&self, n: usize) -> std::borrow::Cow<'_, Self> {
        if n == self.nvars {
            return std::borrow::Cow::Borrowed(self);
        }
        assert!(n >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (pad(e, n), c.clone()))
            .collect();
        std::borrow::Cow::Owned(Self { nvars: n, terms })
    }

    fn combine(&self, other: &Self, sign: i8) -> Self {
        let n = self.nvars.max(other.nvars);
        let mut out = self.padded(n).into_owned();
        for (e, c) in other.padded(n).terms.iter() {
            out.add_term(e.clone(), if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let n = self.nvars.max(other.nvars);
        let a = self.padded(n);
        let b = other.padded(n);
        let mut out = Self {
            nvars: n,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in a.terms.iter() {
            for (eb, cb) in b.terms.iter() {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self {
                nvars: self.nvars,
                terms: BTreeMap::new(),
            };
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let n = self.nvars.max(exps.len());
        let s = pad(exps, n);
        Self {
            nvars: n,
            terms: self
                .padded(n)
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&s).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Lex-largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Representative modulo `±t^a`: lowest exponent in every variable is
    /// zero and the lex-leading coefficient is positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m: Vec<i32> = self.min_exponents().iter().map(|x| -x).collect();
        let out = self.shift(&m);
        if out.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            out.scale(&BigInt::from(-1))
        } else {
            out
        }
    }

    /// Whether `self = ± t^a · other` for some monomial `t^a`.
    pub fn equals_up_to_unit(&self, other: &Self) -> bool {
        let n = self.nvars.max(other.nvars);
        self.padded(n).normalized() == other.padded(n).normalized()
    }

    /// Returns `(sign, exponents)` with `self = sign · t^exponents · other`
    /// when such a unit exists.
    pub fn unit_ratio(&self, other: &Self) -> Option<(i8, Vec<i32>)> {
        let n = self.nvars.max(other.nvars);
        let a = self.padded(n);
        let b = other.padded(n);
        if a.is_zero() || b.is_zero() || a.num_terms() != b.num_terms() {
            return None;
        }
        let (ea, ca) = a.leading_term()?;
        let (eb, cb) = b.leading_term()?;
        let shift: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x - y).collect();
        let sign: i8 = if ca == cb {
            1
        } else if *ca == -cb {
            -1
        } else {
            return None;
        };
        let cand = b.shift(&shift).scale(&BigInt::from(sign));
        (cand == *a).then_some((sign, shift))
    }

    /// Exact division of polynomials (nonnegative exponents) by lex long
    /// division; `None` if the remainder is nonzero.
    fn poly_exact_div(&self, d: &Self) -> Option<Self> {
        let n = self.nvars.max(d.nvars);
        let mut rem = self.padded(n).into_owned();
        let d = d.padded(n);
        let (de, dc) = d.leading_term()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut q = Self {
            nvars: n,
            terms: BTreeMap::new(),
        };
        while let Some((re, rc)) = rem.leading_term() {
            let qe: Vec<i32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(qc.clone(), qe.clone());
            rem = rem.combine(&term.mul_poly(&d), -1);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Exact division in the Laurent ring.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.nvars.max(d.nvars);
        let ma: Vec<i32> = self.padded(n).min_exponents();
        let md: Vec<i32> = d.padded(n).min_exponents();
        let a = self.shift(&ma.iter().map(|x| -x).collect::<Vec<_>>());
        let b = d.shift(&md.iter().map(|x| -x).collect::<Vec<_>>());
        let q = a.poly_exact_div(&b)?;
        let back: Vec<i32> = ma.iter().zip(&md).map(|(x, y)| x - y).collect();
        Some(q.shift(&back))
    }

    /// Evaluates at roots of unity exactly.
    pub fn eval_roots(&self, z: &[RootOfUnity]) -> Cyclotomic {
        assert!(z.len() >= self.nvars, "not enough evaluation points");
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut r = RootOfUnity::one();
            for (zi, &ei) in z.iter().zip(e) {
                r = r.mul(&zi.pow(ei as i64));
            }
            let coeff = Cyclotomic::from_rational(&num_rational::BigRational::from(c.clone()));
            acc = &acc + &(&r.to_cyclotomic() * &coeff);
        }
        acc
    }

    /// Evaluates at nonzero cyclotomic points.
    pub fn eval(&self, z: &[Cyclotomic]) -> Option<Cyclotomic> {
        assert!(z.len() >= self.nvars, "not enough evaluation points");
        let inv: Vec<Option<Cyclotomic>> = z.iter().map(|x| x.inv()).collect();
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut t = Cyclotomic::from_rational(&num_rational::BigRational::from(c.clone()));
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = &t * &z[i].pow(ei as u64);
                } else if ei < 0 {
                    t = &t * &inv[i].as_ref()?.pow(ei.unsigned_abs() as u64);
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Substitutes `t_i -> t_i^{-1}` in every variable.
    pub fn bar(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_poly(self);
        }
        acc
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        let n = self.nvars.max(other.nvars);
        self.padded(n).terms == other.padded(n).terms
    }
}

impl Eq for LaurentPoly {}

fn pad(e: &[i32], n: usize) -> Vec<i32> {
    let mut v = e.to_vec();
    v.resize(n, 0);
    v
}

impl ring::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }
    fn from_i64(n: i64) -> Self {
        LaurentPoly::constant(n)
    }
}

impl ExactDiv for LaurentPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        LaurentPoly::exact_div(self, divisor)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Cofactor expansion is used below this dimension, Bareiss elimination above.
pub const COFACTOR_LIMIT: usize = 7;

/// Exact determinant of a Laurent polynomial matrix.
pub fn laurent_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    let n = m.dim();
    if n < COFACTOR_LIMIT {
        return m.det_cofactor();
    }
    // Clear negative exponents row by row, then eliminate fraction-free.
    let mut shifted = m.clone();
    let mut unit = vec![0i32; 0];
    for r in 0..n {
        let mut row_min: Option<Vec<i32>> = None;
        for c in 0..n {
            let e = &m[(r, c)];
            if e.is_zero() {
                continue;
            }
            let me = e.min_exponents();
            row_min = Some(match row_min {
                None => me,
                Some(cur) => {
                    let k = cur.len().max(me.len());
                    pad(&cur, k).iter().zip(pad(&me, k)).map(|(a, b)| *a.min(&b)).collect()
                }
            });
        }
        if let Some(rm) = row_min {
            let s: Vec<i32> = rm.iter().map(|x| -x.min(&0)).collect();
            for c in 0..n {
                shifted[(r, c)] = m[(r, c)].shift(&s);
            }
            let k = unit.len().max(s.len());
            unit = pad(&unit, k).iter().zip(pad(&s, k)).map(|(a, b)| a + b).collect();
        }
    }
    let det = shifted.det_bareiss();
    det.shift(&unit.iter().map(|x| -x).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;

    fn t(i: usize) -> LaurentPoly {
        LaurentPoly::var(i, 2)
    }

    #[test]
    fn empty_and_diagonal_determinants() {
        let empty: Matrix<LaurentPoly> = Matrix::zeros(0, 0);
        assert_eq!(laurent_det(&empty), LaurentPoly::one());
        let d = Matrix::diagonal(&[t(0), t(1)]);
        assert_eq!(laurent_det(&d), t(0).mul_poly(&t(1)));
    }

    #[test]
    fn bareiss_matches_cofactor_on_laurent_entries() {
        let ti = t(0).bar();
        let entries = vec![
            t(0), LaurentPoly::constant(2), ti.clone(), LaurentPoly::one(),
            LaurentPoly::constant(-1), t(1), LaurentPoly::zero(), t(0).mul_poly(&t(1)),
            ti.clone(), LaurentPoly::one(), t(1).bar(), LaurentPoly::constant(3),
            LaurentPoly::zero(), t(0), LaurentPoly::one(), LaurentPoly::constant(-2),
        ];
        let m = Matrix::from_vec(4, 4, entries).unwrap();
        let mut shifted = m.clone();
        for r in 0..4 {
            for c in 0..4 {
                shifted[(r, c)] = m[(r, c)].shift(&[1, 1]);
            }
        }
        let via_bareiss = shifted.det_bareiss().shift(&[-4, -4]);
        assert_eq!(via_bareiss, m.det_cofactor());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = t(0).add(&LaurentPoly::constant(-1)).mul_poly(&t(1).bar().add(&t(0)));
        let b = t(0).add(&LaurentPoly::constant(-1));
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q.mul_poly(&b), a);
        assert!(t(0).exact_div(&t(0).add(&LaurentPoly::one())).is_none());
    }

    #[test]
    fn normalization_up_to_units() {
        let p = t(0).add(&LaurentPoly::constant(-3)).mul_poly(&t(1).bar());
        let q = p.shift(&[2, 5]).neg();
        assert!(p.equals_up_to_unit(&q));
        assert_eq!(q.unit_ratio(&p), Some((-1, vec![2, 5])));
        let n = q.normalized();
        assert_eq!(n.min_exponents(), vec![0, 0]);
        assert!(n.leading_term().unwrap().1.is_positive());
    }

    #[test]
    fn evaluation_at_roots() {
        // t1 + t1^{-1} at zeta_8 is sqrt 2
        let p = t(0).add(&t(0).bar());
        let v = p.eval_roots(&[RootOfUnity::new(1, 8), RootOfUnity::one()]);
        assert_eq!(&v * &v, Cyclotomic::from_integer(2));
        let w = p.eval(&[Cyclotomic::root_of_unity(1, 8), Cyclotomic::one()]).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn display_is_readable() {
        let p = t(0).mul_poly(&t(1)).neg().add(&LaurentPoly::constant(5)).add(&t(1).bar().scale(&BigInt::from(2)));
        assert_eq!(p.to_string(), "-t1*t2 + 5 + 2*t2^-1");
    }
}
