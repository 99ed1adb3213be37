//! Inertia of hermitian and skew-hermitian matrices.
//!
//! Exact matrices go through a certified path first: entries are enclosed in
//! complex balls and reduced by congruence with 1x1 and 2x2 pivots whose signs
//! are proven by the enclosures. If any pivot cannot be certified (typically a
//! singular matrix) the computation falls back to exact Lagrange reduction in
//! the cyclotomic field, so the result never depends on a tolerance.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ball::{enclose, Ball};
use super::cyclotomic::{Cyclotomic, Rational};
use super::matrix::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hermiticity {
    Hermitian,
    SkewHermitian,
    Neither,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(pos: usize, neg: usize, zero: usize) -> Self {
        Self { pos, neg, zero }
    }

    /// `pos - neg`.
    pub fn sign(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn is_singular(&self) -> bool {
        self.zero > 0
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;
    fn add(self, o: Inertia) -> Inertia {
        Inertia::new(self.pos + o.pos, self.neg + o.neg, self.zero + o.zero)
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

/// Strategy for exact inputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// Certified enclosures with exact fallback.
    #[default]
    Certified,
    /// Pure exact congruence reduction.
    Exact,
}

/// Inertia from the floating-point backend. `zero` counts eigenvalues inside
/// the tolerance band; when it is positive the result is flagged
/// indeterminate instead of guessing their signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloatInertia {
    pub inertia: Inertia,
    pub indeterminate: bool,
}

pub fn classify(m: &Matrix<Cyclotomic>) -> Hermiticity {
    if !m.is_square() {
        return Hermiticity::Neither;
    }
    let n = m.dim();
    let mut herm = true;
    let mut skew = true;
    for r in 0..n {
        for c in r..n {
            let a = &m[(r, c)];
            let b = m[(c, r)].conj();
            if herm && *a != b {
                herm = false;
            }
            if skew && *a != -&b {
                skew = false;
            }
            if !herm && !skew {
                return Hermiticity::Neither;
            }
        }
    }
    if herm {
        Hermiticity::Hermitian
    } else {
        Hermiticity::SkewHermitian
    }
}

/// Classification with a relative tolerance on `max |M - ±M^†|`.
pub fn classify_float(m: &Matrix<Complex64>, tol: f64) -> Hermiticity {
    if !m.is_square() {
        return Hermiticity::Neither;
    }
    let n = m.dim();
    let scale = m.entries().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let (mut dh, mut ds) = (0.0f64, 0.0f64);
    for r in 0..n {
        for c in 0..n {
            let a = m[(r, c)];
            let b = m[(c, r)].conj();
            dh = dh.max((a - b).norm());
            ds = ds.max((a + b).norm());
        }
    }
    if dh <= tol * scale {
        Hermiticity::Hermitian
    } else if ds <= tol * scale {
        Hermiticity::SkewHermitian
    } else {
        Hermiticity::Neither
    }
}

/// Inertia of a hermitian matrix, or of `i·M` for skew-hermitian `M`.
pub fn signature(m: &Matrix<Cyclotomic>) -> Result<Inertia> {
    signature_with(m, Backend::Certified)
}

pub fn signature_with(m: &Matrix<Cyclotomic>, backend: Backend) -> Result<Inertia> {
    let h = hermitian_part_for(m)?;
    let (h, stripped) = strip_zero_rows(&h);
    let base = Inertia::new(0, 0, stripped);
    if h.dim() == 0 {
        return Ok(base);
    }
    if backend == Backend::Certified {
        if let Some(i) = certified_inertia(&h) {
            return Ok(base + i);
        }
    }
    Ok(base + exact_inertia(h))
}

pub fn signature_rational(m: &Matrix<Rational>) -> Result<Inertia> {
    signature(&m.map(Cyclotomic::from_rational))
}

pub fn signature_int(m: &Matrix<i64>) -> Result<Inertia> {
    signature(&m.map(|&x| Cyclotomic::from_integer(x)))
}

fn hermitian_part_for(m: &Matrix<Cyclotomic>) -> Result<Matrix<Cyclotomic>> {
    m.ensure_square()?;
    match classify(m) {
        Hermiticity::Hermitian => Ok(m.clone()),
        Hermiticity::SkewHermitian => {
            let i = Cyclotomic::root_of_unity(1, 4);
            Ok(m.map(|z| &i * z))
        }
        Hermiticity::Neither => Err(Error::NotHermitian),
    }
}

/// Removes rows (and the matching columns) that are identically zero.
fn strip_zero_rows(m: &Matrix<Cyclotomic>) -> (Matrix<Cyclotomic>, usize) {
    let n = m.dim();
    let keep: Vec<usize> = (0..n)
        .filter(|&r| (0..n).any(|c| !m[(r, c)].is_zero()))
        .collect();
    if keep.len() == n {
        return (m.clone(), 0);
    }
    (m.principal(&keep), n - keep.len())
}

/// Ball-arithmetic congruence reduction. Returns `None` when some pivot
/// cannot be certified, including whenever the matrix is singular.
fn certified_inertia(m: &Matrix<Cyclotomic>) -> Option<Inertia> {
    let n = m.dim();
    let mut h: Vec<Vec<Ball>> = (0..n)
        .map(|r| (0..n).map(|c| enclose(&m[(r, c)])).collect())
        .collect();
    ball_ldl(&mut h)
}

/// Certified inertia of a hermitian ball matrix (Bunch-Kaufman style pivots).
pub(crate) fn ball_ldl(h: &mut [Vec<Ball>]) -> Option<Inertia> {
    const ALPHA: f64 = 0.6404; // (1 + sqrt 17) / 8
    let n = h.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();
    while !active.is_empty() {
        // best diagonal and off-diagonal candidates by midpoint magnitude
        let (mut bd, mut bd_val) = (usize::MAX, -1.0);
        for &i in &active {
            let v = h[i][i].mid.re.abs();
            if v > bd_val && h[i][i].re_sign().is_some() {
                bd = i;
                bd_val = v;
            }
        }
        let (mut bp, mut bq, mut bo_val) = (usize::MAX, usize::MAX, -1.0);
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                let v = h[i][j].mid.norm();
                if v > bo_val {
                    bp = i;
                    bq = j;
                    bo_val = v;
                }
            }
        }
        let one_by_one = bd != usize::MAX && (bp == usize::MAX || bd_val >= ALPHA * bo_val);
        if one_by_one {
            let p = bd;
            let d = h[p][p];
            let s = d.re_sign()?;
            let dinv = d.inv()?;
            active.retain(|&x| x != p);
            for &i in &active {
                let f = h[i][p].mul(&dinv);
                for &j in &active {
                    let upd = f.mul(&h[p][j]);
                    h[i][j] = h[i][j].sub(&upd);
                }
            }
            if s > 0 {
                out.pos += 1;
            } else {
                out.neg += 1;
            }
            continue;
        }
        if bp == usize::MAX {
            return None;
        }
        let (p, q) = (bp, bq);
        let a = h[p][p];
        let b = h[p][q];
        let d = h[q][q];
        let det = a.mul(&d).sub(&b.mul(&b.conj()));
        let ds = det.re_sign()?;
        if ds < 0 {
            out.pos += 1;
            out.neg += 1;
        } else {
            match a.add(&d).re_sign()? {
                1 => out.pos += 2,
                _ => out.neg += 2,
            }
        }
        let dinv = det.inv()?;
        // E^{-1} = (1/det) [[d, -b], [-conj b, a]]
        let e00 = d.mul(&dinv);
        let e01 = b.neg().mul(&dinv);
        let e10 = b.conj().neg().mul(&dinv);
        let e11 = a.mul(&dinv);
        active.retain(|&x| x != p && x != q);
        for &i in &active {
            let (hip, hiq) = (h[i][p], h[i][q]);
            let l0 = hip.mul(&e00).add(&hiq.mul(&e10));
            let l1 = hip.mul(&e01).add(&hiq.mul(&e11));
            for &j in &active {
                let upd = l0.mul(&h[p][j]).add(&l1.mul(&h[q][j]));
                h[i][j] = h[i][j].sub(&upd);
            }
        }
    }
    Some(out)
}

/// Exact Lagrange reduction: pivot on the first active index; a nonzero
/// diagonal gives a 1x1 pivot, a zero diagonal with a nonzero entry in its
/// column gives a hyperbolic 2x2 pivot contributing `(1,1)`, and a zero row
/// contributes a zero eigenvalue.
pub fn exact_inertia(m: Matrix<Cyclotomic>) -> Inertia {
    let n = m.dim();
    let mut h = m.into_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();
    while let Some(&p) = active.first() {
        if !h[p][p].is_zero() {
            match h[p][p].real_sign() {
                Ordering::Greater => out.pos += 1,
                Ordering::Less => out.neg += 1,
                Ordering::Equal => unreachable!("nonzero hermitian diagonal is real and nonzero"),
            }
            let dinv = h[p][p].inv().expect("nonzero pivot");
            active.remove(0);
            for &i in &active {
                if h[i][p].is_zero() {
                    continue;
                }
                let f = &h[i][p] * &dinv;
                for &j in &active {
                    if !h[p][j].is_zero() {
                        let upd = &f * &h[p][j];
                        h[i][j] = &h[i][j] - &upd;
                    }
                }
            }
            continue;
        }
        let q = active[1..].iter().copied().find(|&q| !h[q][p].is_zero());
        let Some(q) = q else {
            out.zero += 1;
            active.remove(0);
            continue;
        };
        out.pos += 1;
        out.neg += 1;
        // E = [[0, b], [conj b, d]], E^{-1} = [[-d/|b|^2, 1/conj b], [1/b, 0]]
        let b = h[p][q].clone();
        let d = h[q][q].clone();
        let binv = b.inv().expect("nonzero off-diagonal");
        let bbar_inv = binv.conj();
        let e00 = -(&(&d * &binv) * &bbar_inv);
        active.retain(|&x| x != p && x != q);
        for &i in &active {
            let (hip, hiq) = (h[i][p].clone(), h[i][q].clone());
            if hip.is_zero() && hiq.is_zero() {
                continue;
            }
            let l0 = &(&hip * &e00) + &(&hiq * &binv);
            let l1 = &hip * &bbar_inv;
            for &j in &active {
                let upd = &(&l0 * &h[p][j]) + &(&l1 * &h[q][j]);
                if !upd.is_zero() {
                    h[i][j] = &h[i][j] - &upd;
                }
            }
        }
    }
    out
}

/// Floating-point inertia via a hermitian eigensolver. Eigenvalues with
/// `|lambda| <= tol * max(1, max|M_ij|)` are counted as indeterminate zeros.
pub fn signature_float(m: &Matrix<Complex64>, tol: f64) -> Result<FloatInertia> {
    let n = m.ensure_square()?;
    let h = match classify_float(m, tol) {
        Hermiticity::Hermitian => m.clone(),
        Hermiticity::SkewHermitian => m.map(|z| z * Complex64::new(0.0, 1.0)),
        Hermiticity::Neither => return Err(Error::NotHermitian),
    };
    if n == 0 {
        return Ok(FloatInertia {
            inertia: Inertia::default(),
            indeterminate: false,
        });
    }
    let scale = h.entries().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    // symmetrize to remove tolerance-level asymmetry before the solver
    let dm = DMatrix::from_fn(n, n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let eig = nalgebra::SymmetricEigen::new(dm);
    let mut out = Inertia::default();
    for &l in eig.eigenvalues.iter() {
        if l.abs() <= tol * scale {
            out.zero += 1;
        } else if l > 0.0 {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
    }
    Ok(FloatInertia {
        inertia: out,
        indeterminate: out.zero > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: Vec<Vec<Cyclotomic>>) -> Matrix<Cyclotomic> {
        Matrix::from_rows(rows).unwrap()
    }

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn classification() {
        let h = cm(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(classify(&h), Hermiticity::Hermitian);
        let s = cm(vec![vec![int(0), int(2)], vec![int(-2), int(0)]]);
        assert_eq!(classify(&s), Hermiticity::SkewHermitian);
        let n = cm(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        assert_eq!(classify(&n), Hermiticity::Neither);
        let z: Matrix<Cyclotomic> = Matrix::zeros(2, 2);
        assert_eq!(classify(&z), Hermiticity::Hermitian);
    }

    #[test]
    fn diagonal_inertia() {
        let m = Matrix::diagonal(&[int(5), int(-2), int(-2)]);
        for b in [Backend::Certified, Backend::Exact] {
            let i = signature_with(&m, b).unwrap();
            assert_eq!(i, Inertia::new(1, 2, 0));
            assert_eq!(i.sign(), -1);
        }
    }

    #[test]
    fn hyperbolic_complex_pair() {
        let one_plus_i = &int(1) + &Cyclotomic::root_of_unity(1, 4);
        let m = cm(vec![vec![int(0), one_plus_i.clone()], vec![one_plus_i.conj(), int(0)]]);
        assert_eq!(signature_with(&m, Backend::Exact).unwrap(), Inertia::new(1, 1, 0));
        assert_eq!(signature(&m).unwrap(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn empty_and_skew() {
        let e: Matrix<Cyclotomic> = Matrix::zeros(0, 0);
        assert_eq!(signature(&e).unwrap(), Inertia::default());
        let s = cm(vec![vec![int(0), int(2)], vec![int(-2), int(0)]]);
        assert_eq!(signature(&s).unwrap(), Inertia::new(1, 1, 0));
        let n = cm(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        assert_eq!(signature(&n), Err(Error::NotHermitian));
    }

    #[test]
    fn singular_matrices_use_exact_fallback() {
        // rank one: [[1,1],[1,1]]
        let m = cm(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert_eq!(signature(&m).unwrap(), Inertia::new(1, 0, 1));
        let f = signature_float(&m.map(|z| z.to_complex()), 1e-9).unwrap();
        assert!(f.indeterminate);
        assert_eq!(f.inertia, Inertia::new(1, 0, 1));
    }

    #[test]
    fn exact_zero_diagonal_chain() {
        // [[0,1,0],[1,0,1],[0,1,0]] has eigenvalues sqrt2, -sqrt2, 0
        let m = cm(vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ]);
        assert_eq!(exact_inertia(m.clone()), Inertia::new(1, 1, 1));
        assert_eq!(signature(&m).unwrap(), Inertia::new(1, 1, 1));
    }
}
