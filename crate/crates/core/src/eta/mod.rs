//! Rho-invariants and signatures of Seifert matrices twisted by unitary
//! representations.
//!
//! For a Seifert matrix `A` with sign `eps` and images `U_i = alpha(t_i)`,
//! let `T = diag(id_{2g_1} ⊗ U_1, ..., id_{2g_m} ⊗ U_m)` and replace every
//! entry `a` of `A` by `a · id_k`. Then
//!
//! ```text
//! B = A - eps T A^t T^{-1} - A T^{-1} + eps T A^t,     M = sqrt(-eps) B,
//! rho = eps sum_i sign_i sum_j eta(z_ij) + sign(M),
//! ```
//!
//! where `sign_i` is the pairing signature of component `i` and `z_ij` are
//! the eigenvalues of `U_i`.

mod forms;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{
    classify, classify_float, signature_float, signature_with, Backend, Conjugate, Cyclotomic,
    Hermiticity, Inertia, Matrix, Rational, Ring, RootOfUnity,
};
use crate::error::{Error, Result};
use crate::reps::{eigen_angles, float_eigenvalues, Eigenvalue, UnitaryTuple};
use crate::seifert::SeifertMatrix;
use crate::Mode;

pub use forms::{sigma_f, FormTuple};

/// Tolerances and switches shared by the signature computations.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Replace a non-hermitian `M` by `(M + M^†)/2` instead of failing.
    pub hermitize: bool,
    /// Relative tolerance for float hermiticity and zero eigenvalues.
    pub tol: f64,
    pub backend: Backend,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            hermitize: false,
            tol: 1e-9,
            backend: Backend::Certified,
        }
    }
}

/// An exact rational or a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Value::Exact(Rational::from_integer(n.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Float(x) => *x,
        }
    }

    /// Zero exactly, or within `tol` for floats.
    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Float(x) => x.abs() <= tol,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    /// The integer value when exact and integral.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Value::Exact(q) if q.is_integer() => q.to_integer().to_i64(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn scale(&self, n: i64) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a * Rational::from_integer(n.into())),
            Value::Float(x) => Value::Float(x * n as f64),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `eta(e^{2 pi i a}) = 0` for `a = 0`, `1 - 2a` for `0 < a < 1`.
pub fn eta_root(z: RootOfUnity) -> Rational {
    let a = z.angle_rational();
    if a.is_zero() {
        Rational::zero()
    } else {
        Rational::from_integer(1.into()) - a * Rational::from_integer(2.into())
    }
}

/// Float version; angles within `tol` of `0` (mod 1) count as `z = 1`.
pub fn eta_complex(z: Complex64, tol: f64) -> Result<f64> {
    if !((z.norm() - 1.0).abs() <= tol.max(1e-12)) {
        return Err(Error::NotUnitModulus(format!("{z}")));
    }
    let mut a = z.arg() / (2.0 * std::f64::consts::PI);
    if a < 0.0 {
        a += 1.0;
    }
    if a <= tol || 1.0 - a <= tol {
        return Ok(0.0);
    }
    Ok(1.0 - 2.0 * a)
}

pub fn eta_circle(z: &Eigenvalue, tol: f64) -> Result<Value> {
    match z {
        Eigenvalue::Exact(r) => Ok(Value::Exact(eta_root(*r))),
        Eigenvalue::Float(c) => Ok(Value::Float(eta_complex(*c, tol)?)),
    }
}

/// The twisted matrix before the `sqrt(-eps)` normalization.
#[derive(Clone, Debug, PartialEq)]
pub enum Assembled {
    Exact(Matrix<Cyclotomic>),
    Float(Matrix<Complex64>),
}

impl Assembled {
    pub fn dim(&self) -> usize {
        match self {
            Assembled::Exact(m) => m.dim(),
            Assembled::Float(m) => m.dim(),
        }
    }
}

fn check_components(a: &SeifertMatrix, alpha: &UnitaryTuple) -> Result<()> {
    if a.components() != alpha.m() {
        return Err(Error::ComponentMismatch {
            matrix: a.components(),
            rep: alpha.m(),
        });
    }
    Ok(())
}

/// Block `(r, c)` of `B` (rows of component `i`, columns of component `j`)
/// is `a_rc (1 - U_j^{-1}) + eps a_cr U_i (1 - U_j^{-1})`.
fn assemble_generic<S: Ring + Conjugate>(a: &SeifertMatrix, mats: &[Matrix<S>]) -> Matrix<S> {
    let k = mats.first().map(|u| u.rows()).unwrap_or(0);
    let n = a.dim();
    let m = a.components();
    let eps = a.epsilon() as i64;
    let comp: Vec<usize> = (0..n).map(|r| a.component_of(r)).collect();
    let id = Matrix::<S>::identity(k);
    let x: Vec<Matrix<S>> = mats.iter().map(|u| id.sub(&u.adjoint())).collect();
    let y: Vec<Vec<Matrix<S>>> = (0..m)
        .map(|i| (0..m).map(|j| mats[i].mul(&x[j])).collect())
        .collect();
    let e = a.entries();
    let mut out = Matrix::zeros(n * k, n * k);
    for r in 0..n {
        for c in 0..n {
            let (i, j) = (comp[r], comp[c]);
            let (arc, acr) = (e[(r, c)], eps * e[(c, r)]);
            if arc == 0 && acr == 0 {
                continue;
            }
            for p in 0..k {
                for q in 0..k {
                    let v = x[j][(p, q)].scale_i64(arc).add(&y[i][j][(p, q)].scale_i64(acr));
                    out[(r * k + p, c * k + q)] = v;
                }
            }
        }
    }
    out
}

/// `B = A - eps T A^t T^{-1} - A T^{-1} + eps T A^t` with `A` as the outer
/// Kronecker factor.
pub fn assemble_m(a: &SeifertMatrix, alpha: &UnitaryTuple) -> Result<Assembled> {
    check_components(a, alpha)?;
    Ok(match alpha.exact_matrices() {
        Some(mats) => Assembled::Exact(assemble_generic(a, mats)),
        None => Assembled::Float(assemble_generic(a, &alpha.float_matrices())),
    })
}

/// Signature of `M(A, U)` together with its singularity status.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaResult {
    pub inertia: Inertia,
    pub sign: i64,
    /// `det M = 0` (exact), or an eigenvalue inside the tolerance band (float).
    pub singular: bool,
    pub mode: Mode,
    pub hermitized: bool,
}

fn sqrt_neg_eps(eps: i8) -> Cyclotomic {
    if eps == -1 {
        Cyclotomic::one()
    } else {
        Cyclotomic::root_of_unity(1, 4)
    }
}

/// Inertia of a matrix that should be hermitian.
pub(crate) fn hermitian_signature(m: Matrix<Cyclotomic>, opts: &EvalOptions) -> Result<SigmaResult> {
    let (h, hermitized) = match classify(&m) {
        Hermiticity::Hermitian => (m, false),
        _ if opts.hermitize => {
            let half = Cyclotomic::from_rational(&Rational::new(1.into(), 2.into()));
            (m.add(&m.adjoint()).scale(&half), true)
        }
        _ => return Err(Error::NotHermitian),
    };
    let inertia = signature_with(&h, opts.backend)?;
    Ok(SigmaResult {
        inertia,
        sign: inertia.sign(),
        singular: inertia.is_singular(),
        mode: Mode::Exact,
        hermitized,
    })
}

pub(crate) fn hermitian_signature_float(m: Matrix<Complex64>, opts: &EvalOptions) -> Result<SigmaResult> {
    let (h, hermitized) = match classify_float(&m, opts.tol) {
        Hermiticity::Hermitian => (m, false),
        _ if opts.hermitize => (m.add(&m.adjoint()).scale(&Complex64::new(0.5, 0.0)), true),
        _ => return Err(Error::NotHermitian),
    };
    let f = signature_float(&h, opts.tol)?;
    Ok(SigmaResult {
        inertia: f.inertia,
        sign: f.inertia.sign(),
        singular: f.indeterminate,
        mode: Mode::Float,
        hermitized,
    })
}

/// `sigma(A, U) = sign(sqrt(-eps) B)`.
pub fn sigma(a: &SeifertMatrix, alpha: &UnitaryTuple, opts: &EvalOptions) -> Result<SigmaResult> {
    let s = sqrt_neg_eps(a.epsilon());
    match assemble_m(a, alpha)? {
        Assembled::Exact(b) => hermitian_signature(b.scale(&s), opts),
        Assembled::Float(b) => hermitian_signature_float(b.scale(&s.to_complex()), opts),
    }
}

/// Whether `alpha` lies in the singular set, i.e. `det M(A, U) = 0`.
///
/// Exact tuples are decided exactly; float tuples compare the smallest
/// singular value with `tol · max(1, max |M_ij|)`.
pub fn singular_set_test(a: &SeifertMatrix, alpha: &UnitaryTuple, opts: &EvalOptions) -> Result<bool> {
    match assemble_m(a, alpha)? {
        Assembled::Exact(b) => {
            let m = b.scale(&sqrt_neg_eps(a.epsilon()));
            if classify(&m) == Hermiticity::Hermitian {
                Ok(signature_with(&m, opts.backend)?.is_singular())
            } else {
                Ok(b.det_bareiss().is_zero())
            }
        }
        Assembled::Float(b) => {
            let n = b.dim();
            if n == 0 {
                return Ok(false);
            }
            let scale = b.entries().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
            let dm = DMatrix::from_fn(n, n, |r, c| b[(r, c)]);
            let sv = dm.singular_values();
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            Ok(smin <= opts.tol * scale)
        }
    }
}

/// Result of the rho-invariant formula.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoResult {
    /// `eps sum_i sign_i sum_j eta(z_ij)`.
    pub first_term: Value,
    /// `sign(M)`.
    pub signature_term: i64,
    pub total: Value,
    pub mode: Mode,
    /// The Seifert matrix violates an axiom.
    pub relaxed: bool,
    pub singular: bool,
    pub hermitized: bool,
    pub inertia: Inertia,
}

fn first_term(a: &SeifertMatrix, eigen: impl Fn(usize) -> Vec<Eigenvalue>, tol: f64) -> Result<Value> {
    let mut acc = Value::zero();
    for i in 0..a.components() {
        let s = a.pairing_signature(i)?;
        if s == 0 {
            continue;
        }
        let mut sum = Value::zero();
        for z in eigen(i) {
            sum = sum.add(&eta_circle(&z, tol)?);
        }
        acc = acc.add(&sum.scale(s));
    }
    Ok(acc.scale(a.epsilon() as i64))
}

fn float_eigen(alpha: &UnitaryTuple, i: usize) -> Vec<Eigenvalue> {
    float_eigenvalues(&alpha.float_matrices()[i])
}

/// The rho-invariant `rho(M_L, phi)(alpha)`; `epsilon` overrides the sign
/// stored in `a` when given.
pub fn rho(
    a: &SeifertMatrix,
    alpha: &UnitaryTuple,
    epsilon: Option<i8>,
    opts: &EvalOptions,
) -> Result<RhoResult> {
    let owned;
    let a = match epsilon {
        Some(e) if e != a.epsilon() => {
            owned = a.with_epsilon(e)?;
            &owned
        }
        _ => a,
    };
    check_components(a, alpha)?;
    let first = first_term(
        a,
        |i| match alpha.exact_matrices() {
            Some(m) => eigen_angles(&m[i]),
            None => float_eigen(alpha, i),
        },
        opts.tol,
    )?;
    let sig = sigma(a, alpha, opts)?;
    let mode = if first.is_exact() && sig.mode == Mode::Exact {
        Mode::Exact
    } else {
        Mode::Float
    };
    let total = first.add(&Value::from_int(sig.sign));
    Ok(RhoResult {
        first_term: first,
        signature_term: sig.sign,
        total,
        mode,
        relaxed: a.is_relaxed(),
        singular: sig.singular,
        hermitized: sig.hermitized,
        inertia: sig.inertia,
    })
}

/// `rho` for one-dimensional representations `t_i -> z_i`, assembling the
/// scalar matrix `B(1 - Z^{-1}) + eps Z B^t (1 - Z^{-1})` directly over a
/// single cyclotomic field.
pub fn abelian_rho(a: &SeifertMatrix, z: &[RootOfUnity], opts: &EvalOptions) -> Result<RhoResult> {
    if a.components() != z.len() {
        return Err(Error::ComponentMismatch {
            matrix: a.components(),
            rep: z.len(),
        });
    }
    let eps = a.epsilon() as i64;
    let mut order: u64 = z.iter().fold(1, |acc, r| num_integer::lcm(acc, r.order()));
    if eps == 1 {
        order = num_integer::lcm(order, 4);
    }
    let expo: Vec<i64> = z
        .iter()
        .map(|r| {
            let (p, q) = r.angle();
            (p * (order / q)) as i64
        })
        .collect();
    let n = a.dim();
    let comp: Vec<usize> = (0..n).map(|r| a.component_of(r)).collect();
    let e = a.entries();
    let shift = if eps == 1 { (order / 4) as i64 } else { 0 };
    let o = order as i64;
    let m = Matrix::from_fn(n, n, |r, c| {
        let (i, j) = (comp[r], comp[c]);
        let (arc, acr) = (e[(r, c)], eps * e[(c, r)]);
        // a_rc (1 - z_j^{-1}) + eps a_cr (z_i - z_i z_j^{-1}), times sqrt(-eps)
        let mut coeffs = vec![0i64; order as usize];
        let mut put = |exp: i64, c: i64| coeffs[(exp + shift).rem_euclid(o) as usize] += c;
        put(0, arc);
        put(-expo[j], -arc);
        put(expo[i], acr);
        put(expo[i] - expo[j], -acr);
        Cyclotomic::from_int_coeffs(order as u32, &coeffs)
    });
    let sig = hermitian_signature(m, opts)?;
    let first = first_term(a, |i| vec![Eigenvalue::Exact(z[i])], opts.tol)?;
    let total = first.add(&Value::from_int(sig.sign));
    Ok(RhoResult {
        first_term: first,
        signature_term: sig.sign,
        total,
        mode: Mode::Exact,
        relaxed: a.is_relaxed(),
        singular: sig.singular,
        hermitized: sig.hermitized,
        inertia: sig.inertia,
    })
}

/// Integer value of a result whose total is known to be integral.
pub fn integral_total(r: &RhoResult) -> Option<i64> {
    r.total.as_integer().or_else(|| {
        let x = r.total.to_f64();
        let n = x.round();
        ((x - n).abs() < 1e-6 && n.abs() < 1e15).then_some(n as i64)
    })
}

/// Sign of a rational, for callers that need `-1, 0, 1`.
pub fn rational_sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
