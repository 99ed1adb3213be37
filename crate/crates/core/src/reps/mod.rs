//! Unitary representations of free groups and finite groups.
//!
//! A representation of the free group `F_m` is determined by the images
//! `U_i = alpha(t_i)` of its generators, stored as a [`UnitaryTuple`].

mod closure;
mod eigen;
mod group;

use num_complex::Complex64;

use crate::algebra::{Cyclotomic, Matrix, RootOfUnity};
use crate::error::{Error, Result};
use crate::Mode;

pub use closure::{closure, Closure, MatrixGroup, DEFAULT_CLOSURE_BOUND};
pub use eigen::{eigen_angles, float_eigenvalues, Eigenvalue};
pub use group::{induce, FiniteGroup, FiniteRep};

/// Default tolerance for unitarity checks of floating-point matrices.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
enum Images {
    Exact(Vec<Matrix<Cyclotomic>>),
    Float(Vec<Matrix<Complex64>>),
}

/// Images `(U_1, ..., U_m)` of the free generators, all `k x k` unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryTuple {
    k: usize,
    images: Images,
}

fn common_dim<S>(mats: &[Matrix<S>]) -> Result<usize> {
    let mut k = None;
    for (i, u) in mats.iter().enumerate() {
        let d = u.ensure_square()?;
        match k {
            None => k = Some(d),
            Some(k0) if k0 != d => {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} is {d}x{d}, expected {k0}x{k0}",
                    i + 1
                )))
            }
            _ => {}
        }
    }
    k.ok_or_else(|| Error::Invalid("a representation needs at least one matrix".into()))
}

/// Largest entry of `|U^† U - I|`, evaluated in floating point.
fn unitary_deviation(u: &Matrix<Complex64>) -> f64 {
    let p = u.adjoint().mul(u);
    let n = p.dim();
    let mut dev = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let target = if r == c { 1.0 } else { 0.0 };
            dev = dev.max((p[(r, c)] - Complex64::new(target, 0.0)).norm());
        }
    }
    dev
}

pub fn to_complex_matrix(u: &Matrix<Cyclotomic>) -> Matrix<Complex64> {
    u.map(Cyclotomic::to_complex)
}

impl UnitaryTuple {
    /// Exact tuple; unitarity `U^† U = I` is checked exactly.
    pub fn exact(matrices: Vec<Matrix<Cyclotomic>>) -> Result<Self> {
        let k = common_dim(&matrices)?;
        for (i, u) in matrices.iter().enumerate() {
            if u.adjoint().mul(u) != Matrix::identity(k) {
                return Err(Error::NotUnitary {
                    index: i + 1,
                    deviation: unitary_deviation(&to_complex_matrix(u)),
                });
            }
        }
        Ok(Self {
            k,
            images: Images::Exact(matrices),
        })
    }

    /// Floating-point tuple; unitarity is checked to within `tol`.
    pub fn float(matrices: Vec<Matrix<Complex64>>, tol: f64) -> Result<Self> {
        let k = common_dim(&matrices)?;
        for (i, u) in matrices.iter().enumerate() {
            if u.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Invalid(format!("matrix {} has non-finite entries", i + 1)));
            }
            let dev = unitary_deviation(u);
            if dev > tol {
                return Err(Error::NotUnitary {
                    index: i + 1,
                    deviation: dev,
                });
            }
        }
        Ok(Self {
            k,
            images: Images::Float(matrices),
        })
    }

    /// One-dimensional tuple `(z_1, ..., z_m)`.
    pub fn scalars(z: &[RootOfUnity]) -> Self {
        let mats = z
            .iter()
            .map(|r| Matrix::from_vec(1, 1, vec![r.to_cyclotomic()]).expect("1x1"))
            .collect();
        Self {
            k: 1,
            images: Images::Exact(mats),
        }
    }

    /// All `U_i = id_k`.
    pub fn trivial(m: usize, k: usize) -> Self {
        Self {
            k,
            images: Images::Exact(vec![Matrix::identity(k); m]),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        match &self.images {
            Images::Exact(v) => v.len(),
            Images::Float(v) => v.len(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self.images {
            Images::Exact(_) => Mode::Exact,
            Images::Float(_) => Mode::Float,
        }
    }

    pub fn exact_matrices(&self) -> Option<&[Matrix<Cyclotomic>]> {
        match &self.images {
            Images::Exact(v) => Some(v),
            Images::Float(_) => None,
        }
    }

    /// Floating-point images (converted when the tuple is exact).
    pub fn float_matrices(&self) -> Vec<Matrix<Complex64>> {
        match &self.images {
            Images::Exact(v) => v.iter().map(to_complex_matrix).collect(),
            Images::Float(v) => v.clone(),
        }
    }

    /// The same representation in floating point.
    pub fn to_float(&self) -> Self {
        Self {
            k: self.k,
            images: Images::Float(self.float_matrices()),
        }
    }

    /// Conjugates every image by a fixed unitary: `U_i -> g U_i g^{-1}`.
    pub fn conjugate_by(&self, g: &Matrix<Cyclotomic>) -> Result<Self> {
        let ginv = g.adjoint();
        match &self.images {
            Images::Exact(v) => Self::exact(v.iter().map(|u| g.mul(u).mul(&ginv)).collect()),
            Images::Float(v) => {
                let gf = to_complex_matrix(g);
                let gi = gf.adjoint();
                Self::float(v.iter().map(|u| gf.mul(u).mul(&gi)).collect(), 1e-8)
            }
        }
    }

    /// Complex conjugate of every entry.
    pub fn conj(&self) -> Self {
        let images = match &self.images {
            Images::Exact(v) => Images::Exact(v.iter().map(Matrix::conj).collect()),
            Images::Float(v) => Images::Float(v.iter().map(Matrix::conj).collect()),
        };
        Self { k: self.k, images }
    }

    /// Image of a word in the generators; `(i, e)` stands for `t_i^e`, 0-based.
    pub fn eval_word(&self, word: &[(usize, i32)]) -> Result<Matrix<Cyclotomic>> {
        let mats = self
            .exact_matrices()
            .ok_or(Error::MixedModes)?;
        let mut acc = Matrix::identity(self.k);
        for &(i, e) in word {
            let u = mats.get(i).ok_or_else(|| {
                Error::IndexOutOfRange(format!("generator {} of {}", i + 1, mats.len()))
            })?;
            let base = if e < 0 { u.adjoint() } else { u.clone() };
            acc = acc.mul(&base.pow(e.unsigned_abs() as u64));
        }
        Ok(acc)
    }
}

/// Data for one element of `PD_p(k)`: the permutation sends basis vector
/// `j` to `perm[j]`, and the matrix is `P · diag(diag)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdpSpec {
    pub perm: Vec<usize>,
    pub diag: Vec<RootOfUnity>,
}

impl PdpSpec {
    pub fn identity(k: usize) -> Self {
        Self {
            perm: (0..k).collect(),
            diag: vec![RootOfUnity::one(); k],
        }
    }
}

pub fn is_prime_power_of(n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Order of a permutation given as an image vector.
pub fn permutation_order(perm: &[usize]) -> u64 {
    use num_integer::Integer;
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// Monomial matrix `P · D` of `PD_p(k)`.
pub fn pdp_element(p: u64, spec: &PdpSpec) -> Result<Matrix<Cyclotomic>> {
    let k = spec.perm.len();
    if spec.diag.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "permutation on {k} points with {} diagonal entries",
            spec.diag.len()
        )));
    }
    let mut hit = vec![false; k];
    for &x in &spec.perm {
        if x >= k || std::mem::replace(&mut hit[x], true) {
            return Err(Error::Invalid(format!("{:?} is not a permutation", spec.perm)));
        }
    }
    let po = permutation_order(&spec.perm);
    if !is_prime_power_of(po, p) {
        return Err(Error::NotPrimePower {
            what: "permutation".into(),
            order: po,
            p,
        });
    }
    for d in &spec.diag {
        if !is_prime_power_of(d.order(), p) {
            return Err(Error::NotPrimePower {
                what: format!("diagonal entry {d}"),
                order: d.order(),
                p,
            });
        }
    }
    let mut m = Matrix::zeros(k, k);
    for j in 0..k {
        m[(spec.perm[j], j)] = spec.diag[j].to_cyclotomic();
    }
    Ok(m)
}

/// The tuple factoring through `F/F_2`: `U_1` is the weighted cyclic shift
/// with `U_1 e_j = z_{j+1} e_{j+1}` (indices mod `k`) and
/// `U_i = diag(chi(t_i), chi(t_1 t_i), ..., chi(t_1^{k-1} t_i))` for `i >= 2`.
/// `chi[i]` is the character value `chi(t_{i+1})`.
pub fn ff2_rep(k: usize, z: &[RootOfUnity], chi: &[RootOfUnity]) -> Result<UnitaryTuple> {
    if k == 0 || z.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "need k = {k} >= 1 weights, got {}",
            z.len()
        )));
    }
    if chi.is_empty() {
        return Err(Error::Invalid("character needs at least one value".into()));
    }
    for (i, c) in chi.iter().enumerate() {
        if c.pow(k as i64) != RootOfUnity::one() {
            return Err(Error::CharacterConstraint { index: i + 1, k });
        }
    }
    let mut u1 = Matrix::zeros(k, k);
    for j in 0..k {
        u1[((j + 1) % k, j)] = z[j].to_cyclotomic();
    }
    let mut mats = vec![u1];
    for c in &chi[1..] {
        let diag: Vec<Cyclotomic> = (0..k)
            .map(|r| c.mul(&chi[0].pow(r as i64)).to_cyclotomic())
            .collect();
        mats.push(Matrix::diagonal(&diag));
    }
    UnitaryTuple::exact(mats)
}

/// Precomposition with `t_i -> t_j t_i t_j^{-1}` (0-based `i != j`):
/// replaces `U_i` by `U_j U_i U_j^{-1}`.
pub fn ca_precompose(alpha: &UnitaryTuple, i: usize, j: usize) -> Result<UnitaryTuple> {
    let m = alpha.m();
    if i >= m || j >= m || i == j {
        return Err(Error::IndexOutOfRange(format!(
            "need distinct generators below {m}, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let mut out = alpha.clone();
    match &mut out.images {
        Images::Exact(v) => {
            let uj = v[j].clone();
            v[i] = uj.mul(&v[i]).mul(&uj.adjoint());
        }
        Images::Float(v) => {
            let uj = v[j].clone();
            v[i] = uj.mul(&v[i]).mul(&uj.adjoint());
        }
    }
    Ok(out)
}
