use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{Cyclotomic, Matrix, RootOfUnity};

/// An eigenvalue of a unitary matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(RootOfUnity),
    /// A point on the unit circle from the float solver.
    Float(Complex64),
}

impl Eigenvalue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Eigenvalue::Exact(r) => r.to_complex(),
            Eigenvalue::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Eigenvalue::Exact(_))
    }
}

/// Eigenvalues of an exact unitary matrix.
///
/// Monomial matrices are handled exactly: a cycle of length `c` whose
/// entries multiply to the root of unity `w` contributes the `c` roots of
/// `x^c = w`. Anything else goes through the float solver.
pub fn eigen_angles(u: &Matrix<Cyclotomic>) -> Vec<Eigenvalue> {
    if let Some(ex) = monomial_eigenvalues(u) {
        return ex.into_iter().map(Eigenvalue::Exact).collect();
    }
    float_eigenvalues(&u.map(Cyclotomic::to_complex))
}

fn monomial_eigenvalues(u: &Matrix<Cyclotomic>) -> Option<Vec<RootOfUnity>> {
    if !u.is_monomial() {
        return None;
    }
    let n = u.dim();
    // column j has its entry in row target[j]
    let target: Vec<usize> = (0..n)
        .map(|j| (0..n).find(|&r| !u[(r, j)].is_zero()).expect("monomial column"))
        .collect();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut w = RootOfUnity::one();
        let mut c = 0u64;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            w = w.mul(&u[(target[j], j)].as_root_of_unity()?);
            j = target[j];
            c += 1;
        }
        let (a, d) = w.angle();
        // roots of x^c = e(a/d) are e((a + t d) / (c d))
        for t in 0..c {
            out.push(RootOfUnity::new((a + t * d) as i64, c * d));
        }
    }
    out.sort();
    Some(out)
}

/// Eigenvalues of a float unitary, projected back onto the unit circle.
pub fn float_eigenvalues(u: &Matrix<Complex64>) -> Vec<Eigenvalue> {
    let n = u.dim();
    if n == 0 {
        return Vec::new();
    }
    let dm = DMatrix::from_fn(n, n, |r, c| u[(r, c)]);
    let eig = nalgebra::Schur::new(dm).eigenvalues().expect("complex Schur form is triangular");
    eig.iter()
        .map(|z| {
            let r = z.norm();
            Eigenvalue::Float(if r > 0.0 { z / r } else { Complex64::new(1.0, 0.0) })
        })
        .collect()
}
