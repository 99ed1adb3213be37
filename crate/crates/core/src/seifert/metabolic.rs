use num_traits::Signed;
use rand::Rng;

use super::{offsets, SeifertMatrix};
use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// Block-diagonal change of basis `P = diag(P_1, ..., P_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolicCertificate {
    pub blocks: Vec<Matrix<i64>>,
}

impl MetabolicCertificate {
    pub fn new(blocks: Vec<Matrix<i64>>) -> Self {
        Self { blocks }
    }

    pub fn identity(sizes: &[usize]) -> Self {
        Self::new(sizes.iter().map(|g| Matrix::identity(2 * g)).collect())
    }
}

pub(crate) fn block_diag_checked(a: &SeifertMatrix, p: &[Matrix<i64>]) -> Result<Matrix<i64>> {
    if p.len() != a.components() {
        return Err(Error::DimensionMismatch(format!(
            "certificate has {} blocks for {} components",
            p.len(),
            a.components()
        )));
    }
    for (i, (pi, g)) in p.iter().zip(a.sizes()).enumerate() {
        if pi.rows() != 2 * g || pi.cols() != 2 * g {
            return Err(Error::DimensionMismatch(format!(
                "certificate block {} is {}x{}, expected {}x{}",
                i + 1,
                pi.rows(),
                pi.cols(),
                2 * g,
                2 * g
            )));
        }
        let det = pi.det_int();
        if det.abs() != num_bigint::BigInt::from(1) {
            return Err(Error::NotUnimodular {
                index: i + 1,
                det: det.to_string(),
            });
        }
    }
    Ok(Matrix::block_diagonal(p))
}

/// Checks that every `P_i A_ij P_j^t` has a zero upper-left `g_i x g_j` corner.
pub fn verify_metabolic(a: &SeifertMatrix, cert: &MetabolicCertificate) -> Result<bool> {
    let big = block_diag_checked(a, &cert.blocks)?;
    let t = big.mul(a.entries()).mul(&big.transpose());
    Ok(corners_vanish(&t, a.sizes()))
}

fn corners_vanish(t: &Matrix<i64>, sizes: &[usize]) -> bool {
    let off = offsets(sizes);
    for (i, gi) in sizes.iter().enumerate() {
        for (j, gj) in sizes.iter().enumerate() {
            for r in 0..*gi {
                for c in 0..*gj {
                    if t[(off[i] + r, off[j] + c)] != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `A ⊕_c (-A)` together with its diagonal Lagrangian certificate.
///
/// In component `i` the doubled basis is `e_1..e_{2g_i}, f_1..f_{2g_i}`;
/// `P_i = [[I, I], [0, I]]` sends the first half to the vectors `e_s + f_s`,
/// on which the form vanishes identically.
pub fn doubled_certificate(a: &SeifertMatrix) -> (SeifertMatrix, MetabolicCertificate) {
    let b = a.block_sum(&a.negate()).expect("same shape and epsilon");
    let blocks = a
        .sizes()
        .iter()
        .map(|g| {
            let n = 2 * g;
            Matrix::from_fn(2 * n, 2 * n, |r, c| i64::from(r == c || (r < n && c == r + n)))
        })
        .collect();
    (b, MetabolicCertificate::new(blocks))
}

/// Bounded random search for a certificate with entries in `[-bound, bound]`.
/// Returns the first certificate that works; `None` says nothing about
/// whether `A` is metabolic.
pub fn random_certificate_search<R: Rng>(
    a: &SeifertMatrix,
    trials: usize,
    bound: i64,
    rng: &mut R,
) -> Option<MetabolicCertificate> {
    for _ in 0..trials {
        let blocks: Vec<Matrix<i64>> = a
            .sizes()
            .iter()
            .map(|g| random_unimodular(2 * g, bound, rng))
            .collect();
        let cert = MetabolicCertificate::new(blocks);
        if verify_metabolic(a, &cert).unwrap_or(false) {
            return Some(cert);
        }
    }
    None
}

/// Uniformly random integer matrix with entries in `[-bound, bound]`,
/// resampled until its determinant is `±1`.
pub fn random_unimodular<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Matrix<i64> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rng.random_range(-bound..=bound));
        if m.det_int().abs() == num_bigint::BigInt::from(1) {
            return m;
        }
    }
}
