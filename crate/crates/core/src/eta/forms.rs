use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{EvalOptions, SigmaResult};
use crate::algebra::{
    signature_float, signature_with, Conjugate, Cyclotomic, Matrix, Ring,
};
use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;
use crate::Mode;

#[derive(Clone, Debug, PartialEq)]
enum Blocks {
    Exact(BTreeMap<(usize, usize), Matrix<Cyclotomic>>),
    Float(BTreeMap<(usize, usize), Matrix<Complex64>>),
}

/// Matrices `F_ij` of size `k_i x k_j` for `i <= j`. The lower blocks are
/// `F_ji = sqrt(-eps) conj(F_ij)^t`, filled in once the sign is known.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTuple {
    dims: Vec<usize>,
    blocks: Blocks,
}

fn check_blocks<S>(dims: &[usize], blocks: &BTreeMap<(usize, usize), Matrix<S>>) -> Result<()> {
    let m = dims.len();
    for i in 0..m {
        for j in i..m {
            let b = blocks
                .get(&(i, j))
                .ok_or_else(|| Error::DimensionMismatch(format!("missing block F_{},{}", i + 1, j + 1)))?;
            if b.rows() != dims[i] || b.cols() != dims[j] {
                return Err(Error::DimensionMismatch(format!(
                    "block F_{},{} is {}x{}, expected {}x{}",
                    i + 1,
                    j + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[j]
                )));
            }
        }
    }
    if let Some(&(i, j)) = blocks.keys().find(|&&(i, j)| i > j || j >= m) {
        return Err(Error::DimensionMismatch(format!("unexpected block F_{},{}", i + 1, j + 1)));
    }
    Ok(())
}

impl FormTuple {
    /// Exact blocks keyed by 0-based `(i, j)` with `i <= j`.
    pub fn exact(dims: Vec<usize>, blocks: BTreeMap<(usize, usize), Matrix<Cyclotomic>>) -> Result<Self> {
        check_blocks(&dims, &blocks)?;
        Ok(Self {
            dims,
            blocks: Blocks::Exact(blocks),
        })
    }

    pub fn float(dims: Vec<usize>, blocks: BTreeMap<(usize, usize), Matrix<Complex64>>) -> Result<Self> {
        check_blocks(&dims, &blocks)?;
        Ok(Self {
            dims,
            blocks: Blocks::Float(blocks),
        })
    }

    /// All blocks zero.
    pub fn zero(dims: Vec<usize>) -> Self {
        let m = dims.len();
        let mut blocks = BTreeMap::new();
        for i in 0..m {
            for j in i..m {
                blocks.insert((i, j), Matrix::zeros(dims[i], dims[j]));
            }
        }
        Self {
            dims,
            blocks: Blocks::Exact(blocks),
        }
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mode(&self) -> Mode {
        match self.blocks {
            Blocks::Exact(_) => Mode::Exact,
            Blocks::Float(_) => Mode::Float,
        }
    }

    pub fn exact_block(&self, i: usize, j: usize) -> Option<&Matrix<Cyclotomic>> {
        match &self.blocks {
            Blocks::Exact(b) => b.get(&(i, j)),
            Blocks::Float(_) => None,
        }
    }

    pub fn float_block(&self, i: usize, j: usize) -> Option<Matrix<Complex64>> {
        match &self.blocks {
            Blocks::Exact(b) => b.get(&(i, j)).map(|m| m.map(Cyclotomic::to_complex)),
            Blocks::Float(b) => b.get(&(i, j)).cloned(),
        }
    }
}

/// Assembles the form with block `(i, j)` equal to `A_ij ⊗ F_ij` off the
/// diagonal and `A_ii ⊗ F_ii + A_ii^t ⊗ F_ii^†` on it, then checks that every
/// pair of mirrored blocks is hermitian.
fn assemble<S: Ring + Conjugate + PartialEq>(
    a: &SeifertMatrix,
    dims: &[usize],
    upper: &BTreeMap<(usize, usize), Matrix<S>>,
    root: &S,
    hermitian_pair: impl Fn(&Matrix<S>, &Matrix<S>) -> bool,
) -> Result<Matrix<S>> {
    let m = dims.len();
    let sizes: Vec<usize> = a.sizes().iter().map(|g| 2 * g).collect();
    let mut off = vec![0usize; m + 1];
    for i in 0..m {
        off[i + 1] = off[i] + sizes[i] * dims[i];
    }
    let mut out = Matrix::zeros(off[m], off[m]);
    let mut blocks = vec![vec![None; m]; m];
    for i in 0..m {
        for j in 0..m {
            let aij = a.block(i, j);
            let b = if i == j {
                let f = &upper[&(i, i)];
                Matrix::kron_int(&aij, f).add(&Matrix::kron_int(&aij.transpose(), &f.adjoint()))
            } else if i < j {
                Matrix::kron_int(&aij, &upper[&(i, j)])
            } else {
                Matrix::kron_int(&aij, &upper[&(j, i)].adjoint().scale(root))
            };
            out.set_block(off[i], off[j], &b);
            blocks[i][j] = Some(b);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let (bij, bji) = (blocks[i][j].as_ref().unwrap(), blocks[j][i].as_ref().unwrap());
            if !hermitian_pair(bij, bji) {
                return Err(Error::FormNotHermitian { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(out)
}

/// Signature of the hermitian form assembled from `A` and `F`.
pub fn sigma_f(a: &SeifertMatrix, f: &FormTuple, opts: &EvalOptions) -> Result<SigmaResult> {
    if f.m() != a.components() {
        return Err(Error::ComponentMismatch {
            matrix: a.components(),
            rep: f.m(),
        });
    }
    let root = super::sqrt_neg_eps(a.epsilon());
    match &f.blocks {
        Blocks::Exact(upper) => {
            let h = assemble(a, &f.dims, upper, &root, |x, y| *x == y.adjoint())?;
            let inertia = signature_with(&h, opts.backend)?;
            Ok(SigmaResult {
                inertia,
                sign: inertia.sign(),
                singular: inertia.is_singular(),
                mode: Mode::Exact,
                hermitized: false,
            })
        }
        Blocks::Float(upper) => {
            let tol = opts.tol;
            let h = assemble(a, &f.dims, upper, &root.to_complex(), |x, y| {
                let scale = x.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
                x.sub(&y.adjoint()).entries().iter().all(|z| z.norm() <= tol * scale)
            })?;
            let fi = signature_float(&h, tol)?;
            Ok(SigmaResult {
                inertia: fi.inertia,
                sign: fi.inertia.sign(),
                singular: fi.indeterminate,
                mode: Mode::Float,
                hermitized: false,
            })
        }
    }
}
