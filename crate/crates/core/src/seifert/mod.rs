//! Seifert matrices of epsilon-boundary links.
//!
//! A matrix of size `(g_1, ..., g_m)` is an integer matrix of dimension
//! `2 * sum g_i` split into blocks `A_ij` of shape `2g_i x 2g_j`, subject to
//! `A_ij = -eps * A_ji^t` for `i != j` and `det(A_ii + eps * A_ii^t) = 1`.

mod metabolic;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{laurent_det, signature_int, LaurentPoly, Matrix};
use crate::error::{Error, Result};

pub use metabolic::{
    doubled_certificate, random_certificate_search, random_unimodular, verify_metabolic,
    MetabolicCertificate,
};

/// One failed axiom. Coordinates are 0-based global row/column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `A[row][col] != -eps * A[col][row]` for entries in different components.
    OffDiagonal {
        blocks: (usize, usize),
        row: usize,
        col: usize,
        value: i64,
        mirror: i64,
    },
    /// `det(A_ii + eps * A_ii^t) != 1`.
    Determinant { component: usize, det: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffDiagonal {
                blocks,
                row,
                col,
                value,
                mirror,
            } => write!(
                f,
                "block ({},{}): entry ({},{}) = {} but entry ({},{}) = {}",
                blocks.0 + 1,
                blocks.1 + 1,
                row + 1,
                col + 1,
                value,
                col + 1,
                row + 1,
                mirror
            ),
            Violation::Determinant { component, det } => write!(
                f,
                "block ({0},{0}): det(A_ii + eps A_ii^t) = {1}, expected 1",
                component + 1,
                det
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    epsilon: i8,
    sizes: Vec<usize>,
    entries: Matrix<i64>,
    relaxed: bool,
    violations: Vec<Violation>,
}

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("epsilon must be +1 or -1, got {epsilon}")))
    }
}

fn check_shape(sizes: &[usize], entries: &Matrix<i64>) -> Result<()> {
    let n = 2 * sizes.iter().sum::<usize>();
    if entries.rows() != n || entries.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "sizes {:?} require a {n}x{n} matrix, got {}x{}",
            sizes,
            entries.rows(),
            entries.cols()
        )));
    }
    Ok(())
}

impl SeifertMatrix {
    /// Builds a matrix and rejects any axiom violation.
    pub fn new(epsilon: i8, sizes: Vec<usize>, entries: Matrix<i64>) -> Result<Self> {
        let a = Self::new_relaxed(epsilon, sizes, entries)?;
        if !a.violations.is_empty() {
            let list: Vec<String> = a.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Axioms(list.join("; ")));
        }
        Ok(Self { relaxed: false, ..a })
    }

    /// Builds a matrix without enforcing the axioms; violations are recorded
    /// and the value is stamped relaxed when there are any.
    pub fn new_relaxed(epsilon: i8, sizes: Vec<usize>, entries: Matrix<i64>) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_shape(&sizes, &entries)?;
        let violations = validate_parts(epsilon, &sizes, &entries);
        Ok(Self {
            epsilon,
            relaxed: !violations.is_empty(),
            sizes,
            entries,
            violations,
        })
    }

    /// The matrix of the trivial link with `m` components (all `g_i = 0`).
    pub fn empty(epsilon: i8, m: usize) -> Self {
        Self::new(epsilon, vec![0; m], Matrix::zeros(0, 0)).expect("empty matrix is valid")
    }

    pub fn from_rows(epsilon: i8, sizes: Vec<usize>, rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = 2 * sizes.iter().sum::<usize>();
        let entries = if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows)?
        };
        if n == 0 && entries.rows() == 0 {
            return Self::new(epsilon, sizes, Matrix::zeros(0, 0));
        }
        Self::new(epsilon, sizes, entries)
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of components `m`.
    pub fn components(&self) -> usize {
        self.sizes.len()
    }

    /// Dimension `2 * sum g_i`.
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<i64> {
        &self.entries
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Same entries with a different sign; violations are recomputed.
    pub fn with_epsilon(&self, epsilon: i8) -> Result<Self> {
        Self::new_relaxed(epsilon, self.sizes.clone(), self.entries.clone())
    }

    /// Starting row of each component block, plus the total dimension.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.sizes)
    }

    /// Component owning global row `r`.
    pub fn component_of(&self, r: usize) -> usize {
        let off = self.offsets();
        (0..self.sizes.len())
            .find(|&i| r >= off[i] && r < off[i + 1])
            .expect("row in range")
    }

    pub fn block(&self, i: usize, j: usize) -> Matrix<i64> {
        let off = self.offsets();
        self.entries.block(off[i], off[j], 2 * self.sizes[i], 2 * self.sizes[j])
    }

    /// Re-checks both axioms.
    pub fn validate(&self) -> Vec<Violation> {
        validate_parts(self.epsilon, &self.sizes, &self.entries)
    }

    /// `det(A T - A^t)` with `T = diag(t_1 id_{2g_1}, ..., t_m id_{2g_m})`.
    pub fn alexander(&self) -> LaurentPoly {
        let m = self.components();
        let n = self.dim();
        let comp: Vec<usize> = (0..n).map(|r| self.component_of(r)).collect();
        let t: Vec<LaurentPoly> = (0..m).map(|i| LaurentPoly::var(i, m)).collect();
        let mat = Matrix::from_fn(n, n, |r, c| {
            let a = self.entries[(r, c)];
            let b = self.entries[(c, r)];
            let at = t[comp[c]].scale(&BigInt::from(a));
            crate::algebra::Ring::sub(&at, &LaurentPoly::constant(b))
        });
        let d = laurent_det(&mat);
        if d.nvars() < m {
            // constants carry no variables; pad for a uniform result
            d.shift(&vec![0; m])
        } else {
            d
        }
    }

    /// Signature of `sqrt(eps) (A_ii + eps A_ii^t)`: the symmetric form for
    /// `eps = +1`, and `i (A_ii - A_ii^t)` for `eps = -1`.
    pub fn pairing_signature(&self, i: usize) -> Result<i64> {
        if i >= self.components() {
            return Err(Error::IndexOutOfRange(format!(
                "component {} of {}",
                i + 1,
                self.components()
            )));
        }
        let b = self.block(i, i);
        let s = if self.epsilon == 1 {
            b.add(&b.transpose())
        } else {
            b.sub(&b.transpose())
        };
        Ok(signature_int(&s)?.sign())
    }

    /// Componentwise direct sum: block `(i,j)` of the result is `A_ij ⊕ B_ij`.
    pub fn block_sum(&self, other: &Self) -> Result<Self> {
        if self.epsilon != other.epsilon {
            return Err(Error::Incompatible("different epsilon".into()));
        }
        if self.components() != other.components() {
            return Err(Error::Incompatible(format!(
                "{} vs {} components",
                self.components(),
                other.components()
            )));
        }
        let m = self.components();
        let sizes: Vec<usize> = self.sizes.iter().zip(&other.sizes).map(|(a, b)| a + b).collect();
        let off = offsets(&sizes);
        let n = off[m];
        let mut e = Matrix::zeros(n, n);
        for i in 0..m {
            for j in 0..m {
                e.set_block(off[i], off[j], &self.block(i, j).direct_sum(&other.block(i, j)));
            }
        }
        self.derived(sizes, e, other.relaxed)
    }

    /// Reorders components: component `i` of the result is component
    /// `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let m = self.components();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of {m} components")));
        }
        let sizes: Vec<usize> = perm.iter().map(|&p| self.sizes[p]).collect();
        let off = offsets(&sizes);
        let mut e = Matrix::zeros(off[m], off[m]);
        for i in 0..m {
            for j in 0..m {
                e.set_block(off[i], off[j], &self.block(perm[i], perm[j]));
            }
        }
        self.derived(sizes, e, false)
    }

    /// Reverses the component order.
    pub fn reverse(&self) -> Self {
        let perm: Vec<usize> = (0..self.components()).rev().collect();
        self.permute(&perm).expect("reversal is a permutation")
    }

    /// Entrywise negation (the mirror image).
    pub fn negate(&self) -> Self {
        self.derived(self.sizes.clone(), self.entries.neg(), false)
            .expect("negation keeps the shape")
    }

    /// Block congruence `P A P^t` with `P = diag(P_1, ..., P_m)`.
    pub fn congruence(&self, p: &[Matrix<i64>]) -> Result<Self> {
        let big = metabolic::block_diag_checked(self, p)?;
        let e = big.mul(&self.entries).mul(&big.transpose());
        self.derived(self.sizes.clone(), e, false)
    }

    fn derived(&self, sizes: Vec<usize>, entries: Matrix<i64>, other_relaxed: bool) -> Result<Self> {
        let mut out = Self::new_relaxed(self.epsilon, sizes, entries)?;
        out.relaxed = out.relaxed || self.relaxed || other_relaxed;
        Ok(out)
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    off.push(0);
    for g in sizes {
        acc += 2 * g;
        off.push(acc);
    }
    off
}

fn validate_parts(epsilon: i8, sizes: &[usize], a: &Matrix<i64>) -> Vec<Violation> {
    let off = offsets(sizes);
    let m = sizes.len();
    let eps = epsilon as i64;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for r in off[i]..off[i + 1] {
                for c in off[j]..off[j + 1] {
                    if a[(r, c)] != -eps * a[(c, r)] {
                        out.push(Violation::OffDiagonal {
                            blocks: (i, j),
                            row: r,
                            col: c,
                            value: a[(r, c)],
                            mirror: a[(c, r)],
                        });
                    }
                }
            }
        }
    }
    for i in 0..m {
        let n = 2 * sizes[i];
        let b = a.block(off[i], off[i], n, n);
        let s = b.add(&b.transpose().scale(&eps));
        let det = s.det_int();
        if !det.is_one() {
            out.push(Violation::Determinant { component: i, det });
        }
    }
    out
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "epsilon = {}, sizes = {:?}", self.epsilon, self.sizes)?;
        write!(f, "{}", self.entries)
    }
}
