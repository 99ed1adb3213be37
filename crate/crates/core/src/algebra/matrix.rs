use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;

use super::ring::{Conjugate, ExactDiv, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over a ring.
///
/// Most of the crate works with square matrices; rectangular shapes only
/// appear as blocks of a partitioned Seifert matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

/// Square matrices are ordinary matrices whose constructors check the shape.
pub type SquareMatrix<S> = Matrix<S>;

impl<S> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<T, E>(&self, f: impl FnMut(&S) -> std::result::Result<T, E>) -> std::result::Result<Matrix<T>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn into_rows(self) -> Vec<Vec<S>> {
        let cols = self.cols;
        let mut it = self.entries.into_iter();
        (0..self.rows)
            .map(|_| it.by_ref().take(cols).collect())
            .collect()
    }
}

impl<S: Clone> Matrix<S> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Copies the block with top-left corner `(r0, c0)` and shape `rows x cols`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<S>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    /// Simultaneous row and column selection.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |r, c| self[(idx[r], idx[c])].clone())
    }
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { diag[r].clone() } else { S::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        out[(r, c)] = out[(r, c)].add(&prod);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn block_diagonal(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product with an integer outer factor: entry `a` of `outer`
    /// becomes the block `a * inner`.
    pub fn kron_int(outer: &Matrix<i64>, inner: &Self) -> Self {
        let (ir, ic) = (inner.rows, inner.cols);
        Self::from_fn(outer.rows * ir, outer.cols * ic, |r, c| {
            let a = outer[(r / ir, c / ic)];
            if a == 0 {
                S::zero()
            } else {
                inner[(r % ir, c % ic)].scale_i64(a)
            }
        })
    }

    pub fn kron(&self, inner: &Self) -> Self {
        let (ir, ic) = (inner.rows, inner.cols);
        Self::from_fn(self.rows * ir, self.cols * ic, |r, c| {
            self[(r / ir, c / ic)].mul(&inner[(r % ir, c % ic)])
        })
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> S {
        assert!(self.is_square());
        let idx: Vec<usize> = (0..self.cols).collect();
        cofactor(self, 0, &idx)
    }

    /// True when every row and column holds exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_used = vec![false; n];
        for r in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&c| !self[(r, c)].is_zero()).collect();
            if nz.len() != 1 || col_used[nz[0]] {
                return false;
            }
            col_used[nz[0]] = true;
        }
        true
    }
}

fn cofactor<S: Ring>(m: &Matrix<S>, row: usize, cols: &[usize]) -> S {
    if cols.is_empty() {
        return S::one();
    }
    if cols.len() == 1 {
        return m[(row, cols[0])].clone();
    }
    let mut acc = S::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let a = &m[(row, c)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.mul(&cofactor(m, row + 1, &rest));
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

impl<S: ExactDiv> Matrix<S> {
    /// Fraction-free (Bareiss) determinant. Requires exact division in `S`.
    pub fn det_bareiss(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.clone();
        let mut prev = S::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(k, k)].mul(&a[(i, j)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    a[(i, j)] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact by Sylvester's identity");
                }
                a[(i, k)] = S::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }
}

impl<S> Matrix<S> {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<S: Clone + Conjugate> Matrix<S> {
    pub fn conj(&self) -> Self {
        self.map(Conjugate::conj)
    }

    /// Conjugate transpose `M^†`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }
}

impl Matrix<i64> {
    /// Exact integer determinant (Bareiss over big integers).
    pub fn det_int(&self) -> BigInt {
        self.map(|&x| BigInt::from(x)).det_bareiss()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
