//! Dense row-major matrices over an arbitrary element ring.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `rows × cols` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

/// Complex matrix carrying unitaries and their submatrices.
pub type ComplexMatrix<T> = Matrix<Complex<T>>;

impl<E: Clone> Matrix<E> {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
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

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
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

    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<E> Matrix<E> {
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub(crate) fn rows_mut_pair(&mut self, a: usize, b: usize) -> (&mut [E], &mut [E]) {
        debug_assert!(a != b);
        let cols = self.cols;
        let (lo, hi, swapped) = if a < b { (a, b, false) } else { (b, a, true) };
        let (head, tail) = self.entries.split_at_mut(hi * cols);
        let lo_row = &mut head[lo * cols..(lo + 1) * cols];
        let hi_row = &mut tail[..cols];
        if swapped {
            (hi_row, lo_row)
        } else {
            (lo_row, hi_row)
        }
    }

    pub(crate) fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }
}

impl<E: Clone + Zero + One> Matrix<E> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { E::one() } else { E::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| E::zero())
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &E {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.entries[r * self.cols + c]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &mut self.entries[r * self.cols + c]
    }
}

impl<E> Matrix<E>
where
    E: Clone + Zero + Mul<Output = E>,
{
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::from_fn(self.rows, rhs.cols, |_, _| E::zero());
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)].clone();
                for c in 0..rhs.cols {
                    let acc = out[(r, c)].clone() + a.clone() * rhs[(k, c)].clone();
                    out[(r, c)] = acc;
                }
            }
        }
        Ok(out)
    }
}

impl<T: Real> ComplexMatrix<T> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Elementwise squared modulus, the classical transfer matrix.
    pub fn abs_sqr(&self) -> Matrix<T> {
        self.map(|z| z.norm_sqr())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Largest entry of `|U†U − I|`; `None` when the matrix is not square.
    pub fn unitarity_deviation(&self) -> Option<T> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut worst = T::zero();
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex::<T>::zero();
                for r in 0..n {
                    acc += self[(r, a)].conj() * self[(r, b)];
                }
                if a == b {
                    acc -= Complex::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        Some(worst)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_deviation().is_some_and(|d| d <= tol)
    }

    /// Errors with [`Error::NotUnitary`] unless the matrix is unitary at the
    /// scalar type's default tolerance.
    pub fn ensure_unitary(&self) -> Result<()> {
        match self.unitarity_deviation() {
            None => Err(Error::Dimension(format!(
                "unitary must be square, got {}x{}",
                self.rows, self.cols
            ))),
            Some(d) if d <= T::unitarity_tol() => Ok(()),
            Some(d) => Err(Error::NotUnitary {
                deviation: d.to_f64().unwrap_or(f64::NAN),
            }),
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm())))
    }
}
