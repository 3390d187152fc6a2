use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{MaxPlus, MinPlus, Scalar, Semiring};

/// Dense row-major matrix of tropical costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Matrix whose every entry is the semiring's infeasible sentinel.
    pub fn zeros<S: Semiring>(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, S::zero())
    }

    /// Tropical identity: 0 on the diagonal, the sentinel elsewhere.
    pub fn identity<S: Semiring>(n: usize) -> Self {
        let mut m = Self::zeros::<S>(n, n);
        for i in 0..n {
            m[(i, i)] = T::zero();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedRows {
                    row,
                    len: r.len(),
                    expected: cols,
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        (i < self.rows && j < self.cols).then(|| self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// A tropical matrix-product algorithm.
///
/// Every reduction in this crate funnels its heavy lifting through one of
/// these, so a faster product algorithm can be dropped in without touching the
/// string or tree code.
pub trait ProductKernel: Send + Sync {
    fn multiply<S: Semiring, T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>>;
}

/// Textbook triple loop in i-k-j order.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaiveKernel;

/// Cache-blocked product; row tiles run in parallel on large inputs.
#[derive(Clone, Copy, Debug)]
pub struct TiledKernel {
    tile: usize,
}

/// Below this many inner-loop steps the tiled kernel stays on one thread.
const PARALLEL_WORK: usize = 1 << 18;

impl TiledKernel {
    pub fn new(tile: usize) -> Result<Self> {
        if tile == 0 {
            return Err(Error::InvalidParameter("tile size must be positive".into()));
        }
        Ok(TiledKernel { tile })
    }

    pub fn tile(&self) -> usize {
        self.tile
    }
}

impl Default for TiledKernel {
    fn default() -> Self {
        TiledKernel { tile: 32 }
    }
}

fn check_dims<T>(a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_cols: a.cols,
            right_rows: b.rows,
        });
    }
    Ok(())
}

impl ProductKernel for NaiveKernel {
    fn multiply<S: Semiring, T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
        check_dims(a, b)?;
        let mut c = Matrix::zeros::<S>(a.rows, b.cols);
        for i in 0..a.rows {
            let out = &mut c.data[i * b.cols..(i + 1) * b.cols];
            for k in 0..a.cols {
                let x = a[(i, k)];
                if S::is_zero(x) {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(b.row(k)) {
                    *o = S::plus(*o, S::times(x, y));
                }
            }
        }
        Ok(c)
    }
}

impl TiledKernel {
    fn row_tile<S: Semiring, T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>, row0: usize, out: &mut [T]) {
        let n = b.cols;
        let rows = out.len() / n.max(1);
        for k0 in (0..a.cols).step_by(self.tile) {
            let k1 = (k0 + self.tile).min(a.cols);
            for j0 in (0..n).step_by(self.tile) {
                let j1 = (j0 + self.tile).min(n);
                for di in 0..rows {
                    let i = row0 + di;
                    let out_row = &mut out[di * n + j0..di * n + j1];
                    for k in k0..k1 {
                        let x = a[(i, k)];
                        if S::is_zero(x) {
                            continue;
                        }
                        for (o, &y) in out_row.iter_mut().zip(&b.row(k)[j0..j1]) {
                            *o = S::plus(*o, S::times(x, y));
                        }
                    }
                }
            }
        }
    }
}

impl ProductKernel for TiledKernel {
    fn multiply<S: Semiring, T: Scalar>(&self, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
        check_dims(a, b)?;
        let mut c = Matrix::zeros::<S>(a.rows, b.cols);
        if b.cols == 0 || a.rows == 0 {
            return Ok(c);
        }
        let chunk = self.tile * b.cols;
        let work = a.rows * a.cols * b.cols;
        if work >= PARALLEL_WORK {
            c.data
                .par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(t, out)| self.row_tile::<S, T>(a, b, t * self.tile, out));
        } else {
            for (t, out) in c.data.chunks_mut(chunk).enumerate() {
                self.row_tile::<S, T>(a, b, t * self.tile, out);
            }
        }
        Ok(c)
    }
}

pub fn min_plus_product<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    NaiveKernel.multiply::<MinPlus, T>(a, b)
}

pub fn min_plus_product_tiled<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, tile: usize) -> Result<Matrix<T>> {
    TiledKernel::new(tile)?.multiply::<MinPlus, T>(a, b)
}

pub fn max_plus_product<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    NaiveKernel.multiply::<MaxPlus, T>(a, b)
}
