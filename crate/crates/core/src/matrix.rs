use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::tensor::DenseTensor;

/// Order-2 dense array in the same little-endian layout as [`DenseTensor`]:
/// the row index varies fastest, so storage is column-major.
///
/// Conversion to and from an order-2 tensor is a relabeling of the same
/// buffer; no element moves.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        let shape = Shape::new(vec![rows, cols])?;
        if data.len() != shape.len() {
            return Err(Error::DataLengthMismatch {
                expected: shape.len(),
                got: data.len(),
                dims: vec![rows, cols],
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Convenience constructor from row slices (handy for literal matrices in
    /// tests; the rows are transposed into the column-major buffer).
    pub fn from_rows(rows: &[&[T]]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::ZeroDimension { position: 1 });
        }
        let r = rows.len();
        let c = rows[0].len();
        let mut data = vec![T::zero(); r * c];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::ArityMismatch { expected: c, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                data[i + j * r] = v;
            }
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let shape = Shape::new(vec![rows, cols])?;
        Ok(Matrix { rows, cols, data: vec![T::zero(); shape.len()] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Matrix::zeros(n, n)?;
        for k in 0..n {
            m.data[k + k * n] = T::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub(crate) fn into_data(self) -> Vec<T> {
        self.data
    }

    /// Entry at 1-based row `r`, column `c`.
    pub fn at(&self, r: usize, c: usize) -> Result<T> {
        if r == 0 || r > self.rows {
            return Err(Error::IndexOutOfBounds { mode: 1, index: r, bound: self.rows });
        }
        if c == 0 || c > self.cols {
            return Err(Error::IndexOutOfBounds { mode: 2, index: c, bound: self.cols });
        }
        Ok(self.data[(r - 1) + (c - 1) * self.rows])
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> T {
        self.data[r + c * self.rows]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r + c * self.rows] = v;
    }

    /// 0-based column as a contiguous slice.
    pub(crate) fn col(&self, c: usize) -> &[T] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = vec![T::zero(); self.data.len()];
        for c in 0..self.cols {
            for r in 0..self.rows {
                out[c + r * self.cols] = self.data[r + c * self.rows];
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data: out }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    /// Relabels the buffer as an order-2 tensor. Zero-cost.
    pub fn into_tensor(self) -> DenseTensor<T> {
        let shape = Shape::new(vec![self.rows, self.cols]).expect("matrix dims are valid");
        DenseTensor::from_parts(shape, self.data)
    }

    /// Relabels an order-2 tensor as a matrix. Zero-cost.
    pub fn from_tensor(t: DenseTensor<T>) -> Result<Self> {
        if t.order() != 2 {
            return Err(Error::InvalidMode { mode: 2, order: t.order() });
        }
        let rows = t.shape().dims()[0];
        let cols = t.shape().dims()[1];
        Ok(Matrix { rows, cols, data: t.into_data() })
    }
}
