use crate::error::{Error, Result};

/// Mode dimensions `(I_1, ..., I_N)` of an order-N tensor.
///
/// An empty dimension list denotes an order-0 tensor (a scalar), which holds
/// exactly one element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
    len: usize,
}

impl Shape {
    /// Builds a shape, rejecting zero dimensions and element counts that
    /// overflow `usize`.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        let mut len: usize = 1;
        for (k, &d) in dims.iter().enumerate() {
            if d == 0 {
                return Err(Error::ZeroDimension { position: k + 1 });
            }
            len = len
                .checked_mul(d)
                .ok_or_else(|| Error::ShapeOverflow { dims: dims.clone() })?;
        }
        Ok(Shape { dims, len })
    }

    pub fn scalar() -> Self {
        Shape { dims: Vec::new(), len: 1 }
    }

    /// Number of modes N.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of 1-based mode `n`.
    pub fn dim(&self, n: usize) -> Result<usize> {
        if n == 0 || n > self.dims.len() {
            return Err(Error::InvalidMode { mode: n, order: self.dims.len() });
        }
        Ok(self.dims[n - 1])
    }

    /// Total element count, the product of all dimensions.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // every shape addresses at least one element
    }

    /// Little-endian strides: mode n steps by `I_1 ... I_{n-1}` elements.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = Vec::with_capacity(self.dims.len());
        let mut acc = 1usize;
        for &d in &self.dims {
            strides.push(acc);
            acc *= d;
        }
        strides
    }

    /// Little-endian linear position of a 1-based multi-index:
    /// `1 + Σₙ (iₙ - 1) · I_1 ⋯ I_{n-1}` (the first mode varies fastest).
    pub fn linear_index(&self, multi: &[usize]) -> Result<usize> {
        Ok(self.offset_of(multi)? + 1)
    }

    /// Inverse of [`Shape::linear_index`].
    pub fn multi_index(&self, linear: usize) -> Result<Vec<usize>> {
        if linear == 0 || linear > self.len {
            return Err(Error::LinearOutOfBounds { position: linear, bound: self.len });
        }
        let mut rem = linear - 1;
        let mut multi = Vec::with_capacity(self.dims.len());
        for &d in &self.dims {
            multi.push(rem % d + 1);
            rem /= d;
        }
        Ok(multi)
    }

    /// 0-based storage offset of a 1-based multi-index.
    pub(crate) fn offset_of(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.dims.len() {
            return Err(Error::ArityMismatch { expected: self.dims.len(), got: multi.len() });
        }
        let mut offset = 0usize;
        let mut stride = 1usize;
        for (k, (&i, &d)) in multi.iter().zip(&self.dims).enumerate() {
            if i == 0 || i > d {
                return Err(Error::IndexOutOfBounds { mode: k + 1, index: i, bound: d });
            }
            offset += (i - 1) * stride;
            stride *= d;
        }
        Ok(offset)
    }

    /// Shape with mode `n` removed (the remaining modes keep their order).
    pub(crate) fn without_mode(&self, n: usize) -> Result<Shape> {
        if n == 0 || n > self.dims.len() {
            return Err(Error::InvalidMode { mode: n, order: self.dims.len() });
        }
        let dims = self
            .dims
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != n - 1)
            .map(|(_, &d)| d)
            .collect();
        Shape::new(dims)
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "scalar");
        }
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}
