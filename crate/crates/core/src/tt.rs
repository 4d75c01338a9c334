//! Tensor-train decomposition via a sequential δ-truncated SVD sweep, plus
//! reconstruction and error reporting.
//!
//! An order-N tensor is factored into N order-3 cores; core n has shape
//! `(R_{n-1}, I_n, R_n)` with boundary ranks `R_0 = R_N = 1`. Because every
//! buffer in this crate is little-endian, each "reshape" in the sweep is a
//! relabeling of an existing buffer and moves no data.

use crate::error::{Error, Result};
use crate::linalg::truncated_svd;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::tensor::DenseTensor;

/// A tensor train: ordered order-3 cores joined by rank modes.
#[derive(Clone, Debug)]
pub struct TTDecomposition<T> {
    cores: Vec<DenseTensor<T>>,
    ranks: Vec<usize>,
    source_shape: Shape,
    epsilon: Option<T>,
}

impl<T: Scalar> TTDecomposition<T> {
    /// Assembles a train from order-3 cores, validating the chain: boundary
    /// ranks must be 1 and adjacent cores must agree on their shared rank.
    ///
    /// `epsilon` is the accuracy the train was built with, when known;
    /// hand-assembled or file-loaded trains carry `None`.
    pub fn new(cores: Vec<DenseTensor<T>>, epsilon: Option<T>) -> Result<Self> {
        if cores.is_empty() {
            return Err(Error::InvalidTrain("no cores".into()));
        }
        for (n, core) in cores.iter().enumerate() {
            if core.order() != 3 {
                return Err(Error::InvalidTrain(format!(
                    "core {} has order {}, expected 3",
                    n + 1,
                    core.order()
                )));
            }
        }
        let first = cores[0].shape().dims()[0];
        let last = cores[cores.len() - 1].shape().dims()[2];
        if first != 1 || last != 1 {
            return Err(Error::InvalidTrain(format!(
                "boundary ranks must be 1, got R_0 = {first} and R_N = {last}"
            )));
        }
        let mut ranks = Vec::with_capacity(cores.len() + 1);
        ranks.push(1);
        for (n, pair) in cores.windows(2).enumerate() {
            let right = pair[0].shape().dims()[2];
            let next_left = pair[1].shape().dims()[0];
            if right != next_left {
                return Err(Error::InvalidTrain(format!(
                    "cores {} and {} disagree on the shared rank: {} vs {}",
                    n + 1,
                    n + 2,
                    right,
                    next_left
                )));
            }
            ranks.push(right);
        }
        ranks.push(1);
        let source_shape = Shape::new(cores.iter().map(|c| c.shape().dims()[1]).collect())?;
        Ok(TTDecomposition { cores, ranks, source_shape, epsilon })
    }

    pub fn cores(&self) -> &[DenseTensor<T>] {
        &self.cores
    }

    /// The rank chain `(R_0, ..., R_N)`; always starts and ends with 1.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Shape of the tensor the train represents.
    pub fn source_shape(&self) -> &Shape {
        &self.source_shape
    }

    /// Accuracy the train was built with, if it came from [`tt_svd`].
    pub fn epsilon(&self) -> Option<T> {
        self.epsilon
    }

    pub fn order(&self) -> usize {
        self.cores.len()
    }

    /// Total number of stored core elements.
    pub fn storage_len(&self) -> usize {
        self.cores.iter().map(|c| c.data().len()).sum()
    }

    /// First core `(1, I_1, R_1)` viewed as the `I_1 x R_1` factor matrix.
    pub fn first_core_matrix(&self) -> Matrix<T> {
        let core = &self.cores[0];
        let dims = core.shape().dims();
        Matrix::from_vec(dims[1], dims[2], core.data().to_vec()).expect("core layout is valid")
    }

    /// Last core `(R_{N-1}, I_N, 1)` viewed as the `R_{N-1} x I_N` factor
    /// matrix.
    pub fn last_core_matrix(&self) -> Matrix<T> {
        let core = &self.cores[self.cores.len() - 1];
        let dims = core.shape().dims();
        Matrix::from_vec(dims[0], dims[1], core.data().to_vec()).expect("core layout is valid")
    }
}

/// Decomposes `x` into a tensor train with relative accuracy `epsilon`.
///
/// Sweep: with `δ = ε/√(N-1) · ‖x‖_F`, repeatedly take the δ-truncated SVD
/// of the running matrix, keep `U` as the next core and carry `S·Vᵀ`
/// forward. The guarantee is `‖x - reconstruct‖_F <= ε · ‖x‖_F`.
pub fn tt_svd<T: Scalar>(x: &DenseTensor<T>, epsilon: T) -> Result<TTDecomposition<T>> {
    let order = x.order();
    if order < 2 {
        return Err(Error::OrderTooSmall { order });
    }
    if epsilon < T::zero() {
        return Err(Error::NegativeEpsilon);
    }
    let dims = x.shape().dims().to_vec();
    let denom = T::from_usize(order - 1).unwrap().sqrt();
    let delta = epsilon / denom * x.frobenius_norm();

    // The mode-1 unfolding is the tensor buffer itself.
    let mut tail: usize = dims[1..].iter().product();
    let mut z = Matrix::from_vec(dims[0], tail, x.data().to_vec())?;
    let mut r_prev = 1usize;
    let mut cores = Vec::with_capacity(order);

    for n in 0..order - 1 {
        let factor = truncated_svd(&z, delta)?;
        let r = factor.rank;
        cores.push(DenseTensor::new(
            Shape::new(vec![r_prev, dims[n], r])?,
            factor.u.into_data(),
        )?);

        // Carry S·Vᵀ forward, regrouped as (R_n · I_{n+1}) x (I_{n+2} ⋯ I_N).
        let mut carry = factor.vt;
        for row in 0..r {
            for col in 0..carry.cols() {
                let v = carry.get(row, col) * factor.sigma[row];
                carry.set(row, col, v);
            }
        }
        tail /= dims[n + 1];
        z = Matrix::from_vec(r * dims[n + 1], tail, carry.into_data())?;
        r_prev = r;
    }

    cores.push(DenseTensor::new(
        Shape::new(vec![r_prev, dims[order - 1], 1])?,
        z.into_data(),
    )?);
    TTDecomposition::new(cores, Some(epsilon))
}

/// Contracts the train left to right back into a dense tensor.
pub fn tt_reconstruct<T: Scalar>(t: &TTDecomposition<T>) -> Result<DenseTensor<T>> {
    let mut acc = t.first_core_matrix();
    for core in &t.cores()[1..] {
        let dims = core.shape().dims();
        let (r_left, i_n, r_right) = (dims[0], dims[1], dims[2]);
        let core_mat = Matrix::from_vec(r_left, i_n * r_right, core.data().to_vec())?;
        let rows = acc.rows();
        let product = crate::linalg::matmul(&acc, &core_mat)?;
        acc = Matrix::from_vec(rows * i_n, r_right, product.into_data())?;
    }
    DenseTensor::new(t.source_shape().clone(), acc.into_data())
}

/// Relative reconstruction error `‖x - reconstruct(t)‖_F / ‖x‖_F`; zero when
/// both the tensor and the reconstruction are zero.
pub fn tt_relative_error<T: Scalar>(x: &DenseTensor<T>, t: &TTDecomposition<T>) -> Result<T> {
    if x.shape() != t.source_shape() {
        return Err(Error::ShapeMismatch {
            expected: x.shape().dims().to_vec(),
            got: t.source_shape().dims().to_vec(),
        });
    }
    let recon = tt_reconstruct(t)?;
    let mut diff2 = T::zero();
    for (&a, &b) in x.data().iter().zip(recon.data()) {
        diff2 = diff2 + (a - b) * (a - b);
    }
    let norm = x.frobenius_norm();
    if norm == T::zero() {
        return Ok(if diff2 == T::zero() { T::zero() } else { T::infinity() });
    }
    Ok(diff2.sqrt() / norm)
}
