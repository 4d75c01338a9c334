//! The classical contraction operations, computed exactly as their defining
//! summations. [`tcp`] is the reference oracle for the tensor-train fast
//! path and deliberately stays a literal nested-loop sum with a fixed
//! (ascending) summation order.

use crate::error::{Error, Result};
use crate::linalg::matmul;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::tensor::DenseTensor;

/// Mode-n product `Y = X ×ₙ A`: unfold along mode `n`, left-multiply by `a`,
/// refold with `I_n` replaced by `a.rows()`.
pub fn mode_n_product<T: Scalar>(
    x: &DenseTensor<T>,
    a: &Matrix<T>,
    n: usize,
) -> Result<DenseTensor<T>> {
    let i_n = x.shape().dim(n)?;
    if a.cols() != i_n {
        return Err(Error::InnerDimMismatch { left: a.cols(), right: i_n });
    }
    let unfolded = x.unfold(n)?;
    let product = matmul(a, &unfolded)?;
    let mut dims = x.shape().dims().to_vec();
    dims[n - 1] = a.rows();
    DenseTensor::refold_mode_n(&product, &Shape::new(dims)?, n)
}

/// Tensor contraction product `Z = X ×ₙᵐ Y`: sums over the shared mode pair
/// `I_n = J_m`, yielding an order-(N+M-2) tensor with x's remaining modes
/// followed by y's remaining modes.
///
/// Each output entry is accumulated over `i_n` in ascending order, so results
/// are bit-stable. This function is the correctness oracle for
/// [`crate::ttcp::ttcp`] and performs no algebraic shortcuts.
pub fn tcp<T: Scalar>(
    x: &DenseTensor<T>,
    y: &DenseTensor<T>,
    n: usize,
    m: usize,
) -> Result<DenseTensor<T>> {
    let x_dim = x.shape().dim(n)?;
    let y_dim = y.shape().dim(m)?;
    if x_dim != y_dim {
        return Err(Error::ContractedDimMismatch { n, m, x_dim, y_dim });
    }

    let x_rest = x.shape().without_mode(n)?;
    let y_rest = y.shape().without_mode(m)?;
    let mut out_dims = x_rest.dims().to_vec();
    out_dims.extend_from_slice(y_rest.dims());
    let out_shape = Shape::new(out_dims)?;

    let x_strides = x.shape().strides();
    let y_strides = y.shape().strides();
    let sum_step_x = x_strides[n - 1];
    let sum_step_y = y_strides[m - 1];
    // Odometer steps for every free output mode, x's free modes first.
    let x_steps: Vec<usize> = (0..x.order()).filter(|&k| k != n - 1).map(|k| x_strides[k]).collect();
    let y_steps: Vec<usize> = (0..y.order()).filter(|&k| k != m - 1).map(|k| y_strides[k]).collect();
    let split = x_steps.len();

    let xd = x.data();
    let yd = y.data();
    let mut out = Vec::with_capacity(out_shape.len());
    let mut counters = vec![0usize; out_shape.order()];
    let mut base_x = 0usize;
    let mut base_y = 0usize;
    for _ in 0..out_shape.len() {
        let mut acc = T::zero();
        let mut xa = base_x;
        let mut ya = base_y;
        for _ in 0..x_dim {
            acc = acc + xd[xa] * yd[ya];
            xa += sum_step_x;
            ya += sum_step_y;
        }
        out.push(acc);
        for (k, (counter, &d)) in counters.iter_mut().zip(out_shape.dims()).enumerate() {
            let step = if k < split { x_steps[k] } else { y_steps[k - split] };
            let base = if k < split { &mut base_x } else { &mut base_y };
            *counter += 1;
            *base += step;
            if *counter < d {
                break;
            }
            *counter = 0;
            *base -= d * step;
        }
    }
    DenseTensor::new(out_shape, out)
}
