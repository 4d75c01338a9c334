//! Tensor-train contraction product: contract two tensors along one mode
//! pair by moving the contracted modes to the front, decomposing both
//! operands into tensor trains and fusing the trains through the single
//! matrix multiplication `K = AₓᵀA_y`.
//!
//! The merged train represents `Z^ρ`, whose modes are x's non-contracted
//! modes in reverse order followed by y's non-contracted modes. The stored
//! output permutation restores the canonical contraction order (x's
//! remaining modes ascending, then y's).

use crate::contract::tcp;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::tensor::DenseTensor;
use crate::tt::{tt_reconstruct, tt_svd, TTDecomposition};

/// The contracted mode pair: 1-based mode `n` of x against mode `m` of y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionSpec {
    pub n: usize,
    pub m: usize,
}

impl ContractionSpec {
    pub fn new(n: usize, m: usize) -> Self {
        ContractionSpec { n, m }
    }
}

#[derive(Clone, Debug)]
enum Payload<T> {
    /// The fused train for `Z^ρ` plus the kernel that joined the operands.
    Train {
        merged: TTDecomposition<T>,
        kernel: Matrix<T>,
    },
    /// Fallback for order-1 operands: the contraction evaluated directly,
    /// already in canonical mode order.
    Dense(DenseTensor<T>),
}

/// Result of a tensor-train contraction.
#[derive(Clone, Debug)]
pub struct TTCPResult<T> {
    payload: Payload<T>,
    output_permutation: Vec<usize>,
    z_shape: Shape,
    kernel_macs: u64,
}

impl<T: Scalar> TTCPResult<T> {
    /// The merged train representing `Z^ρ`; `None` on the order-1 fallback.
    pub fn merged_train(&self) -> Option<&TTDecomposition<T>> {
        match &self.payload {
            Payload::Train { merged, .. } => Some(merged),
            Payload::Dense(_) => None,
        }
    }

    /// The kernel `K = AₓᵀA_y`; `None` on the order-1 fallback.
    pub fn kernel(&self) -> Option<&Matrix<T>> {
        match &self.payload {
            Payload::Train { kernel, .. } => Some(kernel),
            Payload::Dense(_) => None,
        }
    }

    /// Permutation taking the `Z^ρ` mode order to the canonical `Z` order.
    pub fn output_permutation(&self) -> &[usize] {
        &self.output_permutation
    }

    /// Shape of the canonical contraction result `Z`.
    pub fn z_shape(&self) -> &Shape {
        &self.z_shape
    }

    /// Multiply-accumulate operations the kernel step actually executed,
    /// counted one by one: `R_1 · I_n · P_1` on the train path.
    pub fn kernel_mac_count(&self) -> u64 {
        self.kernel_macs
    }

    /// Reconstructs the dense `Z`: contracts the merged train into `Z^ρ`
    /// and applies the output permutation.
    pub fn to_dense(&self) -> Result<DenseTensor<T>> {
        match &self.payload {
            Payload::Dense(z) => Ok(z.clone()),
            Payload::Train { merged, .. } => {
                let z_rho = tt_reconstruct(merged)?;
                let z = z_rho.permute(&self.output_permutation)?;
                debug_assert_eq!(z.shape(), &self.z_shape);
                Ok(z)
            }
        }
    }
}

/// Kernel matrix `K = axᵀ · ay` joining the two first cores. Both factors
/// must have the contracted dimension as their row count.
pub fn kernel_matrix<T: Scalar>(ax: &Matrix<T>, ay: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(kernel_matrix_counted(ax, ay)?.0)
}

fn kernel_matrix_counted<T: Scalar>(ax: &Matrix<T>, ay: &Matrix<T>) -> Result<(Matrix<T>, u64)> {
    if ax.rows() != ay.rows() {
        return Err(Error::InnerDimMismatch { left: ax.rows(), right: ay.rows() });
    }
    let r1 = ax.cols();
    let p1 = ay.cols();
    let mut k = Matrix::zeros(r1, p1)?;
    let mut macs = 0u64;
    for p in 0..p1 {
        for r in 0..r1 {
            let mut acc = T::zero();
            for (&a, &b) in ax.col(r).iter().zip(ay.col(p)) {
                acc = acc + a * b;
                macs += 1;
            }
            k.set(r, p, acc);
        }
    }
    Ok((k, macs))
}

/// Permutation bringing 1-based mode `n` to the front, the rest in order.
fn front_permutation(order: usize, n: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(order);
    perm.push(n);
    perm.extend((1..=order).filter(|&k| k != n));
    perm
}

/// Full contraction pipeline: permute both operands so the contracted mode
/// leads, decompose each with [`tt_svd`] at the shared `epsilon`, then fuse
/// with [`ttcp_from_tt`].
///
/// Operands of order 1 fall back to the direct summation oracle (a note is
/// logged); the result then carries no train.
pub fn ttcp<T: Scalar>(
    x: &DenseTensor<T>,
    y: &DenseTensor<T>,
    spec: ContractionSpec,
    epsilon: T,
) -> Result<TTCPResult<T>> {
    let x_dim = x.shape().dim(spec.n)?;
    let y_dim = y.shape().dim(spec.m)?;
    if x_dim != y_dim {
        return Err(Error::ContractedDimMismatch { n: spec.n, m: spec.m, x_dim, y_dim });
    }
    if epsilon < T::zero() {
        return Err(Error::NegativeEpsilon);
    }

    if x.order() < 2 || y.order() < 2 {
        log::warn!(
            "ttcp: operand of order < 2; contracting via the direct summation instead of a degenerate train"
        );
        let z = tcp(x, y, spec.n, spec.m)?;
        let order = z.order();
        return Ok(TTCPResult {
            z_shape: z.shape().clone(),
            payload: Payload::Dense(z),
            output_permutation: (1..=order).collect(),
            kernel_macs: 0,
        });
    }

    let x_rho = x.permute(&front_permutation(x.order(), spec.n))?;
    let y_rho = y.permute(&front_permutation(y.order(), spec.m))?;
    let tx = tt_svd(&x_rho, epsilon)?;
    let ty = tt_svd(&y_rho, epsilon)?;
    ttcp_from_tt(&tx, &ty, spec)
}

/// Fusion of two already-decomposed operands (the contracted mode must lead
/// both source shapes): computes the kernel and assembles the merged train,
/// performing no decomposition.
///
/// The merged train lists x's non-contracted cores in reverse order with
/// their rank modes swapped, then y's cores with `K` absorbed into the first
/// of them.
pub fn ttcp_from_tt<T: Scalar>(
    tx: &TTDecomposition<T>,
    ty: &TTDecomposition<T>,
    spec: ContractionSpec,
) -> Result<TTCPResult<T>> {
    let x_order = tx.order();
    let y_order = ty.order();
    if x_order < 2 {
        return Err(Error::OrderTooSmall { order: x_order });
    }
    if y_order < 2 {
        return Err(Error::OrderTooSmall { order: y_order });
    }
    if spec.n == 0 || spec.n > x_order {
        return Err(Error::InvalidMode { mode: spec.n, order: x_order });
    }
    if spec.m == 0 || spec.m > y_order {
        return Err(Error::InvalidMode { mode: spec.m, order: y_order });
    }
    let x_dim = tx.source_shape().dims()[0];
    let y_dim = ty.source_shape().dims()[0];
    if x_dim != y_dim {
        return Err(Error::ContractedDimMismatch { n: spec.n, m: spec.m, x_dim, y_dim });
    }

    let ax = tx.first_core_matrix();
    let ay = ty.first_core_matrix();
    let (kernel, kernel_macs) = kernel_matrix_counted(&ax, &ay)?;

    let mut merged_cores = Vec::with_capacity(x_order + y_order - 2);
    for core in tx.cores()[1..].iter().rev() {
        merged_cores.push(core.permute(&[3, 2, 1])?);
    }

    // Absorb K into the first y-side core over its left rank mode.
    let y_core = &ty.cores()[1];
    let dims = y_core.shape().dims();
    let (p1, j_dim, p2) = (dims[0], dims[1], dims[2]);
    let y_core_mat = Matrix::from_vec(p1, j_dim * p2, y_core.data().to_vec())?;
    let absorbed = crate::linalg::matmul(&kernel, &y_core_mat)?;
    merged_cores.push(DenseTensor::new(
        Shape::new(vec![kernel.rows(), j_dim, p2])?,
        absorbed.into_data(),
    )?);
    merged_cores.extend(ty.cores()[2..].iter().cloned());

    let merged = TTDecomposition::new(merged_cores, None)?;

    // Canonical Z keeps x's free modes ascending, then y's; the merged train
    // holds x's free modes reversed, so the permutation flips that block.
    let mut output_permutation: Vec<usize> = (1..x_order).rev().collect();
    output_permutation.extend(x_order..x_order + y_order - 1);

    let mut z_dims = tx.source_shape().dims()[1..].to_vec();
    z_dims.extend_from_slice(&ty.source_shape().dims()[1..]);
    let z_shape = Shape::new(z_dims)?;

    Ok(TTCPResult {
        payload: Payload::Train { merged, kernel },
        output_permutation,
        z_shape,
        kernel_macs,
    })
}
