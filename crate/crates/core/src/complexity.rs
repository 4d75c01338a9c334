//! Closed-form operation-count models for the direct contraction, the
//! train-based contraction kernel and the decomposition overhead.
//!
//! Counts are multiply-accumulate pairs counted as one operation, held as
//! arbitrary-precision integers: the uniform direct-contraction count grows
//! like `I^(2N-1)` and overflows any machine word long before the sizes of
//! interest.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::shape::Shape;

/// A labelled exact operation count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpsModel {
    pub label: String,
    pub count: BigUint,
}

impl OpsModel {
    pub fn new(label: impl Into<String>, count: BigUint) -> Self {
        OpsModel { label: label.into(), count }
    }
}

/// Multiply-accumulate count of the direct contraction `x ×ₙᵐ y`: every
/// output entry sums over the shared mode, so the count is the product of
/// all of x's dimensions with y's non-contracted dimensions.
pub fn tcp_ops(x_shape: &Shape, y_shape: &Shape, n: usize, m: usize) -> Result<BigUint> {
    let x_dim = x_shape.dim(n)?;
    let y_dim = y_shape.dim(m)?;
    if x_dim != y_dim {
        return Err(Error::ContractedDimMismatch { n, m, x_dim, y_dim });
    }
    let mut count = BigUint::from(1u32);
    for &d in x_shape.dims() {
        count *= BigUint::from(d);
    }
    for (k, &d) in y_shape.dims().iter().enumerate() {
        if k != m - 1 {
            count *= BigUint::from(d);
        }
    }
    Ok(count)
}

/// Uniform-dimension direct-contraction count `I^(2N-1)` for two order-N
/// tensors with every mode of size `I`.
pub fn tcp_ops_uniform(i: usize, n_order: usize) -> BigUint {
    assert!(i >= 1 && n_order >= 1, "dimension and order must be positive");
    BigUint::from(i).pow(2 * n_order as u32 - 1)
}

/// Kernel count of the train-based contraction: `R_1 · I_n · P_1`,
/// independent of the tensor orders.
pub fn ttcp_ops(i_n: usize, r1: usize, p1: usize) -> BigUint {
    assert!(i_n >= 1 && r1 >= 1 && p1 >= 1, "inputs must be positive");
    BigUint::from(r1) * BigUint::from(i_n) * BigUint::from(p1)
}

/// Decomposition overhead when an operand is not yet in train form:
/// `I^(N-1) · R²` for uniform dimension `I` and rank `R`.
pub fn ttd_ops(i: usize, n_order: usize, r: usize) -> BigUint {
    assert!(i >= 1 && n_order >= 1 && r >= 1, "inputs must be positive");
    BigUint::from(i).pow(n_order as u32 - 1) * BigUint::from(r) * BigUint::from(r)
}

/// Advantage of the kernel over the direct count at uniform dimensions:
/// `I^(2N-1) / (I·R²)` as an exact integer quotient (remainder discarded).
pub fn speedup_ratio(i: usize, n_order: usize, r: usize) -> BigUint {
    tcp_ops_uniform(i, n_order) / ttcp_ops(i, r, r)
}

/// The four models evaluated at one uniform `(I, N, R)` grid point, labelled
/// with the column names the CLI table uses.
pub fn uniform_models(i: usize, n_order: usize, r: usize) -> [OpsModel; 4] {
    [
        OpsModel::new("tcp_ops", tcp_ops_uniform(i, n_order)),
        OpsModel::new("ttcp_ops", ttcp_ops(i, r, r)),
        OpsModel::new("ttd_ops", ttd_ops(i, n_order, r)),
        OpsModel::new("speedup", speedup_ratio(i, n_order, r)),
    ]
}
