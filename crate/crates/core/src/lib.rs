//! Dense tensor algebra with a tensor-train fast path for contractions.
//!
//! The crate is organized around one pair of operations:
//!
//! * [`tcp`]: the tensor contraction product `Z = X ×ₙᵐ Y`, computed by the
//!   literal nested-loop summation. It is the correctness oracle.
//! * [`ttcp()`]: the same contraction computed by permuting the contracted
//!   modes to the front, decomposing both operands into tensor trains
//!   (TT-SVD), and fusing the two trains through a single small matrix
//!   multiplication `K = AₓᵀA_y`.
//!
//! Supporting machinery: [`DenseTensor`] with little-endian linear storage
//! (first mode varies fastest), mode-n unfolding/folding, a one-sided Jacobi
//! SVD with δ-truncation, exact big-integer operation-count models, and the
//! `TT1`/`TTD1` file formats used by the CLI.
//!
//! All multi-indices, linear indices and mode numbers at the public API are
//! 1-based, mirroring the usual tensor-algebra conventions. Internal offset
//! arithmetic is 0-based.

pub mod complexity;
pub mod contract;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod shape;
pub mod tensor;
pub mod tt;
pub mod ttcp;

pub use contract::{mode_n_product, tcp};
pub use error::{Error, Result};
pub use linalg::{matmul, svd, truncated_svd, SVDResult};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use shape::Shape;
pub use tensor::DenseTensor;
pub use tt::{tt_reconstruct, tt_relative_error, tt_svd, TTDecomposition};
pub use ttcp::{kernel_matrix, ttcp, ttcp_from_tt, ContractionSpec, TTCPResult};

/// Double-precision tensor, the type the CLI and file formats work with.
pub type Tensor64 = DenseTensor<f64>;
/// Single-precision tensor.
pub type Tensor32 = DenseTensor<f32>;
/// Double-precision matrix.
pub type Matrix64 = Matrix<f64>;
/// Single-precision matrix.
pub type Matrix32 = Matrix<f32>;
