use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Element type of tensors and matrices: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Debug + Display + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + 'static {}
