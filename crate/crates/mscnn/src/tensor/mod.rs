//! Dense tensor kernel: the layer forward/backward passes and the optimizer.
//!
//! Everything here is a pure function of its inputs; the only mutation is the
//! in-place parameter update in [`sgd_step`]. Activations are `C x H x W`,
//! filter banks `Cout x Cin x K x K`, both row-major. Arithmetic is `f32` by
//! default; every operation is also instantiated for `f64` so gradient checks
//! are not drowned by rounding.

mod conv;
mod ops;
mod sgd;

pub use conv::{conv2d_backward, conv2d_forward, ConvLayer};
pub use ops::{
    concat_channels, maxpool2x2_backward, maxpool2x2_forward, relu_backward, relu_forward,
    split_channels, PoolIndices,
};
pub use sgd::{sgd_step, OptimizerState};

use std::fmt;

/// Scalar types tensors can hold. Implemented for `f32` and `f64`.
pub trait Element:
    num_traits::Float + num_traits::NumAssign + num_traits::FromPrimitive + Send + Sync + fmt::Debug + 'static
{
    /// `C = alpha * A * B + beta * C` over raw row/column strides.
    #[allow(clippy::too_many_arguments)]
    unsafe fn gemm(
        m: usize,
        k: usize,
        n: usize,
        alpha: Self,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    );
}

impl Element for f32 {
    unsafe fn gemm(
        m: usize,
        k: usize,
        n: usize,
        alpha: Self,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    ) {
        matrixmultiply::sgemm(m, k, n, alpha, a, rsa, csa, b, rsb, csb, beta, c, rsc, csc)
    }
}

impl Element for f64 {
    unsafe fn gemm(
        m: usize,
        k: usize,
        n: usize,
        alpha: Self,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    ) {
        matrixmultiply::dgemm(m, k, n, alpha, a, rsa, csa, b, rsb, csb, beta, c, rsc, csc)
    }
}

/// Errors from tensor construction and layer operations.
#[derive(Clone, Debug, PartialEq)]
pub enum TensorError {
    /// Supplied data length does not match the product of the shape extents.
    DataLength { shape: Vec<usize>, expected: usize, got: usize },
    /// An operation received a tensor of the wrong shape.
    ShapeMismatch { op: &'static str, expected: Vec<usize>, got: Vec<usize> },
    /// An operation required a specific rank.
    RankMismatch { op: &'static str, expected: usize, got: usize },
    /// Max pooling requires even spatial extents.
    OddExtent { op: &'static str, height: usize, width: usize },
    /// Channel concatenation needs at least one part.
    EmptyConcat,
    /// The requested channel split does not cover the tensor.
    BadSplit { channels: usize, requested: usize },
    /// Convolution output would be empty for the given kernel/pad.
    EmptyOutput { input: Vec<usize>, kernel: usize, pad: usize },
    /// A gradient tensor contained NaN or infinity.
    NonFiniteGradient { param_index: usize },
    /// Optimizer state does not mirror the parameter list.
    StateMismatch { params: usize, grads: usize, velocity: usize },
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::DataLength { shape, expected, got } => {
                write!(f, "data length {got} does not match shape {shape:?} (expected {expected})")
            }
            TensorError::ShapeMismatch { op, expected, got } => {
                write!(f, "{op}: shape mismatch, expected {expected:?} but got {got:?}")
            }
            TensorError::RankMismatch { op, expected, got } => {
                write!(f, "{op}: expected rank-{expected} tensor, got rank {got}")
            }
            TensorError::OddExtent { op, height, width } => {
                write!(f, "{op}: spatial extents {height}x{width} must be even")
            }
            TensorError::EmptyConcat => write!(f, "concat_channels: need at least one part"),
            TensorError::BadSplit { channels, requested } => {
                write!(f, "split_channels: split sizes sum to {requested}, tensor has {channels} channels")
            }
            TensorError::EmptyOutput { input, kernel, pad } => {
                write!(f, "conv2d: kernel {kernel} with pad {pad} yields empty output on input {input:?}")
            }
            TensorError::NonFiniteGradient { param_index } => {
                write!(f, "non-finite gradient in parameter tensor {param_index}")
            }
            TensorError::StateMismatch { params, grads, velocity } => {
                write!(f, "sgd_step: {params} params, {grads} grads, {velocity} velocity tensors")
            }
        }
    }
}

impl std::error::Error for TensorError {}

/// Dense row-major tensor. `C x H x W` for activations, `Cout x Cin x K x K`
/// for filter banks, rank 1 for biases.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T = f32> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T: Element> Tensor<T> {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![T::zero(); len] }
    }

    pub fn filled(shape: &[usize], value: T) -> Self {
        let len = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![value; len] }
    }

    pub fn from_vec(shape: &[usize], data: Vec<T>) -> Result<Self, TensorError> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(TensorError::DataLength { shape: shape.to_vec(), expected, got: data.len() });
        }
        Ok(Tensor { shape: shape.to_vec(), data })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    /// Interpret as `C x H x W`.
    pub fn dims3(&self, op: &'static str) -> Result<(usize, usize, usize), TensorError> {
        match self.shape[..] {
            [c, h, w] => Ok((c, h, w)),
            _ => Err(TensorError::RankMismatch { op, expected: 3, got: self.shape.len() }),
        }
    }

    /// Interpret as `Cout x Cin x Kh x Kw`.
    pub fn dims4(&self, op: &'static str) -> Result<(usize, usize, usize, usize), TensorError> {
        match self.shape[..] {
            [o, i, kh, kw] => Ok((o, i, kh, kw)),
            _ => Err(TensorError::RankMismatch { op, expected: 4, got: self.shape.len() }),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Elementwise sum accumulated in f64.
    pub fn sum_f64(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_length() {
        let err = Tensor::<f32>::from_vec(&[2, 3], vec![0.0; 5]).unwrap_err();
        assert_eq!(err, TensorError::DataLength { shape: vec![2, 3], expected: 6, got: 5 });
        assert!(err.to_string().contains("data length 5"));
    }

    #[test]
    fn zeros_has_right_extent() {
        let t = Tensor::<f64>::zeros(&[3, 4, 5]);
        assert_eq!(t.len(), 60);
        assert_eq!(t.shape(), &[3, 4, 5]);
        assert!(t.all_finite());
    }
}
