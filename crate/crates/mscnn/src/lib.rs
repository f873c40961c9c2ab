//! Crowd counting with a multi-scale convolutional network, implemented from
//! scratch on the CPU.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`tensor`] — dense tensors, convolution forward/backward, ReLU, 2x2 max
//!   pooling, channel concatenation, and SGD with momentum.
//! - [`density`] — geometry-adaptive Gaussian density maps rendered from head
//!   annotations, with count extraction and sum-preserving downsampling.
//! - [`model`] — the multi-scale network itself (feature remap, multi-scale
//!   blobs, pixel-wise regression head), its loss, parameter audit, and a
//!   binary checkpoint format.
//! - [`trainer`] — crop/flip augmentation, the SGD training loop, and k-fold
//!   split orchestration.
//! - [`metrics`] — MAE / MSE / PARAMS evaluation and pooled k-fold reports.
//! - [`io`] — PGM images, DMAP density files, JSON annotations, and a
//!   synthetic dot-scene generator.
//! - [`cli`] — the `mscnn` command-line surface tying everything together.

pub mod cli;
pub mod density;
pub mod io;
pub mod metrics;
pub mod model;
pub mod rng;
pub mod tensor;
pub mod trainer;

pub use density::{DensityMap, HeadAnnotations, KernelParams};
pub use model::{Model, ModelSpec};
pub use tensor::Tensor;
pub use trainer::{Sample, TrainConfig};
