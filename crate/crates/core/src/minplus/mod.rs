//! Tropical kernels: matrix products and vector convolutions over
//! [`MinPlus`](crate::MinPlus) and [`MaxPlus`](crate::MaxPlus).

mod convolution;
mod matrix;

pub use convolution::{
    convolve, convolve_adaptive, convolve_blocked, convolve_chunked, max_plus_convolution,
    max_plus_convolution_blocked, min_plus_convolution, min_plus_convolution_blocked,
    BLOCKED_THRESHOLD,
};
pub(crate) use convolution::ceil_sqrt;
pub use matrix::{
    max_plus_product, min_plus_product, min_plus_product_tiled, Matrix, NaiveKernel,
    ProductKernel, TiledKernel,
};
