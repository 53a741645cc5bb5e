pub mod bergman;
pub mod disk_spectrum;
pub mod error;
pub mod geometry;
pub mod hardy;
pub mod mps;
pub mod param_map;
pub mod roots;
pub mod shape_opt;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;
