pub mod aaa;
pub mod baselines;
pub mod error;
pub mod experiments;
pub mod helmholtz;
pub mod nep;
pub mod numerics;
pub mod problems;

pub use error::{Error, Result};
pub use num_complex::Complex64;
