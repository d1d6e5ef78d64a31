//! Superoptimal approximation of matrix functions on the unit circle.

pub mod error;
pub mod factorization;
pub mod hankel;
pub mod laurent;
pub mod linalg;
pub mod superopt;
pub mod verify;
pub mod wiener_hopf;

pub use error::{Error, Result};
pub use laurent::MatFun;
