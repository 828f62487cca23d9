pub mod actions;
pub mod bounds;
pub mod code;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod pascal;
pub mod search;
pub mod toeplitz;

pub use error::{Error, Result};
pub use field::{Elem, Gf, Modulus};
pub use matrix::DenseMatrix;
pub use toeplitz::{IndexPair, LtToeplitz};
