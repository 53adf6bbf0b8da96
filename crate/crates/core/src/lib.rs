pub mod builders;
pub mod bundle;
pub mod character;
pub mod decomp;
pub mod error;
pub mod forms;
pub mod fp;
pub mod integral;
pub mod lattice;
pub mod matrix;
pub mod order;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use forms::LinearForm;
pub use matrix::Matrix;
pub use order::{Element, Order};
pub use scalar::{Prime, Scalar, Valuation};
