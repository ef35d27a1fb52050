pub mod derived;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod rep;
pub mod silting;
pub mod smc;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
