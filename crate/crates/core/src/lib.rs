pub mod algebra;
pub mod birmap;
pub mod deform;
pub mod error;
pub mod jonquieres;
pub mod paths;
pub mod oracle;
pub mod simplicity;
pub mod text;
pub use error::{Error, Result};
