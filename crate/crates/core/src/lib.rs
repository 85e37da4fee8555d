pub mod algebra;
pub mod clifford;
pub mod complexes;
pub mod constructions;
pub mod error;
pub mod gen;
pub mod io;
pub mod kcert;
pub mod supermod;

pub use error::{Error, Result};
