pub mod cli;
pub mod core_engine;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod kernel;
pub mod reduction;

pub use error::{Error, Result};
