pub mod cyclo;
pub mod linalg;
pub mod projgroup;
pub mod catalog;
pub mod orbits;
pub mod picard;
pub mod rigidity;
pub mod cli;
pub mod error;

pub use error::{Error, Result};
