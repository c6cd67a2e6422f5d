pub mod cli;
pub mod error;
pub mod exact;
pub mod fock;
pub mod formal;
pub mod verma;
pub mod voa;

pub use error::{Error, Result};
