pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod local;
pub mod oracle;
pub mod reconstruct;
pub mod verify;

pub use error::{Error, Result};
