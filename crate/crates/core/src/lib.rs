pub mod characters;
pub mod cli;
pub mod error;
pub mod fields;
pub mod frac;
pub mod hypergeo;
pub mod padics;
pub mod varieties;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{FieldCtx, Fq};
