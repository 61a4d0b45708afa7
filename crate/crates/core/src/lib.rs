pub mod algebra;
pub mod catalog;
pub mod classifier;
pub mod error;
pub mod field;
pub mod integer;
pub mod invariants;
pub mod kuelshammer;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod rewriting;
pub mod selftest;
pub mod truncation;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
