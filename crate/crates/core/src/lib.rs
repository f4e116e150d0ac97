pub mod error;
pub mod free;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod module;
pub mod morphism;
pub mod veronese;

pub use error::{Error, Result};
