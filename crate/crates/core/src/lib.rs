pub mod cells;
pub mod cli;
pub mod counting;
pub mod error;
pub mod family;
pub mod functor;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod monoid;
pub mod torification;

pub use error::{Error, Result};
