pub mod cohom;
pub mod components;
pub mod corpus;
pub mod dimension;
pub mod error;
pub mod ffalg;
pub mod genmatrix;
pub mod gmodules;
pub mod pseudochar;

pub use error::{Error, Result};
