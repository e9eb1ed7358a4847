//! Representations as modules: adjoint constructions, twists, duals and Hom
//! spaces, irreducibility, semisimplification and Clifford theory.

pub mod catalogue;
pub mod clifford;
pub mod hom;
pub mod kummer;
pub mod local;
pub mod meataxe;
pub mod module;

pub use local::LocalFieldData;
pub use module::{GModule, Label, ResidualRep};
