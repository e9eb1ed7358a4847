//! Finite fields, dense matrices over them, and finite matrix groups.

pub mod field;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod poly1;
pub mod ring;

pub use field::{Elem, Field};
pub use group::{closure, MatrixGroup, Word};
pub use linalg::{commutant_dim, solve_joint_kernel};
pub use matrix::{Matrix, Vector};
