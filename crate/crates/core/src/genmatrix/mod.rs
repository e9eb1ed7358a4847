//! Generic matrices: presentations, invariants, and brute-force fibres.

pub mod agen;
pub mod fibre;
pub mod invariants;
pub mod poly;
pub mod words;

pub use agen::{build_agen, verify_example_3_5, Example35Report, GenericAlgebraPresentation, NcPoly};
pub use fibre::{fibre_enumerate, tangent_dim, FibrePoint, FibreResult};
pub use invariants::{orbit_is_closed, trace_invariants, TraceInvariants};
pub use poly::{Poly, PolyRing};
