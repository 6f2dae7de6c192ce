//! Exact computations for compact homogeneous CR manifolds: matrix Lie
//! algebras over `Q(i)`, CR algebras and their invariants, type-A root
//! data, Levi forms, the `SU(p,q)`-orbits in Grassmannians and a numeric
//! probe of the Mostow fibration.

pub mod cralg;
pub mod error;
pub mod exact;
pub mod grassmann;
pub mod levi;
pub mod liealg;
pub mod mostow;
pub mod roots;

pub use error::{CrError, Result};
