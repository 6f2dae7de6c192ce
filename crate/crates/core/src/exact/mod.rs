//! Exact arithmetic over the Gaussian rationals `Q(i)` and the canonical
//! linear algebra (RREF, kernels, spans, intersections) everything else is
//! built on. Nothing in here touches floating point.

mod matrix;
pub mod poly;
mod real;
mod scalar;
mod subspace;

pub use matrix::ExactMatrix;
pub use poly::Poly;
pub use real::{real_points, RealSubspace};
pub use scalar::Scalar;
pub use subspace::{kernel, Subspace};

pub(crate) use scalar::rational_to_f64;

use crate::error::Result;

/// Reduced row-echelon form.
pub fn rref(m: &ExactMatrix) -> ExactMatrix {
    m.rref()
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn member(v: &[Scalar], s: &Subspace) -> Result<bool> {
    s.member(v)
}
