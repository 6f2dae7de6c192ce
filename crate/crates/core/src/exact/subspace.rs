use serde::{Deserialize, Serialize};

use super::{ExactMatrix, Scalar};
use crate::error::{CrError, Result};

/// A linear subspace of `Q(i)^d`, always stored by its reduced row-echelon
/// basis so that equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: ExactMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_matrix(&ExactMatrix::identity(ambient_dim))
    }

    /// Row space of `m`, canonicalized.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let basis = if pivots.is_empty() {
            ExactMatrix::zeros(0, m.cols())
        } else {
            let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
            ExactMatrix::from_rows(rows).expect("uniform rows")
        };
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(CrError::DimensionMismatch { expected: ambient_dim, found: bad.len() });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        Ok(Self::from_matrix(&ExactMatrix::from_rows(vectors.to_vec())?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Always true: construction canonicalizes.
    pub fn canonical(&self) -> bool {
        true
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs().map(<[Scalar]>::to_vec).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(CrError::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Annihilator under the bilinear pairing `x . y = sum x_i y_i`; a vector
    /// lies in `self` iff it pairs to zero with every annihilator row.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let stacked = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        if stacked.rows() == 0 {
            return Ok(Self::full(self.ambient_dim));
        }
        Ok(kernel(&stacked))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. For an RREF basis these are the entries at the pivots.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(self.basis.row_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &(c * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn member(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(CrError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(self.coordinates(v).is_some())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.row_vecs().all(|r| self.coordinates(r).is_some()))
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (c, row) in coeffs.iter().zip(self.basis.row_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o += &(c * b);
                }
            }
        }
        out
    }

    /// Image under a coordinate-wise map, re-canonicalized.
    pub fn map_vectors<F>(&self, f: F) -> Result<Subspace>
    where
        F: Fn(&[Scalar]) -> Vec<Scalar>,
    {
        let images: Vec<Vec<Scalar>> = self.basis.row_vecs().map(f).collect();
        let dim = images.first().map_or(self.ambient_dim, Vec::len);
        Self::from_vectors(dim, &images)
    }
}

/// `{v : m v = 0}` as a canonical subspace of dimension `cols - rank`.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let cols = m.cols();
    let (r, pivots) = m.rref_with_pivots();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect();
    Subspace::from_vectors(cols, &vectors).expect("kernel vectors have ambient length")
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ambient_dim: usize,
            basis: Vec<Vec<Scalar>>,
        }
        let raw = Raw::deserialize(d)?;
        Subspace::from_vectors(raw.ambient_dim, &raw.basis).map_err(serde::de::Error::custom)
    }
}
