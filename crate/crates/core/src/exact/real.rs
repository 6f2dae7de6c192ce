//! Real subspaces of anti-Hermitian matrices, i.e. real points of
//! subspaces of `gl_N(C)` with respect to the compact conjugation
//! `X -> -X^*`.

use num_rational::BigRational;
use num_traits::Zero;

use super::{kernel, ExactMatrix, Scalar, Subspace};
use crate::error::{CrError, Result};

/// A real-linear span of anti-Hermitian `n x n` matrices, stored as a
/// canonical subspace of `Q^{2n^2}` (real parts, then imaginary parts).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealSubspace {
    n: usize,
    coords: Subspace,
}

fn realify(m: &ExactMatrix) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = m.data().iter().map(|z| Scalar::from_real(z.re.clone())).collect();
    v.extend(m.data().iter().map(|z| Scalar::from_real(z.im.clone())));
    v
}

fn derealify(n: usize, v: &[Scalar]) -> ExactMatrix {
    let nn = n * n;
    let data = (0..nn).map(|k| Scalar::new(v[k].re.clone(), v[nn + k].re.clone())).collect();
    ExactMatrix::from_vec(n, n, data).expect("length 2n^2")
}

/// `-Re tr(XY)`, the invariant inner product on anti-Hermitian matrices.
pub(crate) fn kappa(x: &ExactMatrix, y: &ExactMatrix) -> BigRational {
    let n = x.rows();
    let mut acc = BigRational::zero();
    for i in 0..n {
        for k in 0..n {
            let a = &x[(i, k)];
            let b = &y[(k, i)];
            acc += &a.re * &b.re - &a.im * &b.im;
        }
    }
    -acc
}

impl RealSubspace {
    pub fn zero(n: usize) -> Self {
        RealSubspace { n, coords: Subspace::zero(2 * n * n) }
    }

    /// Real span of the given anti-Hermitian matrices.
    pub fn from_matrices(n: usize, mats: &[ExactMatrix]) -> Result<Self> {
        for m in mats {
            if m.rows() != n || m.cols() != n {
                return Err(CrError::DimensionMismatch { expected: n, found: m.rows() });
            }
            if *m != -&m.conj_transpose() {
                return Err(CrError::Precondition("real span requires anti-Hermitian matrices".into()));
            }
        }
        let vecs: Vec<Vec<Scalar>> = mats.iter().map(realify).collect();
        Ok(RealSubspace { n, coords: Subspace::from_vectors(2 * n * n, &vecs)? })
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn basis(&self) -> Vec<ExactMatrix> {
        self.coords.basis().row_vecs().map(|r| derealify(self.n, r)).collect()
    }

    pub fn contains_matrix(&self, m: &ExactMatrix) -> bool {
        m.rows() == self.n && self.coords.coordinates(&realify(m)).is_some()
    }

    /// Real coordinates of `m` in `basis()`, if `m` lies in the span.
    pub fn coordinates(&self, m: &ExactMatrix) -> Option<Vec<BigRational>> {
        self.coords.coordinates(&realify(m)).map(|c| c.into_iter().map(|s| s.re).collect())
    }

    pub fn combine(&self, coeffs: &[BigRational]) -> ExactMatrix {
        let c: Vec<Scalar> = coeffs.iter().cloned().map(Scalar::from_real).collect();
        derealify(self.n, &self.coords.combine(&c))
    }

    pub fn intersect(&self, other: &RealSubspace) -> Result<RealSubspace> {
        Ok(RealSubspace { n: self.n, coords: self.coords.intersect(&other.coords)? })
    }

    pub fn sum(&self, other: &RealSubspace) -> Result<RealSubspace> {
        Ok(RealSubspace { n: self.n, coords: self.coords.sum(&other.coords)? })
    }

    pub fn contains(&self, other: &RealSubspace) -> Result<bool> {
        self.coords.contains(&other.coords)
    }

    /// Orthogonal complement of `self` inside `ambient` with respect to
    /// `kappa(X, Y) = -Re tr(XY)`.
    pub fn orthogonal_complement_in(&self, ambient: &RealSubspace) -> Result<RealSubspace> {
        let amb = ambient.basis();
        let own = self.basis();
        if own.is_empty() {
            return Ok(ambient.clone());
        }
        let mut sys = ExactMatrix::zeros(own.len(), amb.len());
        for (i, b) in own.iter().enumerate() {
            for (j, a) in amb.iter().enumerate() {
                sys[(i, j)] = Scalar::from_real(kappa(b, a));
            }
        }
        let sol = kernel(&sys);
        let mats: Vec<ExactMatrix> = sol
            .basis()
            .row_vecs()
            .map(|c| {
                let coeffs: Vec<BigRational> = c.iter().map(|s| s.re.clone()).collect();
                ambient.combine(&coeffs)
            })
            .collect();
        RealSubspace::from_matrices(self.n, &mats)
    }

    /// Complex span inside `gl_n`, as a subspace of flattened matrices.
    pub fn complexify(&self) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self.basis().iter().map(ExactMatrix::flatten).collect();
        Subspace::from_vectors(self.n * self.n, &vecs).expect("uniform length")
    }
}

/// Real points `S ∩ u(n)` of a subspace `S` of flattened `n x n` matrices.
///
/// For a conjugation-stable `S` the result has real dimension `dim_C S`.
pub fn real_points(n: usize, s: &Subspace) -> Result<RealSubspace> {
    if s.ambient_dim() != n * n {
        return Err(CrError::DimensionMismatch { expected: n * n, found: s.ambient_dim() });
    }
    let half = Scalar::rational(1, 2);
    let mut candidates = Vec::new();
    for row in s.basis().row_vecs() {
        let m = ExactMatrix::from_vec(n, n, row.to_vec())?;
        let adj = m.conj_transpose();
        // (m + sigma m)/2 and i (m - sigma m)/2 with sigma(m) = -m^*
        candidates.push((&m - &adj).scale(&half));
        candidates.push((&m + &adj).scale(&half.mul_i()));
    }
    let span = RealSubspace::from_matrices(n, &candidates)?;
    // only combinations that stay inside S are real points of S
    let members: Vec<ExactMatrix> = span.basis();
    if members.iter().all(|m| s.coordinates(&m.flatten()).is_some()) {
        return Ok(span);
    }
    // S not conjugation-stable: solve for real combinations landing in S
    let ann = s.annihilator();
    let mut sys = ExactMatrix::zeros(2 * ann.dim(), members.len());
    for (j, m) in members.iter().enumerate() {
        let flat = m.flatten();
        for (i, a) in ann.basis().row_vecs().enumerate() {
            let mut acc = Scalar::zero();
            for (x, y) in a.iter().zip(&flat) {
                acc += &(x * y);
            }
            sys[(2 * i, j)] = Scalar::from_real(acc.re.clone());
            sys[(2 * i + 1, j)] = Scalar::from_real(acc.im.clone());
        }
    }
    let sol = kernel(&sys);
    let mats: Vec<ExactMatrix> = sol
        .basis()
        .row_vecs()
        .map(|c| {
            let coeffs: Vec<BigRational> = c.iter().map(|x| x.re.clone()).collect();
            span.combine(&coeffs)
        })
        .collect();
    RealSubspace::from_matrices(n, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_points_of_sl2_is_su2() {
        let mut vecs = Vec::new();
        for (i, j) in [(0, 1), (1, 0)] {
            vecs.push(ExactMatrix::unit(2, i, j).flatten());
        }
        vecs.push(ExactMatrix::diagonal(&[Scalar::one(), Scalar::from_int(-1)]).flatten());
        let sl2 = Subspace::from_vectors(4, &vecs).unwrap();
        let su2 = real_points(2, &sl2).unwrap();
        assert_eq!(su2.dim(), 3);
        for b in su2.basis() {
            assert_eq!(b, -&b.conj_transpose());
        }
    }

    #[test]
    fn real_points_of_non_stable_line_is_zero() {
        let line = Subspace::from_vectors(4, &[ExactMatrix::unit(2, 0, 1).flatten()]).unwrap();
        assert_eq!(real_points(2, &line).unwrap().dim(), 0);
    }

    #[test]
    fn orthogonal_complement_dimension() {
        let h = ExactMatrix::diagonal(&[Scalar::i(), -Scalar::i()]);
        let mut vecs = vec![h.flatten()];
        vecs.push(ExactMatrix::unit(2, 0, 1).flatten());
        vecs.push(ExactMatrix::unit(2, 1, 0).flatten());
        let su2 = real_points(2, &Subspace::from_vectors(4, &vecs).unwrap()).unwrap();
        let t = RealSubspace::from_matrices(2, &[h]).unwrap();
        let perp = t.orthogonal_complement_in(&su2).unwrap();
        assert_eq!(perp.dim(), 2);
        assert!(perp.intersect(&t).unwrap().dim() == 0);
    }
}
