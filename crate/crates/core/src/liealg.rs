//! Matrix Lie algebras: brackets, bracket closure, Killing form, radical,
//! nilradical, Jordan-Chevalley decomposition and normalizers.
//!
//! A subalgebra of `gl_N` is stored as a canonical [`Subspace`] of
//! row-major flattened `N x N` matrices.

use serde::{Deserialize, Serialize};

use crate::error::{CrError, Result};
use crate::exact::poly::{characteristic_polynomial, Poly};
use crate::exact::{kernel, ExactMatrix, Scalar, Subspace};
use crate::levi::{hermitian_signature, SignatureTriple};

/// A subspace of `gl_N` together with the record of whether bracket
/// closure has been checked.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieSubalgebra {
    ambient_n: usize,
    space: Subspace,
    verified_closed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JCPair {
    pub semisimple_part: ExactMatrix,
    pub nilpotent_part: ExactMatrix,
}

/// `XY - YX`.
pub fn bracket(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix> {
    let n = x.require_square()?;
    let m = y.require_square()?;
    if n != m {
        return Err(CrError::DimensionMismatch { expected: n, found: m });
    }
    Ok(&(x * y) - &(y * x))
}

fn flat_bracket(n: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let x = ExactMatrix::from_vec(n, n, a.to_vec()).expect("n^2 entries");
    let y = ExactMatrix::from_vec(n, n, b.to_vec()).expect("n^2 entries");
    bracket(&x, &y).expect("same size").flatten()
}

fn trace_pairing(n: usize, a: &[Scalar], b: &[Scalar]) -> Scalar {
    // tr(AB) for flattened A, B
    let mut acc = Scalar::zero();
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            let y = &b[k * n + i];
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

impl LieSubalgebra {
    /// Wraps a subspace after checking bracket closure on basis pairs.
    pub fn new(ambient_n: usize, space: Subspace) -> Result<Self> {
        let alg = LieSubalgebra { ambient_n, space, verified_closed: false };
        alg.check_ambient()?;
        if !alg.is_bracket_closed() {
            return Err(CrError::NotClosed("basis brackets leave the span".into()));
        }
        Ok(LieSubalgebra { verified_closed: true, ..alg })
    }

    pub fn from_matrices(ambient_n: usize, mats: &[ExactMatrix]) -> Result<Self> {
        Self::new(ambient_n, span_of(ambient_n, mats)?)
    }

    /// A subspace that has not (yet) been checked for closure.
    pub fn unverified(ambient_n: usize, space: Subspace) -> Result<Self> {
        let alg = LieSubalgebra { ambient_n, space, verified_closed: false };
        alg.check_ambient()?;
        Ok(alg)
    }

    pub fn zero(ambient_n: usize) -> Self {
        LieSubalgebra { ambient_n, space: Subspace::zero(ambient_n * ambient_n), verified_closed: true }
    }

    /// `sl_N`.
    pub fn special_linear(n: usize) -> Self {
        let mut mats = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    mats.push(ExactMatrix::unit(n, i, j));
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            mats.push(&ExactMatrix::unit(n, i, i) - &ExactMatrix::unit(n, i + 1, i + 1));
        }
        LieSubalgebra { ambient_n: n, space: span_of(n, &mats).expect("sizes agree"), verified_closed: true }
    }

    fn check_ambient(&self) -> Result<()> {
        let want = self.ambient_n * self.ambient_n;
        if self.space.ambient_dim() != want {
            return Err(CrError::DimensionMismatch { expected: want, found: self.space.ambient_dim() });
        }
        Ok(())
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn verified_closed(&self) -> bool {
        self.verified_closed
    }

    pub fn basis(&self) -> Vec<ExactMatrix> {
        self.space
            .basis()
            .row_vecs()
            .map(|r| ExactMatrix::from_vec(self.ambient_n, self.ambient_n, r.to_vec()).expect("n^2"))
            .collect()
    }

    pub fn contains(&self, x: &ExactMatrix) -> bool {
        x.rows() == self.ambient_n && x.cols() == self.ambient_n && self.space.coordinates(x.data()).is_some()
    }

    pub fn contains_algebra(&self, other: &LieSubalgebra) -> Result<bool> {
        self.space.contains(&other.space)
    }

    pub fn coordinates(&self, x: &ExactMatrix) -> Option<Vec<Scalar>> {
        self.space.coordinates(x.data())
    }

    pub fn is_bracket_closed(&self) -> bool {
        let rows: Vec<&[Scalar]> = self.space.basis().row_vecs().collect();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let b = flat_bracket(self.ambient_n, rows[i], rows[j]);
                if self.space.coordinates(&b).is_none() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        let rows: Vec<&[Scalar]> = self.space.basis().row_vecs().collect();
        (0..rows.len())
            .all(|i| (i + 1..rows.len()).all(|j| flat_bracket(self.ambient_n, rows[i], rows[j]).iter().all(Scalar::is_zero)))
    }

    fn require_closed(&self) -> Result<()> {
        if self.verified_closed {
            Ok(())
        } else {
            Err(CrError::NotClosed("operation requires a verified subalgebra".into()))
        }
    }

    /// `[a, b]` as a subspace (span of basis brackets).
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let n = self.ambient_n;
        let mut vecs = Vec::new();
        for x in a.basis().row_vecs() {
            for y in b.basis().row_vecs() {
                let z = flat_bracket(n, x, y);
                if z.iter().any(|s| !s.is_zero()) {
                    vecs.push(z);
                }
            }
        }
        Subspace::from_vectors(n * n, &vecs).expect("uniform length")
    }

    pub fn derived(&self) -> LieSubalgebra {
        let space = self.bracket_span(&self.space, &self.space);
        LieSubalgebra { ambient_n: self.ambient_n, space, verified_closed: true }
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur = self.clone();
        while !cur.space.is_zero() {
            let next = cur.derived();
            if next.dim() == cur.dim() {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Is `w` an ideal of `self`: `[self, w] ⊆ w`.
    pub fn is_ideal(&self, w: &Subspace) -> bool {
        self.space.contains(w).unwrap_or(false)
            && w.contains(&self.bracket_span(&self.space, w)).unwrap_or(false)
    }

    /// Lower central series of the subalgebra `w` reaches zero.
    pub fn is_nilpotent_subalgebra(&self, w: &Subspace) -> bool {
        let mut cur = w.clone();
        while !cur.is_zero() {
            let next = self.bracket_span(w, &cur);
            if next.dim() == cur.dim() {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Matrix of `ad(x)` restricted to this algebra, in its canonical basis.
    pub fn ad_matrix(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        let basis = self.basis();
        let d = basis.len();
        let mut m = ExactMatrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            let img = bracket(x, b)?;
            let coords = self
                .coordinates(&img)
                .ok_or_else(|| CrError::NotClosed("ad(x) leaves the algebra".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    /// Centralizer `{Z in self : [Z, x] = 0}`.
    pub fn centralizer(&self, x: &ExactMatrix) -> Result<LieSubalgebra> {
        let basis = self.basis();
        let n = self.ambient_n;
        let mut sys = ExactMatrix::zeros(n * n, basis.len());
        for (j, b) in basis.iter().enumerate() {
            for (i, v) in bracket(b, x)?.into_data().into_iter().enumerate() {
                sys[(i, j)] = v;
            }
        }
        Ok(self.from_coefficient_kernel(&sys))
    }

    fn from_coefficient_kernel(&self, sys: &ExactMatrix) -> LieSubalgebra {
        let sol = kernel(sys);
        let vecs: Vec<Vec<Scalar>> = sol.basis().row_vecs().map(|c| self.space.combine(c)).collect();
        LieSubalgebra {
            ambient_n: self.ambient_n,
            space: Subspace::from_vectors(self.ambient_n * self.ambient_n, &vecs).expect("uniform length"),
            verified_closed: true,
        }
    }

    /// Image of the subalgebra under an entrywise-linear map of matrices.
    pub fn map<F>(&self, f: F) -> Result<LieSubalgebra>
    where
        F: Fn(&ExactMatrix) -> ExactMatrix,
    {
        let mats: Vec<ExactMatrix> = self.basis().iter().map(f).collect();
        Ok(LieSubalgebra {
            ambient_n: self.ambient_n,
            space: span_of(self.ambient_n, &mats)?,
            verified_closed: self.verified_closed,
        })
    }

    pub fn intersect(&self, other: &LieSubalgebra) -> Result<LieSubalgebra> {
        let space = self.space.intersect(&other.space)?;
        Ok(LieSubalgebra {
            ambient_n: self.ambient_n,
            space,
            verified_closed: self.verified_closed && other.verified_closed,
        })
    }
}

pub fn span_of(n: usize, mats: &[ExactMatrix]) -> Result<Subspace> {
    for m in mats {
        if m.rows() != n || m.cols() != n {
            return Err(CrError::DimensionMismatch { expected: n, found: m.rows() });
        }
    }
    let vecs: Vec<Vec<Scalar>> = mats.iter().map(ExactMatrix::flatten).collect();
    Subspace::from_vectors(n * n, &vecs)
}

/// Smallest bracket-closed subspace containing `seed`.
pub fn close_under_bracket(seed: &Subspace, ambient_n: usize) -> Result<LieSubalgebra> {
    let n = ambient_n;
    if seed.ambient_dim() != n * n {
        return Err(CrError::DimensionMismatch { expected: n * n, found: seed.ambient_dim() });
    }
    let mut space = seed.clone();
    loop {
        let rows = space.basis_vectors();
        let mut vecs = rows.clone();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                vecs.push(flat_bracket(n, &rows[i], &rows[j]));
            }
        }
        let next = Subspace::from_vectors(n * n, &vecs)?;
        if next.dim() == space.dim() {
            return Ok(LieSubalgebra { ambient_n: n, space, verified_closed: true });
        }
        space = next;
    }
}

/// Gram matrix of `trace(ad X_i ∘ ad X_j)` in the canonical basis of `g`.
pub fn killing_form(g: &LieSubalgebra) -> Result<ExactMatrix> {
    g.require_closed()?;
    let ads: Vec<ExactMatrix> = g.basis().iter().map(|x| g.ad_matrix(x)).collect::<Result<_>>()?;
    killing_gram(&ads)
}

fn killing_gram(ads: &[ExactMatrix]) -> Result<ExactMatrix> {
    let d = ads.len();
    let mut gram = ExactMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = (&ads[i] * &ads[j]).trace();
            gram[(j, i)] = v.clone();
            gram[(i, j)] = v;
        }
    }
    Ok(gram)
}

/// Killing Gram matrix on an explicit (e.g. real) basis of a subalgebra of `g`.
pub fn killing_form_on(g: &LieSubalgebra, basis: &[ExactMatrix]) -> Result<ExactMatrix> {
    g.require_closed()?;
    let ads: Vec<ExactMatrix> = basis.iter().map(|x| g.ad_matrix(x)).collect::<Result<_>>()?;
    killing_gram(&ads)
}

/// Maximal solvable ideal.
///
/// Computed as the orthogonal of `[v, v]` for the trace form of the
/// defining (faithful) representation, then checked to be a solvable ideal.
pub fn radical(v: &LieSubalgebra) -> Result<LieSubalgebra> {
    v.require_closed()?;
    let n = v.ambient_n;
    let derived = v.derived();
    let basis_rows: Vec<&[Scalar]> = v.space.basis().row_vecs().collect();
    let dv: Vec<&[Scalar]> = derived.space.basis().row_vecs().collect();
    let mut sys = ExactMatrix::zeros(dv.len(), basis_rows.len());
    for (i, y) in dv.iter().enumerate() {
        for (j, x) in basis_rows.iter().enumerate() {
            sys[(i, j)] = trace_pairing(n, x, y);
        }
    }
    let rad = v.from_coefficient_kernel(&sys);
    if !v.is_ideal(&rad.space) || !rad.is_solvable() {
        return Err(CrError::Inconsistent("trace-form radical is not a solvable ideal".into()));
    }
    Ok(rad)
}

/// Associative subalgebra of `gl_N` generated by `v` and the identity.
fn enveloping_associative(v: &LieSubalgebra) -> Subspace {
    let n = v.ambient_n;
    let gens = v.basis();
    let mut vecs = vec![ExactMatrix::identity(n).flatten()];
    vecs.extend(gens.iter().map(ExactMatrix::flatten));
    let mut space = Subspace::from_vectors(n * n, &vecs).expect("uniform length");
    let mut frontier: Vec<ExactMatrix> = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                let prod = a * g;
                if space.coordinates(prod.data()).is_none() {
                    space = space.sum(&Subspace::from_vectors(n * n, &[prod.flatten()]).unwrap()).unwrap();
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    space
}

/// Largest ideal of `v` consisting of nilpotent matrices, i.e. the
/// elements of `radical(v)` that are nilpotent in the defining
/// representation.
///
/// Computed as `rad(v) ∩ Rad(A)` where `A` is the associative envelope of
/// `v`; the Jacobson radical of a matrix algebra in characteristic zero is
/// `{a in A : tr(ab) = 0 for all b in A}`.
pub fn nilradical(v: &LieSubalgebra) -> Result<LieSubalgebra> {
    let rad = radical(v)?;
    let n = v.ambient_n;
    let env = enveloping_associative(v);
    let env_rows: Vec<&[Scalar]> = env.basis().row_vecs().collect();
    let rad_rows: Vec<&[Scalar]> = rad.space.basis().row_vecs().collect();
    let mut sys = ExactMatrix::zeros(env_rows.len(), rad_rows.len());
    for (i, b) in env_rows.iter().enumerate() {
        for (j, x) in rad_rows.iter().enumerate() {
            sys[(i, j)] = trace_pairing(n, x, b);
        }
    }
    let nil = rad.from_coefficient_kernel(&sys);
    if !v.is_ideal(&nil.space) || !v.is_nilpotent_subalgebra(&nil.space) {
        return Err(CrError::Inconsistent("nilradical is not a nilpotent ideal".into()));
    }
    if nil.basis().iter().any(|x| !x.pow(n as u32).is_zero()) {
        return Err(CrError::Inconsistent("nilradical contains a non-nilpotent matrix".into()));
    }
    Ok(nil)
}

/// `X = X_s + X_n` via Newton iteration against the squarefree part of the
/// characteristic polynomial; `X_s` ends up a polynomial in `X`.
pub fn jordan_chevalley(x: &ExactMatrix) -> Result<JCPair> {
    let n = x.require_square()?;
    let s = characteristic_polynomial(x).squarefree_part();
    let ds = s.derivative();
    let mut cur = x.clone();
    for _ in 0..=n + 1 {
        let val = s.eval_matrix(&cur);
        if val.is_zero() {
            let nil = x - &cur;
            return Ok(JCPair { semisimple_part: cur, nilpotent_part: nil });
        }
        let deriv = ds.eval_matrix(&cur);
        let inv = deriv
            .inverse()
            .ok_or_else(|| CrError::Inconsistent("s'(X_k) singular during Newton iteration".into()))?;
        cur = &cur - &(&val * &inv);
    }
    Err(CrError::Inconsistent("Jordan-Chevalley iteration did not terminate".into()))
}

/// Does `v = candidate ⊕ nilradical(v)` with `candidate` free of nonzero
/// nilpotent ideals.
pub fn splittable_decomposition(v: &LieSubalgebra, candidate: &LieSubalgebra) -> Result<bool> {
    v.require_closed()?;
    candidate.require_closed()?;
    if !v.contains_algebra(candidate)? {
        return Err(CrError::NotContained("candidate is not a subalgebra of v".into()));
    }
    let nil = nilradical(v)?;
    if candidate.dim() + nil.dim() != v.dim() {
        return Ok(false);
    }
    if !candidate.space.intersect(&nil.space)?.is_zero() {
        return Ok(false);
    }
    Ok(nilradical(candidate)?.dim() == 0)
}

/// `{Z in g : [Z, w] ⊆ w}`.
pub fn normalizer_of_subspace(g: &LieSubalgebra, w: &Subspace) -> Result<LieSubalgebra> {
    let n = g.ambient_n;
    if w.ambient_dim() != n * n {
        return Err(CrError::DimensionMismatch { expected: n * n, found: w.ambient_dim() });
    }
    if !g.space.contains(w)? {
        return Err(CrError::NotContained("w is not inside g".into()));
    }
    if w.is_zero() {
        return Ok(g.clone());
    }
    let ann = w.annihilator();
    let ann_rows: Vec<&[Scalar]> = ann.basis().row_vecs().collect();
    let g_rows: Vec<&[Scalar]> = g.space.basis().row_vecs().collect();
    let w_rows: Vec<&[Scalar]> = w.basis().row_vecs().collect();
    let mut sys = ExactMatrix::zeros(ann_rows.len() * w_rows.len(), g_rows.len());
    for (j, z) in g_rows.iter().enumerate() {
        for (k, wv) in w_rows.iter().enumerate() {
            let br = flat_bracket(n, z, wv);
            for (a, an) in ann_rows.iter().enumerate() {
                let mut acc = Scalar::zero();
                for (p, q) in an.iter().zip(&br) {
                    if !p.is_zero() && !q.is_zero() {
                        acc += &(p * q);
                    }
                }
                sys[(k * ann_rows.len() + a, j)] = acc;
            }
        }
    }
    Ok(g.from_coefficient_kernel(&sys))
}

/// Exact test that the Killing form on a real-spanned basis has no
/// positive direction. The basis must span a real form so the Gram matrix
/// is real symmetric.
pub fn is_killing_negative_semidefinite(g: &LieSubalgebra, real_basis: &[ExactMatrix]) -> Result<bool> {
    let gram = killing_form_on(g, real_basis)?;
    let sig: SignatureTriple = hermitian_signature(&gram)?;
    Ok(sig.plus == 0)
}

/// Minimal polynomial of `m` is squarefree (i.e. `m` is diagonalizable).
pub fn is_semisimple_matrix(m: &ExactMatrix) -> bool {
    crate::exact::poly::minimal_polynomial(m).is_squarefree()
}

/// Polynomial `p` such that `p(X) = X_s`, recovered for callers that want
/// to check that the semisimple part is a polynomial in `X`.
pub fn semisimple_polynomial(x: &ExactMatrix) -> Result<Poly> {
    let pair = jordan_chevalley(x)?;
    let n = x.rows();
    // solve sum c_k X^k = X_s
    let mut powers = vec![ExactMatrix::identity(n)];
    for k in 1..n.max(1) {
        powers.push(&powers[k - 1] * x);
    }
    let mut sys = ExactMatrix::zeros(n * n, powers.len() + 1);
    for (k, p) in powers.iter().enumerate() {
        for (r, v) in p.data().iter().enumerate() {
            sys[(r, k)] = v.clone();
        }
    }
    for (r, v) in pair.semisimple_part.data().iter().enumerate() {
        sys[(r, powers.len())] = v.clone();
    }
    let (red, pivots) = sys.rref_with_pivots();
    if pivots.last() == Some(&powers.len()) {
        return Err(CrError::Inconsistent("X_s is not a polynomial in X".into()));
    }
    let mut coeffs = vec![Scalar::zero(); powers.len()];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[(row, powers.len())].clone();
    }
    Ok(Poly::new(coeffs))
}

/// JSON form `{ambient_n, basis: [matrix, ...]}`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LieSubalgebraJson {
    pub ambient_n: usize,
    pub basis: Vec<ExactMatrix>,
}

impl Serialize for LieSubalgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieSubalgebraJson { ambient_n: self.ambient_n, basis: self.basis() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieSubalgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LieSubalgebraJson::deserialize(d)?;
        LieSubalgebra::from_matrices(raw.ambient_n, &raw.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> ExactMatrix {
        ExactMatrix::from_ints(&[&[1, 0], &[0, -1]])
    }
    fn e() -> ExactMatrix {
        ExactMatrix::unit(2, 0, 1)
    }
    fn f() -> ExactMatrix {
        ExactMatrix::unit(2, 1, 0)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&e(), &f()).unwrap(), h());
        assert!(bracket(&h(), &h()).unwrap().is_zero());
        assert_eq!(bracket(&h(), &e()).unwrap(), e().scale(&Scalar::from_int(2)));
        assert!(bracket(&h(), &ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn closure_examples() {
        let seed = span_of(2, &[e()]).unwrap();
        assert_eq!(close_under_bracket(&seed, 2).unwrap().dim(), 1);
        let seed = span_of(2, &[e(), f()]).unwrap();
        let g = close_under_bracket(&seed, 2).unwrap();
        assert_eq!(g, LieSubalgebra::special_linear(2));
        let seed = span_of(2, &[h()]).unwrap();
        assert_eq!(close_under_bracket(&seed, 2).unwrap().space(), &seed);
    }

    #[test]
    fn killing_form_sl2() {
        let g = LieSubalgebra::special_linear(2);
        let gram = killing_form_on(&g, &[h(), e(), f()]).unwrap();
        assert_eq!(gram[(0, 0)], Scalar::from_int(8));
        assert_eq!(gram[(1, 2)], Scalar::from_int(4));
        assert_eq!(gram[(1, 1)], Scalar::zero());
        assert_eq!(gram[(2, 2)], Scalar::zero());
        let abelian = LieSubalgebra::from_matrices(2, &[h()]).unwrap();
        assert!(killing_form(&abelian).unwrap().is_zero());
    }

    #[test]
    fn killing_form_requires_closure() {
        let s = span_of(2, &[e(), f()]).unwrap();
        let open = LieSubalgebra::unverified(2, s.clone()).unwrap();
        assert!(killing_form(&open).is_err());
        assert!(LieSubalgebra::new(2, s).is_err());
    }

    #[test]
    fn su2_and_sl2r_semidefiniteness() {
        let g = LieSubalgebra::special_linear(2);
        let i = Scalar::i();
        let su2 = [h().scale(&i), &e() - &f(), (&e() + &f()).scale(&i)];
        assert!(is_killing_negative_semidefinite(&g, &su2).unwrap());
        assert!(!is_killing_negative_semidefinite(&g, &[h(), e(), f()]).unwrap());
        let abelian = LieSubalgebra::from_matrices(2, &[h()]).unwrap();
        assert!(is_killing_negative_semidefinite(&abelian, &[h().scale(&i)]).unwrap());
    }

    #[test]
    fn jordan_chevalley_examples() {
        let d = ExactMatrix::from_ints(&[&[3, 0], &[0, -1]]);
        let jc = jordan_chevalley(&d).unwrap();
        assert_eq!(jc.semisimple_part, d);
        assert!(jc.nilpotent_part.is_zero());

        let u = ExactMatrix::from_ints(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let jc = jordan_chevalley(&u).unwrap();
        assert!(jc.semisimple_part.is_zero());
        assert_eq!(jc.nilpotent_part, u);

        let x = ExactMatrix::from_ints(&[&[1, 1], &[0, -1]]);
        let jc = jordan_chevalley(&x).unwrap();
        assert_eq!(jc.semisimple_part, x);
        assert!(jc.nilpotent_part.is_zero());

        let j = ExactMatrix::from_ints(&[&[2, 1], &[0, 2]]);
        let jc = jordan_chevalley(&j).unwrap();
        assert_eq!(jc.semisimple_part, ExactMatrix::from_ints(&[&[2, 0], &[0, 2]]));
        assert!(semisimple_polynomial(&j).is_ok());
    }

    #[test]
    fn radical_examples() {
        let borel = LieSubalgebra::from_matrices(2, &[h(), e()]).unwrap();
        assert_eq!(radical(&borel).unwrap(), borel);
        assert_eq!(radical(&LieSubalgebra::special_linear(2)).unwrap().dim(), 0);
    }

    #[test]
    fn radical_of_reductive_plus_solvable() {
        // gl_2 ⊕ (Borel of gl_1 ⊕ gl_1 acting on e3,e4) inside gl_4, kept traceless-free
        let mut mats = Vec::new();
        for (i, j) in [(0, 1), (1, 0)] {
            mats.push(ExactMatrix::unit(4, i, j));
        }
        mats.push(&ExactMatrix::unit(4, 0, 0) - &ExactMatrix::unit(4, 1, 1));
        mats.push(&(&ExactMatrix::unit(4, 0, 0) + &ExactMatrix::unit(4, 1, 1)) - &ExactMatrix::unit(4, 2, 2).scale(&Scalar::from_int(2)));
        mats.push(ExactMatrix::unit(4, 2, 3));
        let v = LieSubalgebra::from_matrices(4, &mats).unwrap();
        let rad = radical(&v).unwrap();
        assert_eq!(rad.dim(), 2);
        assert!(rad.contains(&ExactMatrix::unit(4, 2, 3)));
        assert_eq!(nilradical(&v).unwrap().dim(), 1);
    }

    #[test]
    fn nilradical_examples() {
        let borel = LieSubalgebra::from_matrices(2, &[h(), e()]).unwrap();
        assert_eq!(nilradical(&borel).unwrap(), LieSubalgebra::from_matrices(2, &[e()]).unwrap());
        let torus = LieSubalgebra::from_matrices(3, &[
            ExactMatrix::diagonal(&[Scalar::one(), Scalar::from_int(-1), Scalar::zero()]),
            ExactMatrix::diagonal(&[Scalar::zero(), Scalar::one(), Scalar::from_int(-1)]),
        ])
        .unwrap();
        assert_eq!(nilradical(&torus).unwrap().dim(), 0);
        let upper = LieSubalgebra::from_matrices(3, &[
            ExactMatrix::unit(3, 0, 1),
            ExactMatrix::unit(3, 0, 2),
            ExactMatrix::unit(3, 1, 2),
        ])
        .unwrap();
        assert_eq!(nilradical(&upper).unwrap(), upper);
        let line = LieSubalgebra::from_matrices(2, &[&h() + &e()]).unwrap();
        assert_eq!(nilradical(&line).unwrap().dim(), 0);
    }

    #[test]
    fn splittable_examples() {
        let borel = LieSubalgebra::from_matrices(2, &[h(), e()]).unwrap();
        let cartan = LieSubalgebra::from_matrices(2, &[h()]).unwrap();
        assert!(splittable_decomposition(&borel, &cartan).unwrap());
        let sl2 = LieSubalgebra::special_linear(2);
        assert!(splittable_decomposition(&sl2, &sl2).unwrap());
        assert!(!splittable_decomposition(&borel, &LieSubalgebra::zero(2)).unwrap());
        assert!(splittable_decomposition(&cartan, &borel).is_err());
    }

    #[test]
    fn normalizer_examples() {
        let sl2 = LieSubalgebra::special_linear(2);
        let w = span_of(2, &[e()]).unwrap();
        let nz = normalizer_of_subspace(&sl2, &w).unwrap();
        assert_eq!(nz, LieSubalgebra::from_matrices(2, &[h(), e()]).unwrap());
        assert_eq!(normalizer_of_subspace(&sl2, sl2.space()).unwrap(), sl2);
        assert_eq!(normalizer_of_subspace(&sl2, &Subspace::zero(4)).unwrap(), sl2);
    }

    #[test]
    fn json_roundtrip_and_rejects_open_basis() {
        let borel = LieSubalgebra::from_matrices(2, &[h(), e()]).unwrap();
        let text = serde_json::to_string(&borel).unwrap();
        assert_eq!(serde_json::from_str::<LieSubalgebra>(&text).unwrap(), borel);
        let bad = r#"{"ambient_n":2,"basis":[[["0","1"],["0","0"]],[["0","0"],["1","0"]]]}"#;
        let err = serde_json::from_str::<LieSubalgebra>(bad).unwrap_err();
        assert!(err.to_string().contains("not a subalgebra"));
    }
}
