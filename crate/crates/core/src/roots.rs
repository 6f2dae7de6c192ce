//! Type-A root data: Weyl chamber representatives, standard parabolic
//! subalgebras of `sl_N`, and a certified parabolicity test for
//! subalgebras of a conjugation-stable reductive `k ⊆ sl_N`.
//!
//! The Weyl group is realized as the symmetric group permuting diagonal
//! entries. Conjugation throughout is the compact one, `X -> -X^*`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CrError, Result};
use crate::exact::poly::characteristic_polynomial;
use crate::exact::{kernel, real_points, ExactMatrix, RealSubspace, Scalar, Subspace};
use crate::liealg::{span_of, LieSubalgebra};

/// Default bound on generic-element attempts before giving up.
pub const DEFAULT_PARABOLIC_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub ambient_n: usize,
    /// Diagonal traceless matrices.
    pub cartan: Subspace,
    /// `(i, i+1)` pairs (zero-based), standing for `e_i - e_{i+1}`.
    pub simple_roots: Vec<(usize, usize)>,
    /// Real diagonal with strictly decreasing entries.
    pub regular_element: ExactMatrix,
}

impl RootDatum {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(CrError::InvalidParameters("root datum needs N >= 2".into()));
        }
        let diag: Vec<ExactMatrix> = (0..n - 1)
            .map(|i| &ExactMatrix::unit(n, i, i) - &ExactMatrix::unit(n, i + 1, i + 1))
            .collect();
        let entries: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(n as i64 - 1 - 2 * i as i64)).collect();
        Ok(RootDatum {
            ambient_n: n,
            cartan: span_of(n, &diag)?,
            simple_roots: (0..n - 1).map(|i| (i, i + 1)).collect(),
            regular_element: ExactMatrix::diagonal(&entries),
        })
    }

    /// `α_j(H₀)` for every simple root; all strictly positive by construction.
    pub fn simple_root_values(&self) -> Vec<Scalar> {
        self.simple_roots
            .iter()
            .map(|&(i, j)| &self.regular_element[(i, i)] - &self.regular_element[(j, j)])
            .collect()
    }
}

/// The unique weakly decreasing rearrangement of a real diagonal matrix.
pub fn chamber_representative(d: &ExactMatrix) -> Result<ExactMatrix> {
    d.require_square()?;
    if !d.is_diagonal() {
        return Err(CrError::Precondition("chamber representative needs a diagonal matrix".into()));
    }
    let n = d.rows();
    let mut entries: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let z = &d[(i, i)];
        if !z.is_real() {
            return Err(CrError::Precondition("chamber representative needs real entries".into()));
        }
        entries.push(z.re.clone());
    }
    entries.sort_by(|a, b| b.cmp(a));
    let diag: Vec<Scalar> = entries.into_iter().map(Scalar::from_real).collect();
    Ok(ExactMatrix::diagonal(&diag))
}

/// Block upper-triangular subalgebra of `sl_N`; `simple_subset` holds the
/// one-based indices of simple roots whose negatives are also included.
pub fn standard_parabolic(datum: &RootDatum, simple_subset: &BTreeSet<usize>) -> Result<LieSubalgebra> {
    let n = datum.ambient_n;
    if let Some(&bad) = simple_subset.iter().find(|&&j| j == 0 || j >= n) {
        return Err(CrError::InvalidParameters(format!("simple root index {bad} outside 1..{}", n - 1)));
    }
    // block index of each basis vector: cut after position j when j ∉ subset
    let mut block = vec![0usize; n];
    for i in 1..n {
        block[i] = block[i - 1] + usize::from(!simple_subset.contains(&i));
    }
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && block[i] <= block[j] {
                mats.push(ExactMatrix::unit(n, i, j));
            }
        }
    }
    mats.extend(datum.cartan.basis().row_vecs().map(|r| ExactMatrix::from_vec(n, n, r.to_vec()).unwrap()));
    LieSubalgebra::from_matrices(n, &mats)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

pub fn compact_conjugate(x: &ExactMatrix) -> ExactMatrix {
    -&x.conj_transpose()
}

pub fn conjugate_subspace(n: usize, s: &Subspace) -> Subspace {
    s.map_vectors(|v| {
        compact_conjugate(&ExactMatrix::from_vec(n, n, v.to_vec()).expect("n^2")).flatten()
    })
    .expect("same ambient")
}

/// Outcome of the Cartan-and-roots certification for one candidate element.
enum Witness {
    Parabolic(bool),
    Rejected,
}

/// Three-valued parabolicity test for `q ⊆ k`.
///
/// `q + q̄ = k` is checked first (a failure means "no"). Then a rational
/// element of `(q ∩ q̄) ∩ k₀` with regular centralizer is searched for; if
/// found, `q` is decomposed into that Cartan plus root spaces and the root
/// set is tested for `α ∉ R(q) ⇒ -α ∈ R(q)`.
pub fn is_parabolic(k: &LieSubalgebra, q: &LieSubalgebra) -> Result<Verdict> {
    is_parabolic_with(k, q, DEFAULT_PARABOLIC_ATTEMPTS)
}

pub fn is_parabolic_with(k: &LieSubalgebra, q: &LieSubalgebra, max_attempts: usize) -> Result<Verdict> {
    let n = k.ambient_n();
    if !k.contains_algebra(q)? {
        return Err(CrError::NotContained("q is not contained in k".into()));
    }
    let q_bar = conjugate_subspace(n, q.space());
    if q.space().sum(&q_bar)? != *k.space() {
        return Ok(Verdict::No);
    }
    let stable = q.space().intersect(&q_bar)?;
    let reals = real_points(n, &stable)?;
    let diag_reals = reals.intersect(&diagonal_real_span(n)?)?;

    let phases = [diag_reals.basis(), reals.basis()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut attempts = 0;
    for (phase, basis) in phases.iter().enumerate() {
        if basis.is_empty() {
            continue;
        }
        let phase_budget = if phase == 0 { max_attempts / 2 } else { max_attempts };
        let mut phase_attempts = 0;
        while attempts < max_attempts && phase_attempts < phase_budget {
            let coeffs = candidate_coefficients(phase_attempts, basis.len(), &mut rng);
            attempts += 1;
            phase_attempts += 1;
            let mut x = ExactMatrix::zeros(n, n);
            for (c, b) in coeffs.iter().zip(basis) {
                x = &x + &b.scale(&Scalar::from_int(*c));
            }
            if x.is_zero() {
                continue;
            }
            if let Witness::Parabolic(ok) = certify_with(k, q, &x.scale(&Scalar::i()))? {
                return Ok(if ok { Verdict::Yes } else { Verdict::No });
            }
        }
    }
    Ok(Verdict::Undetermined)
}

fn candidate_coefficients(attempt: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    match attempt {
        0 => (1..=len as i64).collect(),
        1 => (1..=len as i64).map(|j| j * j).collect(),
        2 => (1..=len as i64).map(|j| 1 << (j.min(20) - 1)).collect(),
        _ => (0..len).map(|_| rng.random_range(-4..=4)).collect(),
    }
}

fn diagonal_real_span(n: usize) -> Result<RealSubspace> {
    let mats: Vec<ExactMatrix> = (0..n).map(|i| ExactMatrix::unit(n, i, i).scale(&Scalar::i())).collect();
    RealSubspace::from_matrices(n, &mats)
}

/// Tries `y` (Hermitian, rational entries) as the regular element of a
/// certifying Cartan subalgebra.
fn certify_with(k: &LieSubalgebra, q: &LieSubalgebra, y: &ExactMatrix) -> Result<Witness> {
    let n = k.ambient_n();
    let Some(roots) = characteristic_polynomial(y).rational_roots() else {
        return Ok(Witness::Rejected);
    };
    if roots.iter().map(|(_, m)| m).sum::<usize>() != n {
        return Ok(Witness::Rejected);
    }
    // eigenbasis of y
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for (lambda, _) in &roots {
        let shifted = y - &ExactMatrix::identity(n).scale(&Scalar::from_real(lambda.clone()));
        columns.extend(kernel(&shifted).basis_vectors());
    }
    if columns.len() != n {
        return Ok(Witness::Rejected);
    }
    let p = ExactMatrix::from_rows(columns)?.transpose();
    let p_inv = p.inverse().ok_or_else(|| CrError::Inconsistent("eigenbasis not invertible".into()))?;
    let to_eigen = |m: &ExactMatrix| &(&p_inv * m) * &p;

    let h = k.centralizer(y)?;
    if !h.is_abelian() {
        return Ok(Witness::Rejected);
    }
    let h_basis: Vec<ExactMatrix> = h.basis().iter().map(to_eigen).collect();
    if h_basis.iter().any(|m| !m.is_diagonal()) {
        return Ok(Witness::Rejected);
    }
    if !q.contains_algebra(&h)? {
        return Ok(Witness::Rejected);
    }

    let k_eigen = span_of(n, &k.basis().iter().map(to_eigen).collect::<Vec<_>>())?;
    let q_eigen = span_of(n, &q.basis().iter().map(to_eigen).collect::<Vec<_>>())?;

    // group off-diagonal positions by their functional on h
    let mut groups: Vec<(Vec<Scalar>, Vec<(usize, usize)>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f: Vec<Scalar> = h_basis.iter().map(|m| &m[(i, i)] - &m[(j, j)]).collect();
            match groups.iter_mut().find(|(g, _)| *g == f) {
                Some((_, pos)) => pos.push((i, j)),
                None => groups.push((f, vec![(i, j)])),
            }
        }
    }

    let mut root_dims = 0;
    let mut roots_in_q: Vec<Vec<Scalar>> = Vec::new();
    let mut all_roots: Vec<Vec<Scalar>> = Vec::new();
    let mut q_root_dims = 0;
    for (f, positions) in &groups {
        let units: Vec<ExactMatrix> = positions.iter().map(|&(i, j)| ExactMatrix::unit(n, i, j)).collect();
        let root_space = k_eigen.intersect(&span_of(n, &units)?)?;
        match root_space.dim() {
            0 => continue,
            1 => {}
            _ => return Ok(Witness::Rejected),
        }
        if f.iter().all(Scalar::is_zero) {
            return Ok(Witness::Rejected);
        }
        root_dims += 1;
        all_roots.push(f.clone());
        if q_eigen.contains(&root_space)? {
            roots_in_q.push(f.clone());
            q_root_dims += 1;
        }
    }
    if h.dim() + root_dims != k.dim() {
        return Ok(Witness::Rejected);
    }
    if h.dim() + q_root_dims != q.dim() {
        // q contains h but is not a sum of root spaces
        return Ok(Witness::Parabolic(false));
    }
    let parabolic = all_roots.iter().all(|alpha| {
        let neg: Vec<Scalar> = alpha.iter().map(|s| -s).collect();
        roots_in_q.contains(alpha) || roots_in_q.contains(&neg)
    });
    Ok(Witness::Parabolic(parabolic))
}
