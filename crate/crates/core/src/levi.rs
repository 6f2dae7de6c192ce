//! Scalar Levi forms on the characteristic space `m₀`, exact Hermitian
//! signatures, Witt indices, sampled pseudoconcavity, the Hessian rule for
//! the exhaustion function and the cohomology degree window.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cralg::{is_n_reductive, CRAlgebra};
use crate::error::{CrError, Result};
use crate::exact::{real_points, ExactMatrix, RealSubspace, Scalar};
use crate::grassmann::OrbitDescriptor;
use crate::liealg::bracket;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct SignatureTriple {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl SignatureTriple {
    pub fn total(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn witt(&self) -> usize {
        witt_index(self)
    }

    /// Signature of the negated form.
    pub fn negated(&self) -> Self {
        SignatureTriple { plus: self.minus, minus: self.plus, zero: self.zero }
    }
}

/// Exact signature by Hermitian `LDL*` with diagonal pivoting; a zero
/// diagonal with a nonzero off-diagonal entry is fixed by `e_i += c e_j`
/// for `c ∈ {1, i}`.
pub fn hermitian_signature(g: &ExactMatrix) -> Result<SignatureTriple> {
    let n = g.require_square()?;
    if !g.is_hermitian() {
        return Err(CrError::NotHermitian);
    }
    let mut a = g.clone();
    let mut sig = SignatureTriple::default();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                swap_sym(&mut a, k, p);
            } else if let Some((i, j)) = first_offdiag(&a, k) {
                let c = if a[(i, j)].re.is_zero() { Scalar::i() } else { Scalar::one() };
                add_sym(&mut a, i, j, &c);
                swap_sym(&mut a, k, i);
            } else {
                sig.zero += n - k;
                break;
            }
        }
        let d = a[(k, k)].re.clone();
        if d.is_positive() {
            sig.plus += 1;
        } else {
            sig.minus += 1;
        }
        let d = Scalar::from_real(d);
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &d;
            add_sym(&mut a, i, k, &-&f.conj());
        }
    }
    Ok(sig)
}

fn first_offdiag(a: &ExactMatrix, k: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero())
}

fn swap_sym(a: &mut ExactMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Congruence `A -> E A E*` with `E = I + conj(c) e_i e_jᵀ`.
fn add_sym(a: &mut ExactMatrix, i: usize, j: usize, c: &Scalar) {
    let n = a.rows();
    let cc = c.conj();
    for col in 0..n {
        let t = &cc * &a[(j, col)];
        a[(i, col)] += &t;
    }
    for row in 0..n {
        let t = &a[(row, j)] * c;
        a[(row, i)] += &t;
    }
}

pub fn witt_index(s: &SignatureTriple) -> usize {
    s.plus.min(s.minus)
}

/// `m₀ = ((v + v̄) ∩ k₀)^⊥` inside `k₀`.
pub fn characteristic_space(a: &CRAlgebra) -> Result<RealSubspace> {
    if !is_n_reductive(a) {
        return Err(CrError::NotNReductive);
    }
    let n = a.context().n_total;
    let span = a.v().space().sum(a.v_bar().space())?;
    let tangent = real_points(n, &span)?;
    tangent.orthogonal_complement_in(a.context().k0())
}

/// `L_T(Z, W) = ½ κ(T, i[conj(W), Z])` on the basis of `v_n`, with `κ`
/// extended complex-bilinearly as `-tr(XY)`.
pub fn levi_gram(a: &CRAlgebra, t: &ExactMatrix) -> Result<ExactMatrix> {
    let m0 = characteristic_space(a)?;
    levi_gram_in(a, &m0, t)
}

fn levi_gram_in(a: &CRAlgebra, m0: &RealSubspace, t: &ExactMatrix) -> Result<ExactMatrix> {
    if t.is_zero() || !m0.contains_matrix(t) {
        return Err(CrError::Precondition("T is not a nonzero element of m0".into()));
    }
    let basis = a.v_n().basis();
    let conj: Vec<ExactMatrix> = basis.iter().map(|w| -&w.conj_transpose()).collect();
    let factor = Scalar::new(BigRational::from_integer(0.into()), BigRational::new((-1).into(), 2.into()));
    let mut g = ExactMatrix::zeros(basis.len(), basis.len());
    for (j, z) in basis.iter().enumerate() {
        for (k, wbar) in conj.iter().enumerate() {
            let br = bracket(wbar, z)?;
            g[(j, k)] = (t * &br).trace() * &factor;
        }
    }
    if !g.is_hermitian() {
        return Err(CrError::Inconsistent("Levi Gram matrix is not Hermitian".into()));
    }
    Ok(g)
}

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| format!("{}/{}", r.numer(), r.denom())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviReport {
    /// Coordinates of `T` in the canonical basis of `m₀`.
    #[serde(rename = "T", serialize_with = "ser_rationals")]
    pub t: Vec<BigRational>,
    #[serde(skip)]
    pub gram: ExactMatrix,
    pub signature: SignatureTriple,
    pub witt: usize,
}

fn report_in(a: &CRAlgebra, m0: &RealSubspace, coords: &[BigRational]) -> Result<LeviReport> {
    if coords.len() != m0.dim() {
        return Err(CrError::DimensionMismatch { expected: m0.dim(), found: coords.len() });
    }
    let gram = levi_gram_in(a, m0, &m0.combine(coords))?;
    let signature = hermitian_signature(&gram)?;
    Ok(LeviReport { t: coords.to_vec(), gram, witt: signature.witt(), signature })
}

/// Levi report for the direction with the given `m₀` coordinates.
pub fn levi_report(a: &CRAlgebra, coords: &[BigRational]) -> Result<LeviReport> {
    let m0 = characteristic_space(a)?;
    report_in(a, &m0, coords)
}

/// Witt index at least `q` on every supplied direction.
pub fn is_q_pseudoconcave_at(reports: &[LeviReport], q: usize) -> bool {
    reports.iter().all(|r| r.witt >= q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 42, count: 32 }
    }
}

/// Deterministic integer directions: `±e_i`, then `e_i ± e_j`, then seeded
/// vectors with entries in `[-3, 3]`.
pub fn sample_directions(dim: usize, sampling: &Sampling) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    if dim == 0 {
        return out;
    }
    let unit = |i: usize, s: i64| {
        let mut v = vec![0; dim];
        v[i] = s;
        v
    };
    for i in 0..dim {
        out.push(unit(i, 1));
        out.push(unit(i, -1));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            for s in [1, -1] {
                let mut v = unit(i, 1);
                v[j] = s;
                out.push(v);
            }
        }
    }
    out.truncate(sampling.count);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    while out.len() < sampling.count {
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoconcavityEstimate {
    pub seed: u64,
    pub samples: usize,
    /// Minimum sampled Witt index; `None` when `m₀ = {0}`.
    pub sampled_min: Option<usize>,
    /// Closed form `min{p-a-c, q-b-c}` for Grassmannian orbits.
    pub closed_form_mu: Option<usize>,
    /// Sampled minimum equals the closed form.
    pub attained: Option<bool>,
    pub discrepancy: Option<String>,
    pub reports: Vec<LeviReport>,
}

/// Minimum Witt index over deterministic sample directions of `m₀`.
pub fn pseudoconcavity_estimate(
    a: &CRAlgebra,
    sampling: &Sampling,
    family: Option<&OrbitDescriptor>,
) -> Result<PseudoconcavityEstimate> {
    let m0 = characteristic_space(a)?;
    let closed_form_mu = family.map(OrbitDescriptor::formula_mu);
    let reports: Vec<LeviReport> = if a.v_n().dim() == 0 {
        Vec::new()
    } else {
        sample_directions(m0.dim(), sampling)
            .par_iter()
            .map(|v| {
                let coords: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
                report_in(a, &m0, &coords)
            })
            .collect::<Result<_>>()?
    };
    let sampled_min = if a.v_n().dim() == 0 {
        Some(0)
    } else {
        reports.iter().map(|r| r.witt).min()
    };
    let (attained, discrepancy) = match (sampled_min, closed_form_mu) {
        (Some(s), Some(mu)) => {
            let note = match s.cmp(&mu) {
                std::cmp::Ordering::Less => Some(format!("sampled Witt minimum {s} below closed-form mu {mu}")),
                std::cmp::Ordering::Greater => Some(format!("closed-form mu {mu} not attained: sampled Witt minimum is {s}")),
                std::cmp::Ordering::Equal => None,
            };
            (Some(s == mu), note)
        }
        _ => (None, None),
    };
    Ok(PseudoconcavityEstimate {
        seed: sampling.seed,
        samples: reports.len(),
        sampled_min,
        closed_form_mu,
        attained,
        discrepancy,
        reports,
    })
}

/// `(λ⁺ + k, λ⁻, λ⁰)` on a space of dimension `total + k`.
pub fn hessian_signature(levi: &SignatureTriple, k_cr: usize) -> SignatureTriple {
    SignatureTriple { plus: levi.plus + k_cr, minus: levi.minus, zero: levi.zero }
}

/// Degrees `j < q` or `j > n - q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeWindow {
    /// Largest degree of the low range, absent when `q = 0`.
    pub low_max: Option<usize>,
    /// Smallest degree of the (unbounded) high range.
    pub high_min: usize,
}

impl DegreeWindow {
    pub fn contains(&self, j: usize) -> bool {
        self.low_max.is_some_and(|m| j <= m) || j >= self.high_min
    }
}

pub fn cohomology_window(n: usize, q: usize) -> Result<DegreeWindow> {
    if q > n {
        return Err(CrError::InvalidParameters(format!("window needs q <= n (got n={n}, q={q})")));
    }
    Ok(DegreeWindow { low_max: q.checked_sub(1), high_min: n - q + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cralg::RealFormContext;
    use crate::grassmann::oracle_algebra;
    use crate::liealg::LieSubalgebra;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sig(plus: usize, minus: usize, zero: usize) -> SignatureTriple {
        SignatureTriple { plus, minus, zero }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(hermitian_signature(&ExactMatrix::from_ints(&[&[1, 0], &[0, -1]])).unwrap(), sig(1, 1, 0));
        assert_eq!(hermitian_signature(&ExactMatrix::zeros(3, 3)).unwrap(), sig(0, 0, 3));
        assert_eq!(hermitian_signature(&ExactMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap(), sig(1, 1, 0));
        let g = ExactMatrix::from_gaussian(&[&[(0, 0), (0, 1)], &[(0, -1), (0, 0)]]);
        assert_eq!(hermitian_signature(&g).unwrap(), sig(1, 1, 0));
        let g = ExactMatrix::from_ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -2]]);
        assert_eq!(hermitian_signature(&g).unwrap(), sig(1, 1, 1));
        let bad = ExactMatrix::from_ints(&[&[0, 1], &[2, 0]]);
        assert!(matches!(hermitian_signature(&bad), Err(CrError::NotHermitian)));
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_index(&sig(2, 1, 0)), 1);
        assert_eq!(witt_index(&sig(0, 3, 0)), 0);
        assert_eq!(witt_index(&sig(2, 2, 1)), 2);
    }

    #[test]
    fn hessian_examples() {
        let h = hessian_signature(&sig(1, 0, 0), 1);
        assert_eq!((h.plus, h.minus), (2, 0));
        let h = hessian_signature(&sig(0, 0, 0), 0);
        assert_eq!((h.plus, h.minus), (0, 0));
        let h = hessian_signature(&sig(2, 3, 0), 2);
        assert_eq!((h.plus, h.minus), (4, 3));
        assert_eq!(h.total(), 7);
    }

    #[test]
    fn window_examples() {
        let w = cohomology_window(4, 1).unwrap();
        assert_eq!(w, DegreeWindow { low_max: Some(0), high_min: 4 });
        assert!(w.contains(0) && !w.contains(1) && !w.contains(3) && w.contains(4));
        let w = cohomology_window(5, 2).unwrap();
        assert_eq!(w, DegreeWindow { low_max: Some(1), high_min: 4 });
        assert_eq!(cohomology_window(3, 0).unwrap().low_max, None);
        assert!(cohomology_window(2, 3).is_err());
    }

    #[test]
    fn characteristic_space_examples() {
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(1, 2, 1, 0, 0).unwrap()).unwrap();
        assert_eq!(characteristic_space(&a).unwrap().dim(), 1);
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(2, 2, 1, 1, 0).unwrap()).unwrap();
        assert_eq!(characteristic_space(&a).unwrap().dim(), 0);
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(1, 1, 1, 0, 0).unwrap()).unwrap();
        let m0 = characteristic_space(&a).unwrap();
        assert_eq!(m0.dim(), 1);
        assert_eq!(m0, a.context().k0().clone());
    }

    #[test]
    fn hypersurface_levi_form() {
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(1, 2, 1, 0, 0).unwrap()).unwrap();
        let rep = levi_report(&a, &[r(1)]).unwrap();
        assert_eq!(rep.gram.rows(), 1);
        assert_eq!(rep.signature.zero, 0);
        let neg = levi_report(&a, &[r(-1)]).unwrap();
        assert_eq!(neg.signature, rep.signature.negated());
        let twice = levi_report(&a, &[r(2)]).unwrap();
        assert_eq!(twice.gram, rep.gram.scale(&Scalar::from_int(2)));
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with("{\"T\":[\"1/1\"]"));
    }

    #[test]
    fn levi_gram_rejects_outside_m0() {
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(1, 2, 1, 0, 0).unwrap()).unwrap();
        let m0 = characteristic_space(&a).unwrap();
        let outside = a.context().k0().basis().into_iter().find(|x| !m0.contains_matrix(x)).unwrap();
        assert!(levi_gram(&a, &outside).is_err());
        assert!(levi_gram(&a, &ExactMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn empty_nilradical_gives_empty_gram() {
        let ctx = RealFormContext::new(1, 1).unwrap().shared();
        let a = CRAlgebra::new(ctx, LieSubalgebra::zero(2)).unwrap();
        let rep = levi_report(&a, &[r(1)]).unwrap();
        assert_eq!(rep.gram.rows(), 0);
        let est = pseudoconcavity_estimate(&a, &Sampling::default(), None).unwrap();
        assert_eq!(est.sampled_min, Some(0));
    }

    #[test]
    fn closed_form_mu_examples() {
        let d = OrbitDescriptor::new(3, 3, 1, 0, 0).unwrap();
        let (a, _, _) = oracle_algebra(&d).unwrap();
        let est = pseudoconcavity_estimate(&a, &Sampling { seed: 7, count: 12 }, Some(&d)).unwrap();
        assert_eq!(est.closed_form_mu, Some(2));
        assert_eq!(est.sampled_min, Some(2));
        let d = OrbitDescriptor::new(1, 2, 1, 0, 0).unwrap();
        assert_eq!(d.formula_mu(), 0);
    }

    #[test]
    fn directions_are_deterministic() {
        let s = Sampling { seed: 3, count: 20 };
        assert_eq!(sample_directions(3, &s), sample_directions(3, &s));
        assert_eq!(sample_directions(3, &s).len(), 20);
        assert!(sample_directions(0, &s).is_empty());
    }
}
