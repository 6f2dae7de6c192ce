//! `SU(p,q)`-orbits in the Grassmannian `Gr_m(C^{p+q})`: enumeration by
//! signature, base points, exact stabilizers in `k`, CR invariants of every
//! orbit and the Matsuki pairing of `M₊(a,b)` with `M₋(a,b)`.

use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cralg::{is_hnr, is_n_reductive, CRAlgebra, RealFormContext};
use crate::error::{CrError, Result};
use crate::exact::{kernel, ExactMatrix, RealSubspace, Scalar, Subspace};
use crate::levi::{characteristic_space, hermitian_signature, SignatureTriple};
use crate::liealg::LieSubalgebra;
use crate::roots::Verdict;

/// An orbit `M₀(a,b)` of `SU(p,q)` on `m`-planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitDescriptor {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub a: usize,
    pub b: usize,
}

impl OrbitDescriptor {
    pub fn new(p: usize, q: usize, m: usize, a: usize, b: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(CrError::InvalidParameters(format!("need p, q >= 1 (got p={p}, q={q})")));
        }
        if m == 0 || m >= p + q {
            return Err(CrError::InvalidParameters(format!("need 1 <= m < p+q (got m={m}, p+q={})", p + q)));
        }
        if !admissible(p, q, m, a, b) {
            return Err(CrError::InvalidParameters(format!(
                "(a,b)=({a},{b}) violates a+b<=m, {}<=a<={p}, {}<=b<={q}",
                m.saturating_sub(q),
                m.saturating_sub(p)
            )));
        }
        Ok(OrbitDescriptor { p, q, m, a, b })
    }

    pub fn c(&self) -> usize {
        self.m - self.a - self.b
    }

    /// `(n₁,…,n₆) = (a, c, p-a-c, b, c, q-b-c)`.
    pub fn block_sizes(&self) -> [usize; 6] {
        let c = self.c();
        [self.a, c, self.p - self.a - c, self.b, c, self.q - self.b - c]
    }

    /// `(p₀, q₀) = (max{0, m-q}, max{0, m-p})`.
    pub fn minimal_pair(&self) -> (usize, usize) {
        (self.m.saturating_sub(self.q), self.m.saturating_sub(self.p))
    }

    pub fn is_minimal(&self) -> bool {
        (self.a, self.b) == self.minimal_pair()
    }

    pub fn is_open(&self) -> bool {
        self.c() == 0
    }

    pub fn formula_n(&self) -> usize {
        let [n1, n2, n3, n4, _, n6] = self.block_sizes();
        n1 * n3 + n2 * n3 + n4 * n6 + n2 * n6
    }

    pub fn formula_k(&self) -> usize {
        let [n1, n2, _, n4, _, _] = self.block_sizes();
        n2 * (n1 + n2 + n4)
    }

    pub fn formula_mu(&self) -> usize {
        let c = self.c();
        (self.p - self.a - c).min(self.q - self.b - c)
    }
}

fn admissible(p: usize, q: usize, m: usize, a: usize, b: usize) -> bool {
    a + b <= m && m.saturating_sub(q) <= a && a <= p && m.saturating_sub(p) <= b && b <= q
}

#[derive(Serialize)]
struct DescriptorRecord {
    p: usize,
    q: usize,
    m: usize,
    a: usize,
    b: usize,
    c: usize,
    block_sizes: [usize; 6],
}

impl Serialize for OrbitDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorRecord {
            p: self.p,
            q: self.q,
            m: self.m,
            a: self.a,
            b: self.b,
            c: self.c(),
            block_sizes: self.block_sizes(),
        }
        .serialize(s)
    }
}

/// All admissible `(a,b)`, `a` outer and `b` inner, both ascending.
pub fn enumerate_orbits(p: usize, q: usize, m: usize) -> Result<Vec<OrbitDescriptor>> {
    if p == 0 || p > q {
        return Err(CrError::InvalidParameters(format!("need 1 <= p <= q (got p={p}, q={q})")));
    }
    if m == 0 || m >= p + q {
        return Err(CrError::InvalidParameters(format!("need 1 <= m < p+q (got m={m}, p+q={})", p + q)));
    }
    let mut out = Vec::new();
    for a in 0..=p {
        for b in 0..=q {
            if admissible(p, q, m, a, b) {
                out.push(OrbitDescriptor { p, q, m, a, b });
            }
        }
    }
    Ok(out)
}

fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// `span{e₁..e_a} ⊕ span{e_{a+j} + e_{p+b+j}} ⊕ span{e_{p+1}..e_{p+b}}`.
pub fn base_point(d: &OrbitDescriptor) -> Subspace {
    let n = d.p + d.q;
    let mut vecs: Vec<Vec<Scalar>> = (0..d.a).map(|i| unit_vector(n, i)).collect();
    for j in 0..d.c() {
        let mut v = unit_vector(n, d.a + j);
        v[d.p + d.b + j] = Scalar::one();
        vecs.push(v);
    }
    vecs.extend((d.p..d.p + d.b).map(|i| unit_vector(n, i)));
    Subspace::from_vectors(n, &vecs).expect("vectors of length p+q")
}

fn require_plane(ctx: &RealFormContext, l: &Subspace) -> Result<()> {
    if l.ambient_dim() != ctx.n_total {
        return Err(CrError::DimensionMismatch { expected: ctx.n_total, found: l.ambient_dim() });
    }
    Ok(())
}

/// Signature of the Hermitian form `diag(I_p, -I_q)` restricted to `ℓ`.
pub fn signature_of_restriction(ctx: &RealFormContext, l: &Subspace) -> Result<SignatureTriple> {
    require_plane(ctx, l)?;
    let basis = l.basis_vectors();
    let mut gram = ExactMatrix::zeros(basis.len(), basis.len());
    for (i, u) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (k, (x, y)) in u.iter().zip(w).enumerate() {
                let term = x.conj() * y;
                if k < ctx.p {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            gram[(i, j)] = acc;
        }
    }
    hermitian_signature(&gram)
}

/// `(dim ℓ∩W₊, dim ℓ∩W₋)` for `W₊ = span{e₁..e_p}`, `W₋ = span{e_{p+1}..}`.
pub fn k_orbit_class(ctx: &RealFormContext, l: &Subspace) -> Result<(usize, usize)> {
    require_plane(ctx, l)?;
    let n = ctx.n_total;
    let w_plus = Subspace::from_vectors(n, &(0..ctx.p).map(|i| unit_vector(n, i)).collect::<Vec<_>>())?;
    let w_minus = Subspace::from_vectors(n, &(ctx.p..n).map(|i| unit_vector(n, i)).collect::<Vec<_>>())?;
    Ok((l.intersect(&w_plus)?.dim(), l.intersect(&w_minus)?.dim()))
}

/// Entries `α·(B w)` for every annihilator row `α` and basis vector `w` of `ℓ`.
fn stabilizer_conditions(l: &Subspace, b: &ExactMatrix) -> Vec<Scalar> {
    let ann = l.annihilator();
    let mut out = Vec::new();
    for w in l.basis().row_vecs() {
        let bw = b.mul_vec(w);
        for alpha in ann.basis().row_vecs() {
            let mut acc = Scalar::zero();
            for (x, y) in alpha.iter().zip(&bw) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            out.push(acc);
        }
    }
    out
}

/// `{X ∈ k : Xℓ ⊆ ℓ}`.
pub fn stabilizer_in_k(ctx: &RealFormContext, l: &Subspace) -> Result<LieSubalgebra> {
    require_plane(ctx, l)?;
    let basis = ctx.k.basis();
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| stabilizer_conditions(l, b)).collect();
    let rows = columns.first().map_or(0, Vec::len);
    let mut sys = ExactMatrix::zeros(rows, basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            sys[(i, j)] = x.clone();
        }
    }
    let sol = kernel(&sys);
    let mats: Vec<ExactMatrix> = sol
        .basis()
        .row_vecs()
        .map(|c| {
            let mut x = ExactMatrix::zeros(ctx.n_total, ctx.n_total);
            for (coef, b) in c.iter().zip(&basis) {
                if !coef.is_zero() {
                    x = &x + &b.scale(coef);
                }
            }
            x
        })
        .collect();
    LieSubalgebra::from_matrices(ctx.n_total, &mats)
}

/// `{X ∈ k₀ : Xℓ ⊆ ℓ}`, solved directly over the reals.
pub fn real_stabilizer(ctx: &RealFormContext, l: &Subspace) -> Result<RealSubspace> {
    require_plane(ctx, l)?;
    let basis = ctx.k0().basis();
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| stabilizer_conditions(l, b)).collect();
    let rows = columns.first().map_or(0, Vec::len);
    let mut sys = ExactMatrix::zeros(2 * rows, basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            sys[(2 * i, j)] = Scalar::from_real(x.re.clone());
            sys[(2 * i + 1, j)] = Scalar::from_real(x.im.clone());
        }
    }
    let sol = kernel(&sys);
    let mats: Vec<ExactMatrix> = sol
        .basis()
        .row_vecs()
        .map(|c| {
            let coeffs: Vec<BigRational> = c.iter().map(|s| s.re.clone()).collect();
            ctx.k0().combine(&coeffs)
        })
        .collect();
    RealSubspace::from_matrices(ctx.n_total, &mats)
}

/// Membership of the base point in `M₊(a,b)` and `M₋(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePointCertificate {
    pub signature: SignatureTriple,
    pub intersection_dims: (usize, usize),
    pub in_m_plus: bool,
    pub in_m_minus: bool,
}

pub fn certify_base_point(ctx: &RealFormContext, d: &OrbitDescriptor, l: &Subspace) -> Result<BasePointCertificate> {
    let signature = signature_of_restriction(ctx, l)?;
    let intersection_dims = k_orbit_class(ctx, l)?;
    Ok(BasePointCertificate {
        in_m_plus: l.dim() == d.m && signature == SignatureTriple { plus: d.a, minus: d.b, zero: d.c() },
        in_m_minus: intersection_dims == (d.a, d.b),
        signature,
        intersection_dims,
    })
}

/// Base point, certificate and the CR algebra of its stabilizer.
pub fn oracle_algebra(d: &OrbitDescriptor) -> Result<(CRAlgebra, Subspace, BasePointCertificate)> {
    let ctx = RealFormContext::new(d.p, d.q)?.shared();
    oracle_algebra_in(ctx, d)
}

fn oracle_algebra_in(ctx: Arc<RealFormContext>, d: &OrbitDescriptor) -> Result<(CRAlgebra, Subspace, BasePointCertificate)> {
    if (ctx.p, ctx.q) != (d.p, d.q) {
        return Err(CrError::InvalidParameters("context does not match descriptor".into()));
    }
    let l = base_point(d);
    let cert = certify_base_point(&ctx, d, &l)?;
    if !(cert.in_m_plus && cert.in_m_minus) {
        return Err(CrError::Inconsistent(format!(
            "base point of ({},{},{},{},{}) fails certification: signature {:?}, intersections {:?}",
            d.p, d.q, d.m, d.a, d.b, cert.signature, cert.intersection_dims
        )));
    }
    let v = stabilizer_in_k(&ctx, &l)?;
    Ok((CRAlgebra::new(ctx, v)?, l, cert))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDims {
    pub k0: usize,
    pub v0: usize,
    pub v: usize,
    #[serde(rename = "M0_real")]
    pub m0_real: usize,
    #[serde(rename = "Mminus_complex")]
    pub mminus_complex: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleValues {
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValues {
    pub n: usize,
    pub k: usize,
    pub mu: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFlags {
    pub n_reductive: bool,
    pub hnr: Verdict,
    pub open_orbit: bool,
    pub minimal: bool,
    pub totally_real: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub field: String,
    pub formula_value: usize,
    pub oracle_value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    #[serde(flatten)]
    pub descriptor: OrbitDescriptor,
    pub dims: OrbitDims,
    pub oracle: OracleValues,
    pub formula: FormulaValues,
    pub flags: OrbitFlags,
    pub discrepancies: Vec<Discrepancy>,
}

/// Oracle invariants of `M₀(a,b)` next to the closed-form values.
///
/// Fails with `Inconsistent` when the dimension identities
/// `dim M₀ = 2n+k`, `dim M₋ = n+k` do not hold for the oracle, or when the
/// independently computed real stabilizer or characteristic space
/// disagrees with the CR algebra.
pub fn orbit_report(d: &OrbitDescriptor) -> Result<OrbitReport> {
    let ctx = RealFormContext::new(d.p, d.q)?.shared();
    orbit_report_in(ctx, d)
}

fn orbit_report_in(ctx: Arc<RealFormContext>, d: &OrbitDescriptor) -> Result<OrbitReport> {
    let (alg, l, _) = oracle_algebra_in(Arc::clone(&ctx), d)?;
    let v0 = real_stabilizer(&ctx, &l)?;
    let n = alg.n_cr();
    let k = alg.k_cr();
    let dims = OrbitDims {
        k0: ctx.k0().dim(),
        v0: v0.dim(),
        v: alg.v().dim(),
        m0_real: ctx.k0().dim() - v0.dim(),
        mminus_complex: ctx.dim_k() - alg.v().dim(),
    };
    if v0.dim() != alg.v0().dim() || !v0.contains(alg.v0())? {
        return Err(CrError::Inconsistent(format!(
            "real stabilizer has dimension {} but v ∩ k₀ has dimension {}",
            v0.dim(),
            alg.v0().dim()
        )));
    }
    if dims.m0_real != 2 * n + k {
        return Err(CrError::Inconsistent(format!("dim M0 = {} but 2n+k = {}", dims.m0_real, 2 * n + k)));
    }
    if dims.mminus_complex != n + k {
        return Err(CrError::Inconsistent(format!("dim M- = {} but n+k = {}", dims.mminus_complex, n + k)));
    }
    let n_reductive = is_n_reductive(&alg);
    let hnr = if n_reductive {
        let m0 = characteristic_space(&alg)?;
        if m0.dim() != k {
            return Err(CrError::Inconsistent(format!("dim m0 = {} but k = {k}", m0.dim())));
        }
        is_hnr(&alg)?
    } else {
        Verdict::No
    };
    let formula = FormulaValues { n: d.formula_n(), k: d.formula_k(), mu: d.formula_mu() };
    let mut discrepancies = Vec::new();
    for (field, f, o) in [("n", formula.n, n), ("k", formula.k, k)] {
        if f != o {
            discrepancies.push(Discrepancy { field: field.into(), formula_value: f, oracle_value: o });
        }
    }
    Ok(OrbitReport {
        descriptor: *d,
        dims,
        oracle: OracleValues { n, k },
        formula,
        flags: OrbitFlags { n_reductive, hnr, open_orbit: d.is_open(), minimal: d.is_minimal(), totally_real: n == 0 },
        discrepancies,
    })
}

/// Reports for every orbit of `Gr_m(C^{p+q})`, in enumeration order.
pub fn orbit_reports(p: usize, q: usize, m: usize) -> Result<Vec<OrbitReport>> {
    let ctx = RealFormContext::new(p, q)?.shared();
    enumerate_orbits(p, q, m)?
        .par_iter()
        .map(|d| orbit_report_in(Arc::clone(&ctx), d))
        .collect()
}

pub const CSV_HEADER: [&str; 27] = [
    "p", "q", "m", "a", "b", "c", "n1", "n2", "n3", "n4", "n5", "n6", "dim_k0", "dim_v0", "dim_v", "dim_M0_real",
    "dim_Mminus_complex", "oracle_n", "oracle_k", "formula_n", "formula_k", "formula_mu", "n_reductive", "hnr",
    "open_orbit", "minimal", "totally_real",
];

impl OrbitReport {
    /// Flat CSV row matching `CSV_HEADER` followed by a discrepancy column.
    pub fn csv_row(&self) -> Vec<String> {
        let d = &self.descriptor;
        let mut row: Vec<String> = [d.p, d.q, d.m, d.a, d.b, d.c()].iter().map(usize::to_string).collect();
        row.extend(d.block_sizes().iter().map(usize::to_string));
        row.extend(
            [
                self.dims.k0,
                self.dims.v0,
                self.dims.v,
                self.dims.m0_real,
                self.dims.mminus_complex,
                self.oracle.n,
                self.oracle.k,
                self.formula.n,
                self.formula.k,
                self.formula.mu,
            ]
            .iter()
            .map(usize::to_string),
        );
        row.push(self.flags.n_reductive.to_string());
        row.push(self.flags.hnr.to_string());
        row.push(self.flags.open_orbit.to_string());
        row.push(self.flags.minimal.to_string());
        row.push(self.flags.totally_real.to_string());
        row.push(
            self.discrepancies
                .iter()
                .map(|x| format!("{}:{}!={}", x.field, x.formula_value, x.oracle_value))
                .collect::<Vec<_>>()
                .join(";"),
        );
        row
    }
}

/// One Matsuki pair `M₊(a,b) ↔ M₋(a,b)` with `M₀(a,b) = M₊ ∩ M₋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityEntry {
    #[serde(flatten)]
    pub descriptor: OrbitDescriptor,
    pub m_plus: String,
    pub m_minus: String,
    pub certificate: BasePointCertificate,
    pub open_orbit: bool,
    pub minimal: bool,
}

pub fn duality_catalog(p: usize, q: usize, m: usize) -> Result<Vec<DualityEntry>> {
    let ctx = RealFormContext::new(p, q)?;
    enumerate_orbits(p, q, m)?
        .iter()
        .map(|d| {
            let l = base_point(d);
            let certificate = certify_base_point(&ctx, d, &l)?;
            if !(certificate.in_m_plus && certificate.in_m_minus) {
                return Err(CrError::Inconsistent(format!("base point of (a,b)=({},{}) fails certification", d.a, d.b)));
            }
            Ok(DualityEntry {
                descriptor: *d,
                m_plus: format!("M+({},{})", d.a, d.b),
                m_minus: format!("M-({},{})", d.a, d.b),
                certificate,
                open_orbit: d.is_open(),
                minimal: d.is_minimal(),
            })
        })
        .collect()
}
