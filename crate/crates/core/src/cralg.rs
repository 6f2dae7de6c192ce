//! CR algebras `(k₀, v)` for `k₀ = s(u(p) ⊕ u(q))`: conjugation, the
//! reductive part `v ∩ v̄`, n-reductivity, CR dimension and codimension,
//! the HNR test and the CR map / submersion / fiber criteria.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CrError, Result};
use crate::exact::{real_points, ExactMatrix, RealSubspace, Scalar, Subspace};
use crate::liealg::{nilradical, normalizer_of_subspace, span_of, LieSubalgebra};
use crate::roots::{compact_conjugate, conjugate_subspace, is_parabolic, Verdict};

/// The compact real form `s(u(p) ⊕ u(q))` inside `sl_{p+q}` together with
/// the Hermitian form `diag(I_p, -I_q)`. `q = 0` gives `su(p) ⊂ sl_p`.
#[derive(Clone, Debug)]
pub struct RealFormContext {
    pub p: usize,
    pub q: usize,
    pub n_total: usize,
    pub hermitian_form: ExactMatrix,
    pub k: LieSubalgebra,
    k0: RealSubspace,
}

impl RealFormContext {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if p == 0 || n < 2 {
            return Err(CrError::InvalidParameters(format!("context needs p >= 1 and p + q >= 2 (got p={p}, q={q})")));
        }
        let signs: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(if i < p { 1 } else { -1 })).collect();
        let mut mats = Vec::new();
        let same_block = |i: usize, j: usize| (i < p) == (j < p);
        for i in 0..n {
            for j in 0..n {
                if i != j && same_block(i, j) {
                    mats.push(ExactMatrix::unit(n, i, j));
                }
            }
        }
        for i in 0..n - 1 {
            mats.push(&ExactMatrix::unit(n, i, i) - &ExactMatrix::unit(n, i + 1, i + 1));
        }
        let k = LieSubalgebra::from_matrices(n, &mats)?;
        let k0 = real_points(n, k.space())?;
        Ok(RealFormContext { p, q, n_total: n, hermitian_form: ExactMatrix::diagonal(&signs), k, k0 })
    }

    /// `su(n) ⊂ sl_n`.
    pub fn special_linear(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// Real form `k₀` (anti-Hermitian elements of `k`).
    pub fn k0(&self) -> &RealSubspace {
        &self.k0
    }

    pub fn dim_k(&self) -> usize {
        self.k.dim()
    }
}

/// `X -> -X^*`, the conjugation of `k` fixing `k₀`.
pub fn conjugate(ctx: &RealFormContext, x: &ExactMatrix) -> Result<ExactMatrix> {
    if !ctx.k.contains(x) {
        return Err(CrError::NotContained("k".into()));
    }
    Ok(compact_conjugate(x))
}

fn conj_algebra(v: &LieSubalgebra) -> Result<LieSubalgebra> {
    LieSubalgebra::unverified(v.ambient_n(), conjugate_subspace(v.ambient_n(), v.space()))
        .and_then(|a| LieSubalgebra::new(a.ambient_n(), a.space().clone()))
}

/// A CR algebra `(k₀, v)` with its derived data computed eagerly.
#[derive(Clone, Debug)]
pub struct CRAlgebra {
    context: Arc<RealFormContext>,
    v: LieSubalgebra,
    v_bar: LieSubalgebra,
    v_r: LieSubalgebra,
    v0: RealSubspace,
    v_n: LieSubalgebra,
    n_cr: usize,
    k_cr: usize,
    n_reductive: bool,
}

impl CRAlgebra {
    pub fn new(context: Arc<RealFormContext>, v: LieSubalgebra) -> Result<Self> {
        if !v.verified_closed() {
            return Err(CrError::NotClosed("v".into()));
        }
        if v.ambient_n() != context.n_total || !context.k.contains_algebra(&v)? {
            return Err(CrError::NotContained("k".into()));
        }
        let n = context.n_total;
        let v_bar = conj_algebra(&v)?;
        let v_r = v.intersect(&v_bar)?;
        if conjugate_subspace(n, v_r.space()) != *v_r.space() {
            return Err(CrError::Inconsistent("v ∩ v̄ is not conjugation-stable".into()));
        }
        let v0 = real_points(n, v_r.space())?;
        if v0.dim() != v_r.dim() {
            return Err(CrError::Inconsistent(format!(
                "dim_C(v ∩ v̄) = {} but its real points have dimension {}",
                v_r.dim(),
                v0.dim()
            )));
        }
        let v_n = nilradical(&v)?;
        if !v_n.space().intersect(v_bar.space())?.is_zero() {
            return Err(CrError::Inconsistent("v_n ∩ v̄ is nonzero".into()));
        }
        let n_cr = v.dim() - v_r.dim();
        let k_real = context.k0.dim();
        let k_cr = k_real
            .checked_sub(v0.dim() + 2 * n_cr)
            .ok_or_else(|| CrError::Inconsistent("negative CR codimension: v is not an isotropy-type subalgebra".into()))?;
        let n_reductive = v_r.dim() + v_n.dim() == v.dim()
            && v_r.space().intersect(v_n.space())?.is_zero()
            && v_r.space().sum(v_n.space())? == *v.space();
        Ok(CRAlgebra { context, v, v_bar, v_r, v0, v_n, n_cr, k_cr, n_reductive })
    }

    pub fn from_matrices(context: Arc<RealFormContext>, basis: &[ExactMatrix]) -> Result<Self> {
        let v = LieSubalgebra::from_matrices(context.n_total, basis)?;
        Self::new(context, v)
    }

    pub fn context(&self) -> &RealFormContext {
        &self.context
    }

    pub fn context_arc(&self) -> Arc<RealFormContext> {
        Arc::clone(&self.context)
    }

    pub fn v(&self) -> &LieSubalgebra {
        &self.v
    }

    pub fn v_bar(&self) -> &LieSubalgebra {
        &self.v_bar
    }

    pub fn v_r(&self) -> &LieSubalgebra {
        &self.v_r
    }

    /// Isotropy `v₀ = v ∩ k₀`.
    pub fn v0(&self) -> &RealSubspace {
        &self.v0
    }

    pub fn v_n(&self) -> &LieSubalgebra {
        &self.v_n
    }

    pub fn n_cr(&self) -> usize {
        self.n_cr
    }

    pub fn k_cr(&self) -> usize {
        self.k_cr
    }
}

/// `v ∩ v̄`.
pub fn reductive_part(a: &CRAlgebra) -> LieSubalgebra {
    a.v_r.clone()
}

/// `v = (v ∩ v̄) ⊕ v_n` as subspaces.
pub fn is_n_reductive(a: &CRAlgebra) -> bool {
    a.n_reductive
}

/// `n = dim_C v - dim_C (v ∩ v̄)`.
pub fn cr_dimension(a: &CRAlgebra) -> usize {
    a.n_cr
}

/// `k = dim_R k₀ - dim_R v₀ - 2n`.
pub fn cr_codimension(a: &CRAlgebra) -> usize {
    a.k_cr
}

/// HNR verdict: the normalizer of `v_n` in `k` is tested for parabolicity.
pub fn is_hnr(a: &CRAlgebra) -> Result<Verdict> {
    if !a.n_reductive {
        return Err(CrError::NotNReductive);
    }
    let q = normalizer_of_subspace(&a.context.k, a.v_n.space())?;
    is_parabolic(&a.context.k, &q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberType {
    TotallyReal,
    Complex,
    Mixed,
}

fn check_pair(ctx: &RealFormContext, e: &LieSubalgebra, f: &LieSubalgebra) -> Result<(Subspace, Subspace)> {
    for (name, x) in [("e", e), ("f", f)] {
        if !x.verified_closed() {
            return Err(CrError::Precondition(format!("{name} is not a verified subalgebra")));
        }
        if x.ambient_n() != ctx.n_total || !ctx.k.contains_algebra(x)? {
            return Err(CrError::Precondition(format!("{name} is not contained in k")));
        }
    }
    let n = ctx.n_total;
    let e_bar = conjugate_subspace(n, e.space());
    let f_bar = conjugate_subspace(n, f.space());
    let e_stable = e.space().intersect(&e_bar)?;
    let f_stable = f.space().intersect(&f_bar)?;
    if !f_stable.contains(&e_stable)? {
        return Err(CrError::Precondition("e ∩ ē is not contained in f ∩ f̄".into()));
    }
    Ok((e_bar, f_bar))
}

/// The map of homogeneous CR manifolds induced by `e ⊆ f` is CR iff `e ⊆ f`.
pub fn check_cr_map(ctx: &RealFormContext, e: &LieSubalgebra, f: &LieSubalgebra) -> Result<bool> {
    check_pair(ctx, e, f)?;
    f.space().contains(e.space())
}

/// CR submersion iff `f = e + (f ∩ f̄)`.
pub fn check_submersion(ctx: &RealFormContext, e: &LieSubalgebra, f: &LieSubalgebra) -> Result<bool> {
    let (_, f_bar) = check_pair(ctx, e, f)?;
    let f_stable = f.space().intersect(&f_bar)?;
    Ok(e.space().sum(&f_stable)? == *f.space())
}

/// Totally real fibers iff `e ∩ f̄ = ē ∩ f = e ∩ ē`; complex fibers iff
/// `e ∩ f̄ + ē ∩ f = f ∩ f̄`. When both hold (zero-dimensional fiber) the
/// answer is `TotallyReal`.
pub fn fiber_type(ctx: &RealFormContext, e: &LieSubalgebra, f: &LieSubalgebra) -> Result<FiberType> {
    let (e_bar, f_bar) = check_pair(ctx, e, f)?;
    let e_fbar = e.space().intersect(&f_bar)?;
    let ebar_f = e_bar.intersect(f.space())?;
    let e_ebar = e.space().intersect(&e_bar)?;
    if e_fbar == ebar_f && ebar_f == e_ebar {
        return Ok(FiberType::TotallyReal);
    }
    if e_fbar.sum(&ebar_f)? == f.space().intersect(&f_bar)? {
        return Ok(FiberType::Complex);
    }
    Ok(FiberType::Mixed)
}

/// JSON input `{context: {p, q}, v_basis: [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CRAlgebraSpec {
    pub context: ContextSpec,
    pub v_basis: Vec<ExactMatrix>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ContextSpec {
    pub p: usize,
    pub q: usize,
}

impl CRAlgebraSpec {
    pub fn build(&self) -> Result<CRAlgebra> {
        let ctx = RealFormContext::new(self.context.p, self.context.q)?.shared();
        let n = ctx.n_total;
        // span first so that a non-closed basis reports "not a subalgebra"
        let space = span_of(n, &self.v_basis)?;
        let v = LieSubalgebra::new(n, space)?;
        CRAlgebra::new(ctx, v)
    }
}
