//! Numeric probe of the Mostow-type map
//! `K₀ × m₀ × v₀ × v_n -> K`, `(x,T,Y,Z) ↦ x·exp(iT)·exp(iY)·exp(Z)`.
//!
//! This is the only floating-point part of the crate. Exponentials use
//! nalgebra's Padé scaling-and-squaring, the Jacobian is a central finite
//! difference in left-trivialized coordinates of `k = k₀ ⊕ i·k₀`.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cralg::CRAlgebra;
use crate::error::{CrError, Result};
use crate::exact::{rational_to_f64, ExactMatrix};
use crate::levi::characteristic_space;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const DEFAULT_STEP: f64 = 1e-6;
pub const DEFAULT_RANK_THRESHOLD: f64 = 1e-8;
pub const UNITARY_TOLERANCE: f64 = 1e-10;

fn to_numeric(m: &ExactMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let z = &m[(i, j)];
        C64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
    })
}

/// `-Re tr(XY)`.
fn kappa(x: &CMatrix, y: &CMatrix) -> f64 {
    -(x * y).trace().re
}

fn orthonormalize(mats: Vec<CMatrix>) -> Vec<CMatrix> {
    let mut out: Vec<CMatrix> = Vec::with_capacity(mats.len());
    for mut m in mats {
        for e in &out {
            let c = kappa(&m, e);
            m -= e * C64::new(c, 0.0);
        }
        let norm = kappa(&m, &m).sqrt();
        out.push(m * C64::new(1.0 / norm, 0.0));
    }
    out
}

fn combine_real(basis: &[CMatrix], coeffs: &[f64], n: usize) -> CMatrix {
    let mut acc = CMatrix::zeros(n, n);
    for (b, &c) in basis.iter().zip(coeffs) {
        acc += b * C64::new(c, 0.0);
    }
    acc
}

fn i_times(m: &CMatrix) -> CMatrix {
    m * C64::new(0.0, 1.0)
}

/// Numeric bases for the four factors, all but `v_n` orthonormal for `κ`.
#[derive(Clone, Debug)]
pub struct MostowFrame {
    pub n: usize,
    pub k0: Vec<CMatrix>,
    pub m0: Vec<CMatrix>,
    pub v0: Vec<CMatrix>,
    pub vn: Vec<CMatrix>,
}

impl MostowFrame {
    pub fn new(a: &CRAlgebra) -> Result<Self> {
        let m0 = characteristic_space(a)?;
        let num = |v: Vec<ExactMatrix>| v.iter().map(to_numeric).collect::<Vec<_>>();
        let vn: Vec<CMatrix> = num(a.v_n().basis())
            .into_iter()
            .map(|m| {
                let s = m.norm();
                m * C64::new(1.0 / s, 0.0)
            })
            .collect();
        Ok(MostowFrame {
            n: a.context().n_total,
            k0: orthonormalize(num(a.context().k0().basis())),
            m0: orthonormalize(num(m0.basis())),
            v0: orthonormalize(num(a.v0().basis())),
            vn,
        })
    }

    /// Real parameter count `dim k₀ + dim m₀ + dim v₀ + 2 dim v_n`.
    pub fn parameter_dim(&self) -> usize {
        self.k0.len() + self.m0.len() + self.v0.len() + 2 * self.vn.len()
    }

    /// Coordinates of `A ∈ k` in the real basis `k₀ ⊕ i·k₀`.
    pub fn k_coordinates(&self, a: &CMatrix) -> Vec<f64> {
        let adj = a.adjoint();
        let half = C64::new(0.5, 0.0);
        let re_part = (a - &adj) * half;
        let im_part = (a + &adj) * C64::new(0.0, -0.5);
        let mut out: Vec<f64> = self.k0.iter().map(|e| kappa(&re_part, e)).collect();
        out.extend(self.k0.iter().map(|e| kappa(&im_part, e)));
        out
    }
}

#[derive(Clone, Debug)]
pub struct MostowPoint {
    pub x: CMatrix,
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<C64>,
}

impl MostowPoint {
    pub fn identity(frame: &MostowFrame) -> Self {
        MostowPoint {
            x: CMatrix::identity(frame.n, frame.n),
            t: vec![0.0; frame.m0.len()],
            y: vec![0.0; frame.v0.len()],
            z: vec![C64::new(0.0, 0.0); frame.vn.len()],
        }
    }

    fn check(&self, frame: &MostowFrame) -> Result<()> {
        if self.t.len() != frame.m0.len() || self.y.len() != frame.v0.len() || self.z.len() != frame.vn.len() {
            return Err(CrError::DimensionMismatch { expected: frame.parameter_dim(), found: self.t.len() });
        }
        let finite = self.t.iter().chain(&self.y).all(|v| v.is_finite())
            && self.z.iter().all(|v| v.re.is_finite() && v.im.is_finite())
            && self.x.iter().all(|v| v.re.is_finite() && v.im.is_finite());
        if !finite {
            return Err(CrError::Numeric("non-finite Mostow coordinates".into()));
        }
        let drift = (&self.x * self.x.adjoint() - CMatrix::identity(frame.n, frame.n)).norm();
        if drift > UNITARY_TOLERANCE {
            return Err(CrError::Numeric(format!("x is not unitary (drift {drift:e})")));
        }
        Ok(())
    }

    /// `T` as a matrix in `m₀`.
    pub fn t_matrix(&self, frame: &MostowFrame) -> CMatrix {
        combine_real(&frame.m0, &self.t, frame.n)
    }

    /// `κ(T,T)`; the `m₀` basis is orthonormal so this is `|t|²`.
    pub fn kappa_tt(&self) -> f64 {
        self.t.iter().map(|v| v * v).sum()
    }
}

fn exp_factors(frame: &MostowFrame, t: &[f64], y: &[f64], z: &[C64]) -> CMatrix {
    let n = frame.n;
    let tm = i_times(&combine_real(&frame.m0, t, n)).exp();
    let ym = i_times(&combine_real(&frame.v0, y, n)).exp();
    let mut zm = CMatrix::zeros(n, n);
    for (b, c) in frame.vn.iter().zip(z) {
        zm += b * *c;
    }
    tm * ym * zm.exp()
}

/// `x·exp(iT)·exp(iY)·exp(Z)`.
pub fn mostow_map(frame: &MostowFrame, p: &MostowPoint) -> Result<CMatrix> {
    p.check(frame)?;
    Ok(&p.x * exp_factors(frame, &p.t, &p.y, &p.z))
}

/// Map with parameters `[ξ | t | y | Re z | Im z]` where `x` is replaced
/// by `x·exp(Σ ξ_l X_l)`.
fn map_params(frame: &MostowFrame, x: &CMatrix, params: &[f64]) -> CMatrix {
    let (k, m, v, z) = (frame.k0.len(), frame.m0.len(), frame.v0.len(), frame.vn.len());
    let xi = combine_real(&frame.k0, &params[..k], frame.n).exp();
    let t = &params[k..k + m];
    let y = &params[k + m..k + m + v];
    let zc: Vec<C64> = (0..z).map(|j| C64::new(params[k + m + v + j], params[k + m + v + z + j])).collect();
    x * xi * exp_factors(frame, t, y, &zc)
}

fn point_params(frame: &MostowFrame, p: &MostowPoint) -> Vec<f64> {
    let mut out = vec![0.0; frame.k0.len()];
    out.extend(&p.t);
    out.extend(&p.y);
    out.extend(p.z.iter().map(|c| c.re));
    out.extend(p.z.iter().map(|c| c.im));
    out
}

/// Left-trivialized Jacobian `F⁻¹ ∂F` by central differences, as a square
/// real matrix (columns: parameters, rows: coordinates in `k₀ ⊕ i·k₀`).
pub fn jacobian(frame: &MostowFrame, p: &MostowPoint, step: f64) -> Result<DMatrix<f64>> {
    p.check(frame)?;
    let base = point_params(frame, p);
    let f = map_params(frame, &p.x, &base);
    let f_inv = f
        .clone()
        .try_inverse()
        .ok_or_else(|| CrError::Numeric("Mostow map value is singular".into()))?;
    let dim = base.len();
    let rows = 2 * frame.k0.len();
    let mut jac = DMatrix::<f64>::zeros(rows, dim);
    for l in 0..dim {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[l] += step;
        minus[l] -= step;
        let diff = (map_params(frame, &p.x, &plus) - map_params(frame, &p.x, &minus)) * C64::new(0.5 / step, 0.0);
        let col = frame.k_coordinates(&(&f_inv * diff));
        for (r, v) in col.into_iter().enumerate() {
            jac[(r, l)] = v;
        }
    }
    Ok(jac)
}

pub fn smallest_singular_value(m: &DMatrix<f64>) -> f64 {
    if m.ncols() == 0 {
        return f64::INFINITY;
    }
    m.clone().singular_values().iter().copied().fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    pub threshold: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { radius: 0.5, samples: 100, seed: 42, step: DEFAULT_STEP, threshold: DEFAULT_RANK_THRESHOLD }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeFailure {
    pub sample: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MostowProbeReport {
    pub samples: usize,
    pub radius: f64,
    pub min_singular_value: f64,
    pub full_rank_everywhere: bool,
    pub seed: u64,
    pub step: f64,
    pub threshold: f64,
    /// Largest sampled `sqrt κ(T,T)` at which the Jacobian had full rank.
    pub largest_full_rank_norm: f64,
    pub failures: Vec<ProbeFailure>,
}

fn uniform_ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    if dim == 0 {
        return Vec::new();
    }
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 && norm <= 1.0 {
            return v.into_iter().map(|x| x * radius).collect();
        }
    }
}

/// Deterministic sample points: the origin first, then seeded points with
/// `x = exp(X)` for `X ∈ k₀` of norm below `π` and `T`, `Y`, `Z` in balls
/// of the given radius.
pub fn sample_points(frame: &MostowFrame, cfg: &ProbeConfig) -> Vec<MostowPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.samples);
    for s in 0..cfg.samples {
        if s == 0 {
            out.push(MostowPoint::identity(frame));
            continue;
        }
        let xi = uniform_ball(&mut rng, frame.k0.len(), std::f64::consts::PI);
        let x = combine_real(&frame.k0, &xi, frame.n).exp();
        let t = uniform_ball(&mut rng, frame.m0.len(), cfg.radius);
        let y = uniform_ball(&mut rng, frame.v0.len(), cfg.radius);
        let zr = uniform_ball(&mut rng, 2 * frame.vn.len(), cfg.radius);
        let z = (0..frame.vn.len()).map(|j| C64::new(zr[2 * j], zr[2 * j + 1])).collect();
        out.push(MostowPoint { x: unitarize(&x), t, y, z });
    }
    out
}

/// Polar factor `U` of `g = U·P`.
pub fn polar_unitary(g: &CMatrix) -> Result<CMatrix> {
    let svd = g.clone().svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => Ok(u * v_t),
        _ => Err(CrError::Numeric("SVD failed".into())),
    }
}

fn unitarize(x: &CMatrix) -> CMatrix {
    polar_unitary(x).unwrap_or_else(|_| x.clone())
}

/// Jacobian rank probe over the configured samples.
pub fn jacobian_probe(a: &CRAlgebra, cfg: &ProbeConfig) -> Result<MostowProbeReport> {
    let frame = MostowFrame::new(a)?;
    if frame.parameter_dim() != 2 * frame.k0.len() {
        return Err(CrError::Inconsistent(format!(
            "parameter count {} differs from dim_R k = {}",
            frame.parameter_dim(),
            2 * frame.k0.len()
        )));
    }
    let points = sample_points(&frame, cfg);
    let results: Vec<(f64, std::result::Result<f64, String>)> = points
        .par_iter()
        .map(|p| {
            let norm = p.kappa_tt().sqrt();
            let sv = jacobian(&frame, p, cfg.step).map(|j| smallest_singular_value(&j)).map_err(|e| e.to_string());
            (norm, sv)
        })
        .collect();
    let mut min_sv = f64::INFINITY;
    let mut largest = 0.0f64;
    let mut failures = Vec::new();
    for (s, (norm, res)) in results.into_iter().enumerate() {
        match res {
            Ok(sv) if sv.is_finite() => {
                min_sv = min_sv.min(sv);
                if sv > cfg.threshold {
                    largest = largest.max(norm);
                } else {
                    failures.push(ProbeFailure { sample: s, reason: format!("smallest singular value {sv:e}") });
                }
            }
            Ok(sv) => failures.push(ProbeFailure { sample: s, reason: format!("non-finite singular value {sv}") }),
            Err(e) => failures.push(ProbeFailure { sample: s, reason: e }),
        }
    }
    Ok(MostowProbeReport {
        samples: cfg.samples,
        radius: cfg.radius,
        min_singular_value: min_sv,
        full_rank_everywhere: failures.is_empty() && min_sv > cfg.threshold,
        seed: cfg.seed,
        step: cfg.step,
        threshold: cfg.threshold,
        largest_full_rank_norm: largest,
        failures,
    })
}

/// Recover `(x, T, Y, Z)` from `g = mostow_map(x, T, Y, Z)` by Newton
/// iteration in left-trivialized coordinates, starting from the block
/// projection of the polar factor of `g`.
pub fn factor(frame: &MostowFrame, g: &CMatrix, p_block: usize, max_iter: usize) -> Result<MostowPoint> {
    let mut point = MostowPoint::identity(frame);
    point.x = initial_compact_factor(g, p_block)?;
    for _ in 0..max_iter {
        let current = mostow_map(frame, &point)?;
        let inv = current.clone().try_inverse().ok_or_else(|| CrError::Numeric("singular iterate".into()))?;
        let e = &inv * g - CMatrix::identity(frame.n, frame.n);
        // log(I + E) by its series; E is small once the iteration converges
        let mut log = CMatrix::zeros(frame.n, frame.n);
        let mut pow = e.clone();
        for k in 1..=12 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            log += &pow * C64::new(sign / k as f64, 0.0);
            pow = &pow * &e;
        }
        let rhs = DVector::from_vec(frame.k_coordinates(&log));
        if rhs.norm() < 1e-14 {
            break;
        }
        let jac = jacobian(frame, &point, DEFAULT_STEP)?;
        let delta = jac.lu().solve(&rhs).ok_or_else(|| CrError::Numeric("singular Jacobian".into()))?;
        let mut params = point_params(frame, &point);
        for (p, d) in params.iter_mut().zip(delta.iter()) {
            *p += d;
        }
        point = unpack(frame, &point.x, &params);
    }
    Ok(point)
}

fn unpack(frame: &MostowFrame, x: &CMatrix, params: &[f64]) -> MostowPoint {
    let (k, m, v, z) = (frame.k0.len(), frame.m0.len(), frame.v0.len(), frame.vn.len());
    let xi = combine_real(&frame.k0, &params[..k], frame.n).exp();
    MostowPoint {
        x: unitarize(&(x * xi)),
        t: params[k..k + m].to_vec(),
        y: params[k + m..k + m + v].to_vec(),
        z: (0..z).map(|j| C64::new(params[k + m + v + j], params[k + m + v + z + j])).collect(),
    }
}

/// Block-diagonal part of the polar factor, re-unitarized per block and
/// normalized to determinant one.
fn initial_compact_factor(g: &CMatrix, p_block: usize) -> Result<CMatrix> {
    let n = g.nrows();
    let u = polar_unitary(g)?;
    let mut blocks = CMatrix::zeros(n, n);
    let cuts = if p_block == 0 || p_block >= n { vec![(0, n)] } else { vec![(0, p_block), (p_block, n)] };
    for (lo, hi) in cuts {
        let sub = u.view((lo, lo), (hi - lo, hi - lo)).into_owned();
        let fixed = polar_unitary(&sub)?;
        blocks.view_mut((lo, lo), (hi - lo, hi - lo)).copy_from(&fixed);
    }
    let det = blocks.determinant();
    let phase = C64::from_polar(1.0, -det.arg() / n as f64);
    Ok(blocks * phase)
}

/// `κ(T,T) / (r² - κ(T,T))`, defined for `κ(T,T) < r²`.
pub fn exhaustion_phi_tube(kappa_tt: f64, r: f64) -> Result<f64> {
    if !(kappa_tt.is_finite() && r.is_finite()) || kappa_tt < 0.0 || kappa_tt >= r * r {
        return Err(CrError::Precondition(format!("tube exhaustion needs 0 <= κ(T,T) < r² (got {kappa_tt}, r={r})")));
    }
    Ok(kappa_tt / (r * r - kappa_tt))
}

/// `κ(T,T)`.
pub fn exhaustion_phi_hnr(kappa_tt: f64) -> f64 {
    kappa_tt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{oracle_algebra, OrbitDescriptor};

    fn frame_1_2() -> (CRAlgebra, MostowFrame) {
        let (a, _, _) = oracle_algebra(&OrbitDescriptor::new(1, 2, 1, 0, 0).unwrap()).unwrap();
        let f = MostowFrame::new(&a).unwrap();
        (a, f)
    }

    #[test]
    fn zero_coordinates_give_x() {
        let (_, f) = frame_1_2();
        let mut p = MostowPoint::identity(&f);
        p.x = combine_real(&f.k0, &[0.3, -0.2, 0.1, 0.5], 3).exp();
        let g = mostow_map(&f, &p).unwrap();
        assert!((g - &p.x).norm() < 1e-14);
    }

    #[test]
    fn pure_t_is_positive_hermitian() {
        let (_, f) = frame_1_2();
        let mut p = MostowPoint::identity(&f);
        p.t = vec![0.4];
        let g = mostow_map(&f, &p).unwrap();
        assert!((&g - g.adjoint()).norm() < 1e-12);
        let eig = g.clone().symmetric_eigenvalues();
        assert!(eig.iter().all(|&e| e > 0.0));
    }

    #[test]
    fn frame_dimensions_match() {
        let (a, f) = frame_1_2();
        assert_eq!(f.k0.len(), 4);
        assert_eq!(f.m0.len(), 1);
        assert_eq!(f.v0.len(), a.v0().dim());
        assert_eq!(f.parameter_dim(), 8);
    }

    #[test]
    fn origin_has_full_rank() {
        let (_, f) = frame_1_2();
        let j = jacobian(&f, &MostowPoint::identity(&f), DEFAULT_STEP).unwrap();
        assert!(smallest_singular_value(&j) > 1e-3);
    }

    #[test]
    fn probe_is_deterministic() {
        let (a, _) = frame_1_2();
        let cfg = ProbeConfig { samples: 12, ..ProbeConfig::default() };
        let r1 = serde_json::to_string(&jacobian_probe(&a, &cfg).unwrap()).unwrap();
        let r2 = serde_json::to_string(&jacobian_probe(&a, &cfg).unwrap()).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn round_trip_factorization() {
        let (_, f) = frame_1_2();
        let mut p = MostowPoint::identity(&f);
        p.x = combine_real(&f.k0, &[0.7, -0.4, 0.2, 0.9], 3).exp();
        p.t = vec![0.2];
        p.y = vec![-0.1; f.v0.len()];
        p.z = vec![C64::new(0.05, -0.08); f.vn.len()];
        let g = mostow_map(&f, &p).unwrap();
        let back = factor(&f, &g, 1, 40).unwrap();
        assert!((&back.x - &p.x).norm() < 1e-8);
        assert!((back.t[0] - p.t[0]).abs() < 1e-8);
        for (u, w) in back.y.iter().zip(&p.y) {
            assert!((u - w).abs() < 1e-8);
        }
        for (u, w) in back.z.iter().zip(&p.z) {
            assert!((u - w).norm() < 1e-8);
        }
    }

    #[test]
    fn rejects_non_finite_and_non_unitary() {
        let (_, f) = frame_1_2();
        let mut p = MostowPoint::identity(&f);
        p.t = vec![f64::NAN];
        assert!(mostow_map(&f, &p).is_err());
        let mut p = MostowPoint::identity(&f);
        p.x *= C64::new(2.0, 0.0);
        assert!(mostow_map(&f, &p).is_err());
    }

    #[test]
    fn exhaustion_examples() {
        assert_eq!(exhaustion_phi_tube(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(exhaustion_phi_hnr(0.0), 0.0);
        assert!((exhaustion_phi_tube(0.125, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(exhaustion_phi_hnr(1.0), 1.0);
        assert!(exhaustion_phi_tube(0.25, 0.5).is_err());
        let a = exhaustion_phi_tube(0.1, 0.5).unwrap();
        let b = exhaustion_phi_tube(0.2, 0.5).unwrap();
        assert!(b > a);
    }
}
