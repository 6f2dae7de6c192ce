use crkit::cralg::{is_hnr, is_n_reductive, CRAlgebra, CRAlgebraSpec};
use crkit::grassmann::{oracle_algebra, orbit_report, orbit_reports, OrbitDescriptor, OrbitReport};
use crkit::levi::{
    characteristic_space, cohomology_window, hessian_signature, pseudoconcavity_estimate, DegreeWindow,
    PseudoconcavityEstimate, Sampling, SignatureTriple,
};
use crkit::roots::Verdict;
use crkit::{CrError, Result};
use serde::Serialize;

use crate::{CliResult, Failure};

pub enum AlgebraSource {
    Family(OrbitDescriptor),
    Spec(String),
}

impl AlgebraSource {
    pub fn build(&self) -> Result<CRAlgebra> {
        match self {
            AlgebraSource::Family(d) => Ok(oracle_algebra(d)?.0),
            AlgebraSource::Spec(text) => {
                let spec: CRAlgebraSpec = serde_json::from_str(text).map_err(|e| CrError::Parse(e.to_string()))?;
                spec.build()
            }
        }
    }

    fn label(&self) -> String {
        match self {
            AlgebraSource::Family(d) => format!("grassmann:{},{},{},{},{}", d.p, d.q, d.m, d.a, d.b),
            AlgebraSource::Spec(_) => "v-spec".into(),
        }
    }
}

#[derive(Clone, Copy)]
pub struct CheckFlags {
    pub n_reductive: bool,
    pub hnr: bool,
    pub levi: bool,
}

impl CheckFlags {
    pub fn all() -> Self {
        CheckFlags { n_reductive: true, hnr: true, levi: true }
    }
}

#[derive(Serialize)]
pub struct ContextRecord {
    pub p: usize,
    pub q: usize,
}

#[derive(Serialize)]
pub struct AlgebraDims {
    pub k0: usize,
    pub v: usize,
    pub v_r: usize,
    pub v0: usize,
    pub v_n: usize,
}

#[derive(Serialize)]
pub struct LeviSection {
    pub m0_dim: usize,
    pub pseudoconcavity: PseudoconcavityEstimate,
    /// Hessian signature of the exhaustion function along the first direction.
    pub hessian: Option<SignatureTriple>,
    pub window_q: usize,
    pub window: DegreeWindow,
}

#[derive(Serialize)]
pub struct AnalysisRecord {
    pub source: String,
    pub context: ContextRecord,
    pub dims: AlgebraDims,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_reductive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hnr: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi: Option<LeviSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitReport>,
    pub notes: Vec<String>,
}

pub fn analyze(source: &AlgebraSource, flags: CheckFlags, seed: u64, samples: usize) -> CliResult<AnalysisRecord> {
    let alg = source.build()?;
    let ctx = alg.context();
    let reductive = is_n_reductive(&alg);
    let mut notes = Vec::new();
    let family = match source {
        AlgebraSource::Family(d) => Some(*d),
        AlgebraSource::Spec(_) => None,
    };
    let hnr = if flags.hnr {
        Some(if reductive { is_hnr(&alg)? } else { Verdict::No })
    } else {
        None
    };
    if flags.hnr && !reductive {
        notes.push("not n-reductive, hence not HNR".into());
    }
    let levi = if flags.levi && reductive {
        let m0 = characteristic_space(&alg)?;
        let est = pseudoconcavity_estimate(&alg, &Sampling { seed, count: samples }, family.as_ref())?;
        let hessian = est.reports.first().map(|r| hessian_signature(&r.signature, alg.k_cr()));
        let window_q = est.closed_form_mu.or(est.sampled_min).unwrap_or(0).min(alg.n_cr());
        if let Some(d) = &est.discrepancy {
            notes.push(d.clone());
        }
        if m0.dim() == 0 {
            notes.push("characteristic space is zero: no Levi directions".into());
        }
        Some(LeviSection {
            m0_dim: m0.dim(),
            window: cohomology_window(alg.n_cr(), window_q)?,
            window_q,
            hessian,
            pseudoconcavity: est,
        })
    } else {
        if flags.levi {
            notes.push("Levi form requires an n-reductive algebra".into());
        }
        None
    };
    let orbit = match family {
        Some(d) => Some(orbit_report(&d)?),
        None => None,
    };
    Ok(AnalysisRecord {
        source: source.label(),
        context: ContextRecord { p: ctx.p, q: ctx.q },
        dims: AlgebraDims {
            k0: ctx.k0().dim(),
            v: alg.v().dim(),
            v_r: alg.v_r().dim(),
            v0: alg.v0().dim(),
            v_n: alg.v_n().dim(),
        },
        n: alg.n_cr(),
        k: alg.k_cr(),
        n_reductive: flags.n_reductive.then_some(reductive),
        hnr,
        levi,
        orbit,
        notes,
    })
}

#[derive(Serialize)]
pub struct DiscrepancyEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub field: String,
    pub formula_value: usize,
    pub oracle_value: usize,
}

#[derive(Serialize)]
pub struct DiscrepancyReport {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub orbits: usize,
    pub formulas_match: bool,
    pub discrepancies: Vec<DiscrepancyEntry>,
}

pub fn discrepancy_report(p: usize, q: usize, m: usize) -> CliResult<DiscrepancyReport> {
    let reports = orbit_reports(p, q, m).map_err(Failure::from)?;
    let mut discrepancies = Vec::new();
    for r in &reports {
        let d = &r.descriptor;
        for x in &r.discrepancies {
            discrepancies.push(DiscrepancyEntry {
                a: d.a,
                b: d.b,
                c: d.c(),
                field: x.field.clone(),
                formula_value: x.formula_value,
                oracle_value: x.oracle_value,
            });
        }
    }
    Ok(DiscrepancyReport { p, q, m, orbits: reports.len(), formulas_match: discrepancies.is_empty(), discrepancies })
}
