use std::fmt::Write as _;

use crkit::grassmann::{DualityEntry, OrbitReport, CSV_HEADER};
use crkit::mostow::MostowProbeReport;
use serde::Serialize;

use crate::analysis::{AnalysisRecord, DiscrepancyReport};
use crate::{CliResult, Failure, Format};

fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Internal(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

pub trait Emit {
    fn emit(&self, format: Format) -> CliResult<String>;
}

impl Emit for Vec<OrbitReport> {
    fn emit(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut header: Vec<&str> = CSV_HEADER.to_vec();
                header.push("discrepancies");
                csv_text(&header, &self.iter().map(OrbitReport::csv_row).collect::<Vec<_>>())
            }
            Format::Pretty => {
                let mut s = String::new();
                for r in self {
                    let d = &r.descriptor;
                    let _ = writeln!(
                        s,
                        "SU({},{}) m={} (a,b)=({},{}) c={}: n={} k={} [formula n={} k={} mu={}] n-reductive={} hnr={}{}{}{}",
                        d.p,
                        d.q,
                        d.m,
                        d.a,
                        d.b,
                        d.c(),
                        r.oracle.n,
                        r.oracle.k,
                        r.formula.n,
                        r.formula.k,
                        r.formula.mu,
                        r.flags.n_reductive,
                        r.flags.hnr,
                        if r.flags.open_orbit { " open" } else { "" },
                        if r.flags.minimal { " minimal" } else { "" },
                        if r.discrepancies.is_empty() { "" } else { " DISCREPANCY" },
                    );
                }
                Ok(s)
            }
        }
    }
}

impl Emit for Vec<DualityEntry> {
    fn emit(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let header = ["p", "q", "m", "a", "b", "c", "m_plus", "m_minus", "sig_plus", "sig_minus", "sig_zero",
                    "dim_l_cap_wplus", "dim_l_cap_wminus", "in_m_plus", "in_m_minus", "open_orbit", "minimal"];
                let rows = self
                    .iter()
                    .map(|e| {
                        let d = &e.descriptor;
                        let c = &e.certificate;
                        vec![
                            d.p.to_string(),
                            d.q.to_string(),
                            d.m.to_string(),
                            d.a.to_string(),
                            d.b.to_string(),
                            d.c().to_string(),
                            e.m_plus.clone(),
                            e.m_minus.clone(),
                            c.signature.plus.to_string(),
                            c.signature.minus.to_string(),
                            c.signature.zero.to_string(),
                            c.intersection_dims.0.to_string(),
                            c.intersection_dims.1.to_string(),
                            c.in_m_plus.to_string(),
                            c.in_m_minus.to_string(),
                            e.open_orbit.to_string(),
                            e.minimal.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>();
                csv_text(&header, &rows)
            }
            Format::Pretty => {
                let mut s = String::new();
                for e in self {
                    let _ = writeln!(
                        s,
                        "{} <-> {}  M0 = M+ ∩ M- certified: {}{}{}",
                        e.m_plus,
                        e.m_minus,
                        e.certificate.in_m_plus && e.certificate.in_m_minus,
                        if e.open_orbit { " open" } else { "" },
                        if e.minimal { " minimal" } else { "" },
                    );
                }
                Ok(s)
            }
        }
    }
}

impl Emit for MostowProbeReport {
    fn emit(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_text(
                &["samples", "radius", "min_singular_value", "full_rank_everywhere", "seed", "failures"],
                &[vec![
                    self.samples.to_string(),
                    self.radius.to_string(),
                    format!("{:e}", self.min_singular_value),
                    self.full_rank_everywhere.to_string(),
                    self.seed.to_string(),
                    self.failures.len().to_string(),
                ]],
            ),
            Format::Pretty => Ok(format!(
                "{} samples, radius {}, seed {}: min singular value {:.3e}, full rank everywhere: {}\n",
                self.samples, self.radius, self.seed, self.min_singular_value, self.full_rank_everywhere
            )),
        }
    }
}

impl Emit for AnalysisRecord {
    fn emit(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let opt = |v: Option<String>| v.unwrap_or_default();
                let levi_min = self.levi.as_ref().and_then(|l| l.pseudoconcavity.sampled_min).map(|v| v.to_string());
                csv_text(
                    &["source", "p", "q", "dim_k0", "dim_v", "dim_v_r", "dim_v0", "dim_v_n", "n", "k", "n_reductive",
                        "hnr", "m0_dim", "sampled_witt_min"],
                    &[vec![
                        self.source.clone(),
                        self.context.p.to_string(),
                        self.context.q.to_string(),
                        self.dims.k0.to_string(),
                        self.dims.v.to_string(),
                        self.dims.v_r.to_string(),
                        self.dims.v0.to_string(),
                        self.dims.v_n.to_string(),
                        self.n.to_string(),
                        self.k.to_string(),
                        opt(self.n_reductive.map(|b| b.to_string())),
                        opt(self.hnr.map(|v| v.to_string())),
                        opt(self.levi.as_ref().map(|l| l.m0_dim.to_string())),
                        opt(levi_min),
                    ]],
                )
            }
            Format::Pretty => {
                let mut s = format!(
                    "{} in su({},{}): dim v = {}, n = {}, k = {}\n",
                    self.source, self.context.p, self.context.q, self.dims.v, self.n, self.k
                );
                if let Some(r) = self.n_reductive {
                    let _ = writeln!(s, "n-reductive: {r}");
                }
                if let Some(h) = self.hnr {
                    let _ = writeln!(s, "HNR: {h}");
                }
                if let Some(l) = &self.levi {
                    let _ = writeln!(
                        s,
                        "dim m0 = {}, sampled Witt minimum = {:?}, closed-form mu = {:?}",
                        l.m0_dim, l.pseudoconcavity.sampled_min, l.pseudoconcavity.closed_form_mu
                    );
                }
                for n in &self.notes {
                    let _ = writeln!(s, "note: {n}");
                }
                Ok(s)
            }
        }
    }
}

impl Emit for DiscrepancyReport {
    fn emit(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_text(
                &["p", "q", "m", "a", "b", "c", "field", "formula_value", "oracle_value"],
                &self
                    .discrepancies
                    .iter()
                    .map(|d| {
                        vec![
                            self.p.to_string(),
                            self.q.to_string(),
                            self.m.to_string(),
                            d.a.to_string(),
                            d.b.to_string(),
                            d.c.to_string(),
                            d.field.clone(),
                            d.formula_value.to_string(),
                            d.oracle_value.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            Format::Pretty => {
                let mut s = format!(
                    "SU({},{}) m={}: {} orbits, formulas match oracle: {}\n",
                    self.p, self.q, self.m, self.orbits, self.formulas_match
                );
                for d in &self.discrepancies {
                    let _ = writeln!(
                        s,
                        "  (a,b)=({},{}) c={}: {} formula {} vs oracle {}",
                        d.a, d.b, d.c, d.field, d.formula_value, d.oracle_value
                    );
                }
                Ok(s)
            }
        }
    }
}
