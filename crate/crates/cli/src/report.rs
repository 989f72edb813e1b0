//! Structured run reports: a versioned JSON schema plus a human table.
//!
//! Reports are deterministic for identical inputs and flags: rationals are
//! rendered canonically, collections keep fixed orders, and timing is kept
//! out of the structured form (it appears only in the human rendering).

use std::fmt::Write as _;
use std::time::Duration;

use polarbetti::arrangement::Arrangement;
use polarbetti::curve_engine::{ArrangementComparison, EngineReport};
use polarbetti::pencil::GenericityCertificate;
use polarbetti::polar::{PolarReport, SliceTrace};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "polarbetti.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub digest: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplanes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellsInfo {
    pub counts: Vec<u64>,
    pub total: u64,
    pub euler: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtypicalInfo {
    pub value: String,
    pub stratum: Vec<String>,
    pub lambda: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceLevelInfo {
    pub ambient_dim: usize,
    pub hyperplanes: usize,
    pub direction: Vec<String>,
    pub member_value: String,
    pub point_strata: usize,
    pub lambda_total: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarInfo {
    pub direction: Vec<String>,
    pub member_value: String,
    pub atypical: Vec<AtypicalInfo>,
    pub lambda_total: u64,
    pub trace: Vec<TraceLevelInfo>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EngineAtypicalInfo {
    pub value: String,
    pub fiber: u64,
    pub lambda: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonInfo {
    pub value: String,
    pub stratum: Vec<String>,
    pub lambda_engine: u64,
    pub lambda_comb: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EngineInfo {
    pub direction: Vec<String>,
    pub generic_value: String,
    pub n_generic: u64,
    pub atypical: Vec<EngineAtypicalInfo>,
    pub lambda_total: u64,
    pub degree_drop: Vec<String>,
    pub cycle_deg_y: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Vec<ComparisonInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateInfo {
    pub ambient_dim: usize,
    pub direction: Vec<String>,
    pub direction_ok: bool,
    pub separation_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member_value: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckInfo {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub input: InputInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<CellsInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polar: Option<PolarInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineInfo>,
    pub certificates: Vec<CertificateInfo>,
    pub checks: Vec<CheckInfo>,
    pub pass: bool,
    #[serde(skip)]
    pub timing: Option<Duration>,
}

impl RunReport {
    pub fn new(command: &str, input: InputInfo) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            input,
            method: None,
            betti: None,
            cells: None,
            polar: None,
            engine: None,
            certificates: Vec::new(),
            checks: Vec::new(),
            pass: true,
            timing: None,
        }
    }

    pub fn push_check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(CheckInfo { name: name.to_string(), pass, detail });
        self.pass &= pass;
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            4
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schema:  {}", self.schema);
        let _ = writeln!(s, "command: {}", self.command);
        let _ = write!(s, "input:   {} (digest {})", self.input.kind, &self.input.digest[..16]);
        if let Some(d) = self.input.dim {
            let _ = write!(s, ", dim {d}");
        }
        if let Some(h) = self.input.hyperplanes {
            let _ = write!(s, ", {h} hyperplanes");
        }
        if let Some(c) = &self.input.curve {
            let _ = write!(s, ", f = {c}");
        }
        s.push('\n');
        if let Some(m) = &self.method {
            let _ = writeln!(s, "method:  {m}");
        }
        if let Some(b) = &self.betti {
            let _ = writeln!(s, "betti:   {}", join_u64(b));
        }
        if let Some(c) = &self.cells {
            let _ = writeln!(
                s,
                "cells:   {} (total {}, euler {})",
                join_u64(&c.counts),
                c.total,
                c.euler
            );
        }
        if let Some(p) = &self.polar {
            if p.direction.is_empty() {
                let _ = writeln!(s, "pencil:  trivial (dimension 0)");
            } else {
                let _ = writeln!(
                    s,
                    "pencil:  direction [{}], member value {}",
                    p.direction.join(", "),
                    p.member_value
                );
            }
            if p.atypical.is_empty() {
                let _ = writeln!(s, "atypical: none (lambda total 0)");
            } else {
                let vals: Vec<String> = p
                    .atypical
                    .iter()
                    .map(|a| format!("{} (lambda {})", a.value, a.lambda))
                    .collect();
                let _ = writeln!(
                    s,
                    "atypical: {}; lambda total {}",
                    vals.join(", "),
                    p.lambda_total
                );
            }
            if !p.trace.is_empty() {
                let _ = writeln!(s, "trace:");
            }
            for level in &p.trace {
                let _ = writeln!(
                    s,
                    "  dim {}: {} hyperplanes, direction [{}], value {}, {} point strata, lambda {}",
                    level.ambient_dim,
                    level.hyperplanes,
                    level.direction.join(", "),
                    level.member_value,
                    level.point_strata,
                    level.lambda_total
                );
            }
        }
        if let Some(e) = &self.engine {
            let _ = writeln!(
                s,
                "engine:  direction [{}], generic value {} with {} intersections, cycle fiber degree {}",
                e.direction.join(", "),
                e.generic_value,
                e.n_generic,
                e.cycle_deg_y
            );
            if e.atypical.is_empty() {
                let _ = writeln!(s, "  atypical: none (lambda total 0)");
            } else {
                let vals: Vec<String> = e
                    .atypical
                    .iter()
                    .map(|a| format!("{} (fiber {}, lambda {})", a.value, a.fiber, a.lambda))
                    .collect();
                let _ = writeln!(s, "  atypical: {}; lambda total {}", vals.join(", "), e.lambda_total);
            }
            if !e.degree_drop.is_empty() {
                let _ = writeln!(
                    s,
                    "  degree-drop values (excluded from lambda): {}",
                    e.degree_drop.join(", ")
                );
            }
            if let Some(cmp) = &e.comparison {
                for v in cmp {
                    let _ = writeln!(
                        s,
                        "  value {}: engine lambda {}, |mobius| {} at ({})",
                        v.value,
                        v.lambda_engine,
                        v.lambda_comb,
                        v.stratum.join(", ")
                    );
                }
            }
            if let Some(n) = &e.note {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        for c in &self.certificates {
            let member = c
                .member_value
                .as_ref()
                .map_or(String::new(), |v| format!(", member value {v}"));
            let _ = writeln!(
                s,
                "certificate: dim {}, direction [{}], direction_ok {}, separation_ok {}{}",
                c.ambient_dim,
                c.direction.join(", "),
                c.direction_ok,
                c.separation_ok,
                member
            );
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "checks:");
            for c in &self.checks {
                let _ = writeln!(
                    s,
                    "  {:<24} {} {}",
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.detail
                );
            }
        }
        let _ = writeln!(s, "pass:    {}", self.pass);
        if let Some(t) = self.timing {
            let _ = writeln!(s, "time:    {} ms", t.as_millis());
        }
        s
    }
}

fn join_u64(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

pub fn arrangement_input(text: &str, a: &Arrangement) -> InputInfo {
    InputInfo {
        digest: sha256_hex(text.as_bytes()),
        kind: "arrangement".into(),
        dim: Some(a.dim()),
        hyperplanes: Some(a.len()),
        curve: None,
    }
}

pub fn curve_input(expr: &str, rendered: String) -> InputInfo {
    InputInfo {
        digest: sha256_hex(expr.as_bytes()),
        kind: "curve".into(),
        dim: Some(2),
        hyperplanes: None,
        curve: Some(rendered),
    }
}

fn rats_to_strings(values: &[polarbetti::qpoly::Rat]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn polar_info(report: &PolarReport, trace: &SliceTrace) -> PolarInfo {
    PolarInfo {
        direction: rats_to_strings(&report.direction),
        member_value: report.member_value.to_string(),
        atypical: report
            .atypical
            .iter()
            .map(|a| AtypicalInfo {
                value: a.value.to_string(),
                stratum: rats_to_strings(&a.stratum.point),
                lambda: a.lambda,
            })
            .collect(),
        lambda_total: report.lambda_total,
        trace: trace
            .levels
            .iter()
            .map(|l| TraceLevelInfo {
                ambient_dim: l.ambient_dim,
                hyperplanes: l.hyperplane_count,
                direction: rats_to_strings(&l.direction),
                member_value: l.member_value.to_string(),
                point_strata: l.point_strata,
                lambda_total: l.lambda_total,
            })
            .collect(),
    }
}


pub fn engine_info(report: &EngineReport) -> EngineInfo {
    EngineInfo {
        direction: rats_to_strings(&report.direction),
        generic_value: report.generic_value.to_string(),
        n_generic: report.n_generic,
        atypical: report
            .atypical
            .iter()
            .map(|a| EngineAtypicalInfo {
                value: a.value.to_string(),
                fiber: a.fiber,
                lambda: a.lambda,
            })
            .collect(),
        lambda_total: report.lambda_total,
        degree_drop: rats_to_strings(&report.degree_drop),
        cycle_deg_y: report.cycle_deg_y,
        comparison: None,
        note: None,
    }
}

pub fn comparison_info(cmp: &ArrangementComparison) -> Vec<ComparisonInfo> {
    cmp.values
        .iter()
        .map(|v| ComparisonInfo {
            value: v.value.to_string(),
            stratum: rats_to_strings(&v.stratum),
            lambda_engine: v.lambda_engine,
            lambda_comb: v.lambda_comb,
        })
        .collect()
}

pub fn certificate_info(ambient_dim: usize, cert: &GenericityCertificate) -> CertificateInfo {
    CertificateInfo {
        ambient_dim,
        direction: rats_to_strings(cert.direction()),
        direction_ok: cert.direction_ok,
        separation_ok: cert.separation_ok,
        member_value: cert.member.as_ref().map(|m| m.value.to_string()),
    }
}
