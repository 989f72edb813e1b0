//! The five commands behind the binary, as pure functions returning
//! structured reports. Exit codes: 0 success, 2 input/usage error,
//! 3 certification failure, 4 cross-check mismatch, 5 irrational atypical
//! locus.

use polarbetti::arrangement::{
    betti_os, build_poset, format_arrangement, parse_arrangement, restrict_generic,
    restrict_to_member, Arrangement, ArrangementError,
};
use polarbetti::curve_engine::{
    check_arrangement, find_engine_direction, lambda_engine, EngineError, PlaneCurve,
};
use polarbetti::families;
use polarbetti::pencil::{
    certify_direction, choose_generic_value, find_generic_direction, Pencil, PencilError,
    DEFAULT_BUDGET,
};
use polarbetti::polar::{betti_slicing, polar_report, verify_split, PolarError};
use polarbetti::qpoly::rat::{parse_rat, Rat};
use thiserror::Error;

use crate::corpus::random_arrangement;
use crate::expr::{parse_curve, ExprError};
use crate::report::{
    arrangement_input, certificate_info, comparison_info, curve_input, engine_info,
    polar_info, CellsInfo, CheckInfo, RunReport,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("certification failure: {0}")]
    Certification(String),
    #[error("cross-check mismatch: {0}")]
    Mismatch(String),
    #[error("irrational atypical locus: {0}")]
    Irrational(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Certification(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Irrational(_) => 5,
        }
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        match e {
            ArrangementError::InvalidCertificate { .. }
            | ArrangementError::DegenerateRestriction { .. } => {
                CliError::Certification(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PencilError> for CliError {
    fn from(e: PencilError) -> Self {
        match e {
            PencilError::ZeroDirection | PencilError::DimensionMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            other => CliError::Certification(other.to_string()),
        }
    }
}

impl From<PolarError> for CliError {
    fn from(e: PolarError) -> Self {
        match e {
            PolarError::Uncertified { .. } => CliError::Certification(e.to_string()),
            PolarError::NotAPointStratum => CliError::Input(e.to_string()),
            PolarError::Pencil(inner) => inner.into(),
            PolarError::Arrangement(inner) => inner.into(),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::ZeroDirection
            | EngineError::NotPlane { .. }
            | EngineError::ZeroCurve
            | EngineError::ConstantCurve
            | EngineError::NotSquarefree { .. }
            | EngineError::Qpoly(_) => CliError::Input(e.to_string()),
            EngineError::CycleRejected(_)
            | EngineError::UncertifiedPencil { .. }
            | EngineError::NoCertifiedDirection { .. } => CliError::Certification(e.to_string()),
            EngineError::IrrationalAtypical { .. } => CliError::Irrational(e.to_string()),
            EngineError::VerticalFiber { .. }
            | EngineError::SharedComponent
            | EngineError::Semicontinuity { .. }
            | EngineError::ComparisonMismatch { .. } => CliError::Mismatch(e.to_string()),
            EngineError::Polar(inner) => inner.into(),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Os,
    Slicing,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Os => "os",
            Method::Slicing => "slicing",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub budget: usize,
    pub dedupe: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: DEFAULT_BUDGET, dedupe: false }
    }
}

fn cells_from_betti(betti: &[u64]) -> CellsInfo {
    let total = betti.iter().sum();
    let euler = betti
        .iter()
        .enumerate()
        .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    CellsInfo { counts: betti.to_vec(), total, euler }
}

/// The equality check behind `betti --method both`; exposed so the
/// mismatch path can be fault-injection tested without fabricating a
/// broken pipeline.
pub fn compare_betti(oracle: &[u64], slicing: &[u64]) -> CheckInfo {
    let pass = oracle == slicing;
    CheckInfo {
        name: "oracle_vs_slicing".into(),
        pass,
        detail: format!("mobius oracle {oracle:?} vs pencil slicing {slicing:?}"),
    }
}

/// Betti numbers of the complement of the arrangement in `text`.
pub fn cmd_betti(text: &str, method: Method, opts: &Options) -> Result<RunReport, CliError> {
    let a = parse_arrangement(text, opts.dedupe)?;
    let mut report = RunReport::new("betti", arrangement_input(text, &a));
    report.method = Some(method.name().into());
    match method {
        Method::Os => {
            report.betti = Some(betti_os(&a));
        }
        Method::Slicing => {
            let (b, _) = betti_slicing(&a, opts.budget)?;
            report.betti = Some(b);
        }
        Method::Both => {
            let oracle = betti_os(&a);
            let (sliced, _) = betti_slicing(&a, opts.budget)?;
            let check = compare_betti(&oracle, &sliced);
            report.pass &= check.pass;
            report.checks.push(check);
            report.betti = Some(oracle);
        }
    }
    Ok(report)
}

/// Atypical values, polar numbers, Betti and cell counts, and the full
/// slicing trace.
pub fn cmd_polar(text: &str, opts: &Options) -> Result<RunReport, CliError> {
    let a = parse_arrangement(text, opts.dedupe)?;
    let mut report = RunReport::new("polar", arrangement_input(text, &a));
    let (polar, trace) = polar_report(&a, opts.budget)?;
    if a.dim() >= 1 {
        let pencil = Pencil::new(polar.direction.clone()).expect("nonzero direction");
        let (_, cert) = choose_generic_value(&a, &pencil, opts.budget)?;
        report.certificates.push(certificate_info(a.dim(), &cert));
    }
    report.cells = Some(cells_from_betti(&polar.betti));
    report.betti = Some(polar.betti.clone());
    report.polar = Some(polar_info(&polar, &trace));
    Ok(report)
}

pub enum EngineInput<'a> {
    ArrangementText(&'a str),
    Curve(&'a str),
}

/// Parse `a,b` (or `a b`) into a pencil direction for the engine.
pub fn parse_direction(s: &str) -> Result<Vec<Rat>, CliError> {
    let parts: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!(
            "direction must be two rationals, got `{s}`"
        )));
    }
    parts
        .iter()
        .map(|p| parse_rat(p).ok_or(CliError::Input(format!("`{p}` is not a rational"))))
        .collect()
}

/// Run the plane-curve engine on an arrangement file or a curve
/// expression. Arrangement inputs are cross-checked against the
/// combinatorial polar numbers, and the verdict gates the exit code.
pub fn cmd_engine(
    input: EngineInput,
    direction: Option<&str>,
    opts: &Options,
) -> Result<RunReport, CliError> {
    match input {
        EngineInput::ArrangementText(text) => {
            let a = parse_arrangement(text, opts.dedupe)?;
            if a.dim() != 2 {
                return Err(CliError::Input(format!(
                    "engine requires a plane arrangement (dim 2), got dim {}",
                    a.dim()
                )));
            }
            let pencil = match direction {
                Some(d) => Pencil::new(parse_direction(d)?)
                    .map_err(|e| CliError::Input(e.to_string()))?,
                None => find_generic_direction(&a, opts.budget)?.0,
            };
            let mut report = RunReport::new("engine", arrangement_input(text, &a));
            let cert = certify_direction(&a, &pencil);
            report.certificates.push(certificate_info(2, &cert));
            let cmp = check_arrangement(&a, &pencil)?;
            report.betti = Some(betti_os(&a));
            let detail = format!(
                "engine lambda total {} equals top Betti number {}",
                cmp.lambda_total, cmp.betti_top
            );
            if let Some(engine) = &cmp.engine {
                let mut info = engine_info(engine);
                info.comparison = Some(comparison_info(&cmp));
                report.engine = Some(info);
            }
            report.push_check("engine_vs_combinatorics", true, detail);
            Ok(report)
        }
        EngineInput::Curve(src) => {
            let f = parse_curve(src)?;
            let rendered = f.to_string();
            let curve = PlaneCurve::new(f).map_err(CliError::from)?;
            let dir = match direction {
                Some(d) => parse_direction(d)?,
                None => find_engine_direction(&curve, opts.budget)?,
            };
            let engine = lambda_engine(&curve, &dir)?;
            let mut report = RunReport::new("engine", curve_input(src, rendered));
            let mut info = engine_info(&engine);
            info.note = Some(
                "curve input: the total drop counts top-degree cell attachments of the pencil; \
                 it equals the top Betti number of the complement only for line arrangements"
                    .into(),
            );
            report.engine = Some(info);
            Ok(report)
        }
    }
}

/// Generate a corpus arrangement file.
pub fn cmd_gen(family: &str, params: &[usize], seed: Option<u64>) -> Result<String, CliError> {
    fn one(params: &[usize], what: &str) -> Result<usize, CliError> {
        match params {
            [v] => Ok(*v),
            _ => Err(CliError::Input(format!("family `{what}` takes one parameter"))),
        }
    }
    let a = match family {
        "boolean" => {
            let n = one(params, "boolean")?;
            if n > 8 {
                return Err(CliError::Input("boolean dimension capped at 8".into()));
            }
            families::boolean(n)
        }
        "braid" => {
            let n = one(params, "braid")?;
            if !(1..=6).contains(&n) {
                return Err(CliError::Input("braid dimension must be in 1..=6".into()));
            }
            families::braid(n)
        }
        "concurrent" => {
            let k = one(params, "concurrent")?;
            if k > 50 {
                return Err(CliError::Input("concurrent count capped at 50".into()));
            }
            families::concurrent(k)
        }
        "parallel" => {
            let k = one(params, "parallel")?;
            if k > 50 {
                return Err(CliError::Input("parallel count capped at 50".into()));
            }
            families::parallel(k)
        }
        "points" => {
            let k = one(params, "points")?;
            if k > 50 {
                return Err(CliError::Input("points count capped at 50".into()));
            }
            families::points(k)
        }
        "generic" => match params {
            [n, k] => {
                if !(1..=4).contains(n) || *k > 12 {
                    return Err(CliError::Input(
                        "generic family needs 1 <= n <= 4 and k <= 12".into(),
                    ));
                }
                families::generic(*n, *k)
            }
            _ => {
                return Err(CliError::Input(
                    "family `generic` takes two parameters: n k".into(),
                ))
            }
        },
        "random" => {
            if !params.is_empty() {
                return Err(CliError::Input(
                    "family `random` takes no positional parameters, only --seed".into(),
                ));
            }
            let seed = seed.ok_or(CliError::Input(
                "family `random` requires --seed (test harness use)".into(),
            ))?;
            random_arrangement(seed)
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown family `{other}`; expected boolean|braid|generic|concurrent|parallel|points|random"
            )))
        }
    };
    Ok(format_arrangement(&a))
}

/// Deletion-restriction identity for every hyperplane; used by the verify
/// suite.
fn deletion_restriction_holds(a: &Arrangement) -> Result<(bool, String), CliError> {
    let whole = betti_os(a);
    for j in 0..a.len() {
        let deleted = betti_os(&a.delete(j)?);
        let restricted = betti_os(&restrict_to_member(a, j)?);
        for q in 0..whole.len() {
            let mut rhs = *deleted.get(q).unwrap_or(&0);
            if q >= 1 {
                rhs += restricted.get(q - 1).unwrap_or(&0);
            }
            if whole[q] != rhs {
                return Ok((
                    false,
                    format!("fails at hyperplane {j}, degree {q}: {} vs {}", whole[q], rhs),
                ));
            }
        }
    }
    Ok((true, format!("verified for all {} hyperplanes", a.len())))
}

/// Run the full invariant suite on one arrangement: oracle vs slicing,
/// Möbius recursion and signs, slice isomorphisms below the top degree,
/// the splitting identities, deletion-restriction, low-degree Betti
/// numbers, and (in dimension 2) the engine cross-check.
pub fn cmd_verify(text: &str, opts: &Options) -> Result<RunReport, CliError> {
    let a = parse_arrangement(text, opts.dedupe)?;
    let n = a.dim();
    let mut report = RunReport::new("verify", arrangement_input(text, &a));

    let oracle = betti_os(&a);
    let (sliced, _) = betti_slicing(&a, opts.budget)?;
    let check = compare_betti(&oracle, &sliced);
    report.pass &= check.pass;
    report.checks.push(check);

    match build_poset(&a).check_mobius() {
        Ok(()) => report.push_check(
            "mobius_recursion",
            true,
            "interval sums vanish and signs alternate".into(),
        ),
        Err(v) => report.push_check("mobius_recursion", false, v.to_string()),
    }

    let mut top_pencil: Option<Pencil> = None;
    if n >= 1 {
        let (pencil, _) = find_generic_direction(&a, opts.budget)?;
        let (value, cert) = choose_generic_value(&a, &pencil, opts.budget)?;
        let restriction = restrict_generic(&a, &pencil, &value, &cert)?;
        report.certificates.push(certificate_info(n, &cert));
        let down = betti_os(&restriction);
        report.push_check(
            "slice_isomorphisms",
            oracle[..n] == down[..],
            format!("b_0..b_{} agree with the generic slice: {:?}", n.saturating_sub(1), down),
        );
        top_pencil = Some(pencil);
    }

    let split = verify_split(&a, opts.budget)?;
    report.push_check(
        "splitting",
        split.pass,
        format!(
            "top degree: lambda {} vs b_{} = {}; below: {} vs {}",
            split.lambda_total, n, split.betti_top, split.betti_below, split.betti_below_slice
        ),
    );

    let (dr_pass, dr_detail) = deletion_restriction_holds(&a)?;
    report.push_check("deletion_restriction", dr_pass, dr_detail);

    let low_ok = oracle[0] == 1 && (n == 0 || oracle[1] == a.len() as u64);
    report.push_check(
        "low_degree_betti",
        low_ok,
        format!("b_0 = {}, b_1 = {:?}", oracle[0], oracle.get(1)),
    );

    if n == 2 {
        let pencil = top_pencil.expect("dimension 2 has a pencil");
        match check_arrangement(&a, &pencil) {
            Ok(cmp) => {
                let detail = format!(
                    "engine lambda total {} equals b_2 = {}",
                    cmp.lambda_total, cmp.betti_top
                );
                report.push_check("engine_cross_check", true, detail);
            }
            Err(EngineError::ComparisonMismatch { context, engine, comb }) => {
                report.push_check(
                    "engine_cross_check",
                    false,
                    format!("mismatch at {context}: engine {engine}, combinatorics {comb}"),
                );
            }
            Err(other) => return Err(other.into()),
        }
    }

    report.betti = Some(oracle.clone());
    report.cells = Some(cells_from_betti(&oracle));
    Ok(report)
}
