//! Literal polar-curve engine for plane curves.
//!
//! For a squarefree `f` in two variables and a linear direction `l`, the
//! engine changes coordinates so the pencil direction becomes `x`, forms
//! the critical locus of the pair `(x, f)` (the zero set of `df/dy`),
//! removes the components lying in the singular locus of `f`, and keeps the
//! reduced curve `g`. Members of the pencil are the vertical lines `x = t`;
//! counting roots of `g(t, .)` off the curve, with multiplicity, gives the
//! intersection count `N(t)`, and the drop `N(generic) - N(a)` at an
//! atypical value `a` is the polar number there. Atypical candidates are
//! the roots of the eliminant `Res_y(g, f)`.
//!
//! A direction is accepted only with a certificate: the fiber degree of the
//! transformed curve equals its total degree (no branch of the curve
//! escapes through the point at infinity shared by the members, where the
//! pencil axis sits), the cycle comes out squarefree without needing
//! reduction, and its leading y-coefficient is a nonzero constant (no
//! vertical component and no polar branch escaping to infinity). Rejected
//! directions are reported as values so callers can retry; this keeps every
//! accepted computation inside the regime where the drop counts are the
//! polar numbers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::pencil::{candidate_directions, certify_direction, Pencil};
use crate::polar::{atypical_values, lambda_comb, PolarError};
use crate::qpoly::bipoly::{resultant_y, squarefree_part, substitute_affine, gcd_bi, BiPoly};
use crate::qpoly::matrix::QMatrix;
use crate::qpoly::rat::{rat_int, Rat};
use crate::qpoly::roots::rational_roots;
use crate::qpoly::unipoly::coprime_part;
use crate::qpoly::QpolyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleRejection {
    /// `deg_y` of the transformed curve is below its total degree: the
    /// curve meets the common point at infinity of the pencil members.
    NotRegular { fiber_degree: usize, total_degree: usize },
    /// The polar cycle carries a repeated factor; a generic direction
    /// yields a reduced cycle.
    NotReduced { cycle: String, reduced: String },
    /// The leading y-coefficient of the cycle is nonconstant: a polar
    /// branch escapes to infinity or lies in a vertical line.
    LeadingCoefficient { leading: String },
}

impl fmt::Display for CycleRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleRejection::NotRegular { fiber_degree, total_degree } => write!(
                f,
                "direction is not regular for the curve: fiber degree {fiber_degree} < total degree {total_degree}"
            ),
            CycleRejection::NotReduced { cycle, reduced } => {
                write!(f, "polar cycle {cycle} is not reduced (squarefree part {reduced})")
            }
            CycleRejection::LeadingCoefficient { leading } => {
                write!(f, "leading y-coefficient {leading} of the polar cycle is not constant")
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("pencil direction must be a nonzero pair of rationals")]
    ZeroDirection,
    #[error("curve engine requires ambient dimension 2, got {dim}")]
    NotPlane { dim: usize },
    #[error("curve polynomial is zero")]
    ZeroCurve,
    #[error("curve polynomial is constant and defines no curve")]
    ConstantCurve,
    #[error("curve polynomial is not squarefree; its squarefree part is {reduced}")]
    NotSquarefree { reduced: String },
    #[error("direction rejected: {0}")]
    CycleRejected(CycleRejection),
    #[error("fiber at {value} lies inside a vertical component of the polar cycle")]
    VerticalFiber { value: Rat },
    #[error("eliminant factor {factor} has no rational roots")]
    IrrationalAtypical { factor: String },
    #[error("polar cycle shares a component with the curve")]
    SharedComponent,
    #[error("semicontinuity violated at {value}: fiber count {fiber} exceeds generic count {generic}")]
    Semicontinuity { value: Rat, fiber: u64, generic: u64 },
    #[error("pencil is not certified for the arrangement: {reason}")]
    UncertifiedPencil { reason: String },
    #[error("engine/combinatorics mismatch at {context}: engine reports {engine}, combinatorics {comb}")]
    ComparisonMismatch { context: String, engine: u64, comb: u64 },
    #[error("no direction yielded a certified polar cycle within {budget} candidates")]
    NoCertifiedDirection { budget: usize },
    #[error(transparent)]
    Qpoly(#[from] QpolyError),
    #[error(transparent)]
    Polar(#[from] PolarError),
}

/// A validated plane curve: nonzero, nonconstant, squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: BiPoly,
}

impl PlaneCurve {
    pub fn new(f: BiPoly) -> Result<Self, EngineError> {
        if f.is_zero() {
            return Err(EngineError::ZeroCurve);
        }
        if f.is_constant() {
            return Err(EngineError::ConstantCurve);
        }
        let f = f.normalize();
        let reduced = squarefree_part(&f);
        if reduced != f {
            return Err(EngineError::NotSquarefree { reduced: reduced.to_string() });
        }
        Ok(PlaneCurve { f })
    }

    /// Product of the defining forms of a plane arrangement (distinct
    /// lines, hence squarefree). Requires dimension 2 and at least one
    /// hyperplane.
    pub fn from_arrangement(a: &Arrangement) -> Result<Self, EngineError> {
        if a.dim() != 2 {
            return Err(EngineError::NotPlane { dim: a.dim() });
        }
        let mut f = BiPoly::constant(Rat::from_integer(1.into()));
        for h in a.hyperplanes() {
            let form = BiPoly::linear(
                h.normal()[0].clone(),
                h.normal()[1].clone(),
                -h.offset().clone(),
            );
            f = &f * &form;
        }
        PlaneCurve::new(f)
    }

    pub fn poly(&self) -> &BiPoly {
        &self.f
    }
}

/// The reduced polar curve in pencil coordinates, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarCycle {
    pub g: BiPoly,
    pub certificate: CycleCertificate,
}

/// Recomputable facts about an accepted cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    /// The cycle was already squarefree before reduction.
    pub reduced: bool,
    /// The leading y-coefficient is a nonzero constant.
    pub constant_leading_coeff: bool,
    /// Fiber degree of the transformed curve equals its total degree.
    pub regular_direction: bool,
    pub deg_y: usize,
}

/// Transform a polynomial into coordinates where the direction `l` is the
/// first coordinate: `x = t1 * u + t2 * v` with `l(t1) = 1`, `l(t2) = 0`.
pub fn pencil_coordinates(p: &BiPoly, l: &[Rat]) -> Result<BiPoly, EngineError> {
    let change = pencil_change(l)?;
    Ok(substitute_affine(p, &change, &[Rat::zero(), Rat::zero()])?)
}

fn pencil_change(l: &[Rat]) -> Result<QMatrix, EngineError> {
    if l.len() != 2 || l.iter().all(Rat::is_zero) {
        return Err(EngineError::ZeroDirection);
    }
    let (a, b) = (&l[0], &l[1]);
    // columns: t1 with l(t1) = 1, t2 = (-b, a) spanning ker l
    let (t1x, t1y) = if !a.is_zero() {
        (a.recip(), Rat::zero())
    } else {
        (Rat::zero(), b.recip())
    };
    Ok(QMatrix::from_rows(vec![
        vec![t1x, -b.clone()],
        vec![t1y, a.clone()],
    ]))
}

fn build_cycle(curve: &PlaneCurve, l: &[Rat]) -> Result<(BiPoly, PolarCycle), EngineError> {
    let f = pencil_coordinates(curve.poly(), l)?;
    let total = f.total_degree().expect("nonzero curve");
    let fiber_degree = f.deg_y().unwrap_or(0);
    if fiber_degree < total {
        return Err(EngineError::CycleRejected(CycleRejection::NotRegular {
            fiber_degree,
            total_degree: total,
        }));
    }

    let mut g = f.derivative_y().normalize();
    debug_assert!(!g.is_zero(), "regular directions have positive fiber degree");
    let fx = f.derivative_x();
    if !fx.is_zero() {
        loop {
            let d = gcd_bi(&g, &fx);
            if d.is_constant() {
                break;
            }
            g = g.exact_div(&d).expect("gcd divides").normalize();
        }
    }

    let reduced = squarefree_part(&g);
    if reduced != g {
        return Err(EngineError::CycleRejected(CycleRejection::NotReduced {
            cycle: g.to_string(),
            reduced: reduced.to_string(),
        }));
    }
    let lc = g.leading_ycoeff().expect("nonzero cycle");
    if !lc.is_constant() {
        return Err(EngineError::CycleRejected(CycleRejection::LeadingCoefficient {
            leading: lc.to_string(),
        }));
    }
    let certificate = CycleCertificate {
        reduced: true,
        constant_leading_coeff: true,
        regular_direction: true,
        deg_y: g.deg_y().unwrap_or(0),
    };
    Ok((f, PolarCycle { g, certificate }))
}

/// Compute the reduced polar curve of `curve` for direction `l`, in pencil
/// coordinates, rejecting directions whose certificate fails.
pub fn polar_cycle(curve: &PlaneCurve, l: &[Rat]) -> Result<PolarCycle, EngineError> {
    Ok(build_cycle(curve, l)?.1)
}

/// Number of roots of `g(t0, .)`, with multiplicity, that are not roots of
/// `f(t0, .)`. Both polynomials must be in pencil coordinates.
pub fn fiber_count(f: &BiPoly, g: &BiPoly, t0: &Rat) -> Result<u64, EngineError> {
    let gy = g.eval_x(t0);
    if gy.is_zero() {
        return Err(EngineError::VerticalFiber { value: t0.clone() });
    }
    if gy.is_constant() {
        return Ok(0);
    }
    let fy = f.eval_x(t0);
    let off_curve = coprime_part(&gy, &fy)?;
    Ok(off_curve.degree().unwrap_or(0) as u64)
}

/// Atypical candidates: the rational roots of the squarefree eliminant
/// `Res_y(g, f)`, plus rational roots of the leading y-coefficient of `g`
/// flagged as degree-drop values (polar branches escaping to infinity;
/// empty for certified cycles). Irrational components of the eliminant are
/// an error in this baseline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidates {
    pub atypical: Vec<Rat>,
    pub degree_drop: Vec<Rat>,
}

pub fn atypical_candidates(f: &BiPoly, cycle: &PolarCycle) -> Result<Candidates, EngineError> {
    let g = &cycle.g;
    let degree_drop = match g.leading_ycoeff() {
        Some(lc) if !lc.is_constant() => rational_roots(lc).roots,
        _ => Vec::new(),
    };
    if g.deg_y().unwrap_or(0) == 0 {
        return Ok(Candidates { atypical: Vec::new(), degree_drop });
    }
    let eliminant = resultant_y(g, f)?;
    if eliminant.is_zero() {
        return Err(EngineError::SharedComponent);
    }
    let rr = rational_roots(&eliminant);
    if let Some(cofactor) = rr.cofactor {
        return Err(EngineError::IrrationalAtypical { factor: cofactor.to_string() });
    }
    Ok(Candidates { atypical: rr.roots, degree_drop })
}

/// One atypical value as seen by the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineAtypical {
    pub value: Rat,
    pub fiber: u64,
    pub lambda: u64,
}

/// Full engine run for one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineReport {
    /// Canonical direction used.
    pub direction: Vec<Rat>,
    pub generic_value: Rat,
    pub n_generic: u64,
    pub atypical: Vec<EngineAtypical>,
    pub lambda_total: u64,
    pub degree_drop: Vec<Rat>,
    pub cycle_deg_y: usize,
}

/// Count intersection drops for a certified direction: the generic count is
/// taken at the first enumerated value avoiding all candidates, each
/// candidate contributes the drop of its fiber count, zero drops are
/// pruned, and degree-drop values are reported but never counted.
pub fn lambda_engine(curve: &PlaneCurve, l: &[Rat]) -> Result<EngineReport, EngineError> {
    let direction = canonical_direction(l)?;
    let (f, cycle) = build_cycle(curve, &direction)?;
    let candidates = atypical_candidates(&f, &cycle)?;
    let avoid: BTreeSet<&Rat> = candidates
        .atypical
        .iter()
        .chain(candidates.degree_drop.iter())
        .collect();
    let generic_value = enumeration_values()
        .find(|v| !avoid.contains(v))
        .expect("finitely many candidates");
    let n_generic = fiber_count(&f, &cycle.g, &generic_value)?;

    let mut atypical = Vec::new();
    for value in &candidates.atypical {
        if candidates.degree_drop.contains(value) {
            continue;
        }
        let fiber = fiber_count(&f, &cycle.g, value)?;
        if fiber > n_generic {
            return Err(EngineError::Semicontinuity {
                value: value.clone(),
                fiber,
                generic: n_generic,
            });
        }
        let lambda = n_generic - fiber;
        if lambda > 0 {
            atypical.push(EngineAtypical { value: value.clone(), fiber, lambda });
        }
    }
    let lambda_total = atypical.iter().map(|a| a.lambda).sum();
    Ok(EngineReport {
        direction,
        generic_value,
        n_generic,
        atypical,
        lambda_total,
        degree_drop: candidates.degree_drop,
        cycle_deg_y: cycle.certificate.deg_y,
    })
}

fn canonical_direction(l: &[Rat]) -> Result<Vec<Rat>, EngineError> {
    if l.len() != 2 {
        return Err(EngineError::ZeroDirection);
    }
    Pencil::new(l.to_vec())
        .map(|p| p.direction().to_vec())
        .map_err(|_| EngineError::ZeroDirection)
}

fn enumeration_values() -> impl Iterator<Item = Rat> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![rat_int(0)]
        } else {
            vec![rat_int(k), rat_int(-k)]
        }
    })
}

/// First `count` directions (in the canonical enumeration) whose polar
/// cycle is certified for this curve.
pub fn find_engine_directions(
    curve: &PlaneCurve,
    count: usize,
    budget: usize,
) -> Result<Vec<Vec<Rat>>, EngineError> {
    let mut found = Vec::with_capacity(count);
    for (tried, v) in candidate_directions(2).enumerate() {
        if tried >= budget {
            return Err(EngineError::NoCertifiedDirection { budget });
        }
        let direction: Vec<Rat> = v.iter().map(|&c| rat_int(c)).collect();
        if build_cycle(curve, &direction).is_ok() {
            found.push(direction);
            if found.len() == count {
                return Ok(found);
            }
        }
    }
    unreachable!("candidate enumeration is infinite")
}

pub fn find_engine_direction(curve: &PlaneCurve, budget: usize) -> Result<Vec<Rat>, EngineError> {
    Ok(find_engine_directions(curve, 1, budget)?.pop().expect("one requested"))
}

/// Per-value comparison of the engine against the combinatorial polar
/// numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueComparison {
    pub value: Rat,
    pub stratum: Vec<Rat>,
    pub lambda_engine: u64,
    pub lambda_comb: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementComparison {
    pub values: Vec<ValueComparison>,
    pub lambda_total: u64,
    pub betti_top: u64,
    pub engine: Option<EngineReport>,
}

/// Cross-validate the engine against the combinatorics on a plane
/// arrangement: the engine's atypical values must be exactly the pencil
/// images of the point strata, the per-value drops must equal the absolute
/// Möbius values, and the total must equal the top Betti number from the
/// Möbius oracle. Any mismatch is an error naming the value and both
/// counts.
pub fn check_arrangement(a: &Arrangement, pencil: &Pencil) -> Result<ArrangementComparison, EngineError> {
    if a.dim() != 2 {
        return Err(EngineError::NotPlane { dim: a.dim() });
    }
    let cert = certify_direction(a, pencil);
    if !cert.is_valid() {
        return Err(EngineError::UncertifiedPencil {
            reason: cert
                .failure()
                .map_or_else(|| "unknown".into(), ToString::to_string),
        });
    }
    let betti_top = crate::arrangement::betti_os(a)[2];
    if a.is_empty() {
        return Ok(ArrangementComparison {
            values: Vec::new(),
            lambda_total: 0,
            betti_top,
            engine: None,
        });
    }

    let curve = PlaneCurve::from_arrangement(a)?;
    let report = lambda_engine(&curve, pencil.direction())?;
    let comb = atypical_values(a, pencil, &cert)?;

    let engine_values: Vec<&Rat> = report.atypical.iter().map(|e| &e.value).collect();
    let comb_values: Vec<&Rat> = comb.iter().map(|(v, _)| v).collect();
    if engine_values != comb_values {
        return Err(EngineError::ComparisonMismatch {
            context: format!(
                "atypical value sets (engine {:?}, combinatorial {:?})",
                report.atypical.iter().map(|e| e.value.to_string()).collect::<Vec<_>>(),
                comb.iter().map(|(v, _)| v.to_string()).collect::<Vec<_>>(),
            ),
            engine: engine_values.len() as u64,
            comb: comb_values.len() as u64,
        });
    }

    let mut values = Vec::with_capacity(comb.len());
    for (entry, (value, stratum)) in report.atypical.iter().zip(&comb) {
        let mu = lambda_comb(a, &stratum.point)?;
        if entry.lambda != mu {
            return Err(EngineError::ComparisonMismatch {
                context: format!("value {value}"),
                engine: entry.lambda,
                comb: mu,
            });
        }
        values.push(ValueComparison {
            value: value.clone(),
            stratum: stratum.point.clone(),
            lambda_engine: entry.lambda,
            lambda_comb: mu,
        });
    }

    if report.lambda_total != betti_top {
        return Err(EngineError::ComparisonMismatch {
            context: "total drop vs top Betti number".into(),
            engine: report.lambda_total,
            comb: betti_top,
        });
    }

    Ok(ArrangementComparison {
        values,
        lambda_total: report.lambda_total,
        betti_top,
        engine: Some(report),
    })
}
