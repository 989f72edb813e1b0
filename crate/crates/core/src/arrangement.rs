//! Affine hyperplane arrangements over the rationals.
//!
//! An arrangement is a finite list of distinct affine hyperplanes in `C^n`
//! with rational coefficients. Everything downstream is driven by its
//! intersection poset: the nonempty intersections of subfamilies (flats),
//! ordered by reverse inclusion, with the Möbius function computed by the
//! defining recursion. The absolute values of the Möbius function give the
//! Betti numbers of the complement, which serves as the independent oracle
//! for the pencil/polar pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::pencil::{GenericityCertificate, Pencil};
use crate::qpoly::matrix::QMatrix;
use crate::qpoly::rat::{parse_rat, Rat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("hyperplane normal is zero")]
    ZeroNormal,
    #[error("hyperplane has {got} coefficients, ambient dimension is {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("duplicate hyperplane: index {second} equals index {first} after canonicalization")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("hyperplane index {index} out of range ({count} hyperplanes)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point is not a point stratum of the arrangement")]
    NotAPointStratum,
    #[error("invalid genericity certificate: {reason}")]
    InvalidCertificate { reason: String },
    #[error("restriction degenerate: {reason}")]
    DegenerateRestriction { reason: String },
}

/// The affine hyperplane `{ x : normal . x = offset }`, stored in canonical
/// form: the first nonzero normal coefficient is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Rat>,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Result<Self, ArrangementError> {
        let Some(lead) = normal.iter().find(|c| !c.is_zero()) else {
            return Err(ArrangementError::ZeroNormal);
        };
        let inv = lead.recip();
        let normal = normal.iter().map(|c| c * &inv).collect();
        Ok(Hyperplane { normal, offset: offset * inv })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Result<Self, ArrangementError> {
        Hyperplane::new(
            normal.iter().map(|&c| crate::qpoly::rat_int(c)).collect(),
            crate::qpoly::rat_int(offset),
        )
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    /// `normal . x - offset`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let dot: Rat = self.normal.iter().zip(point).map(|(a, b)| a * b).sum();
        dot - &self.offset
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.eval(point).is_zero()
    }

    /// The defining equation as an augmented row `[normal | offset]`.
    fn augmented_row(&self) -> Vec<Rat> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*x{}", i + 1))
            .collect();
        write!(f, "{{{} = {}}}", terms.join(" + "), self.offset)
    }
}

/// A finite arrangement of distinct affine hyperplanes in `C^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Validate and build. Duplicate hyperplanes (after canonicalization)
    /// are an error unless `dedupe`, in which case later copies are dropped.
    pub fn new(
        dim: usize,
        hyperplanes: Vec<Hyperplane>,
        dedupe: bool,
    ) -> Result<Self, ArrangementError> {
        let mut seen: BTreeMap<(Vec<Rat>, Rat), usize> = BTreeMap::new();
        let mut kept = Vec::with_capacity(hyperplanes.len());
        for (i, h) in hyperplanes.into_iter().enumerate() {
            if h.normal.len() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    dim,
                    got: h.normal.len(),
                });
            }
            let key = (h.normal.clone(), h.offset.clone());
            match seen.get(&key) {
                Some(&first) if !dedupe => {
                    return Err(ArrangementError::DuplicateHyperplane { first, second: i })
                }
                Some(_) => continue,
                None => {
                    seen.insert(key, i);
                    kept.push(h);
                }
            }
        }
        Ok(Arrangement { dim, hyperplanes: kept })
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement { dim, hyperplanes: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Remove the hyperplane at `j` (the deletion in deletion-restriction).
    pub fn delete(&self, j: usize) -> Result<Arrangement, ArrangementError> {
        if j >= self.len() {
            return Err(ArrangementError::IndexOutOfRange { index: j, count: self.len() });
        }
        let hyperplanes = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, h)| h.clone())
            .collect();
        Ok(Arrangement { dim: self.dim, hyperplanes })
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement(dim {}, {:?})", self.dim, self.hyperplanes)
    }
}

/// A nonempty intersection of hyperplanes, canonically presented.
#[derive(Clone, Debug)]
pub struct Flat {
    /// Reduced augmented system `[A | b]` with exactly `rank` rows.
    equations: QMatrix,
    dim: usize,
    /// All hyperplane indices containing this flat.
    closure: BTreeSet<usize>,
    /// A rational point on the flat (free variables zero).
    witness: Vec<Rat>,
}

impl Flat {
    pub fn equations(&self) -> &QMatrix {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.equations.rows()
    }

    pub fn closure(&self) -> &BTreeSet<usize> {
        &self.closure
    }

    pub fn witness(&self) -> &[Rat] {
        &self.witness
    }

    /// The homogeneous part `A` of the defining system.
    pub fn direction_equations(&self) -> QMatrix {
        let cols = self.equations.cols() - 1;
        let rows: Vec<Vec<Rat>> = (0..self.equations.rows())
            .map(|r| self.equations.row(r)[..cols].to_vec())
            .collect();
        if rows.is_empty() {
            QMatrix::zeros(0, cols)
        } else {
            QMatrix::from_rows(rows)
        }
    }
}

/// Violations reported by the Möbius self-check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusViolation {
    #[error("Möbius recursion fails at flat {flat}: interval sum is {sum}, expected 0")]
    RecursionSum { flat: usize, sum: i64 },
    #[error("Möbius sign violated at flat {flat}: value {value} at codimension {codim}")]
    Sign { flat: usize, value: i64, codim: usize },
}

/// The intersection poset: all flats (with the ambient space as bottom
/// element at index 0), ordered by reverse inclusion, with Möbius values
/// `mu(bottom, F)` for every flat.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    ambient_dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
}

impl IntersectionPoset {
    /// Build by closure iteration: repeatedly intersect known flats with
    /// each hyperplane, canonicalize by reduced row echelon form, discard
    /// empty intersections, and stop at the fixpoint.
    pub fn build(a: &Arrangement) -> IntersectionPoset {
        let n = a.dim;
        let empty = QMatrix::zeros(0, n + 1);
        let mut by_key: BTreeMap<QMatrix, QMatrix> = BTreeMap::new();
        by_key.insert(empty.clone(), empty.clone());
        let mut queue = vec![empty];
        while let Some(eqs) = queue.pop() {
            for h in &a.hyperplanes {
                let sys = eqs.with_row(&h.augmented_row());
                let red = sys.rref();
                if red.particular_solution().is_none() {
                    continue; // empty intersection
                }
                let canon = red.matrix.nonzero_rows();
                if !by_key.contains_key(&canon) {
                    by_key.insert(canon.clone(), canon.clone());
                    queue.push(canon);
                }
            }
        }

        let mut flats: Vec<Flat> = by_key
            .into_keys()
            .map(|equations| {
                let red = equations.rref();
                let witness = red.particular_solution().expect("nonempty flat");
                let rank = equations.rows();
                let closure = (0..a.len())
                    .filter(|&j| {
                        let sys = equations.with_row(&a.hyperplanes[j].augmented_row());
                        sys.rank() == rank
                    })
                    .collect();
                Flat { equations, dim: n - rank, closure, witness }
            })
            .collect();
        flats.sort_by(|f, g| {
            (f.codim(), f.equations.entries()).cmp(&(g.codim(), g.equations.entries()))
        });

        // mu(bottom, F) by the defining recursion, in order of codimension
        let mut mobius = vec![0i64; flats.len()];
        for i in 0..flats.len() {
            if i == 0 {
                mobius[0] = 1;
                continue;
            }
            let mut sum = 0i64;
            for j in 0..i {
                if flats[j].closure.is_subset(&flats[i].closure) && flats[j].codim() < flats[i].codim()
                {
                    sum += mobius[j];
                }
            }
            mobius[i] = -sum;
        }

        IntersectionPoset { ambient_dim: n, flats, mobius }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    /// Partial order: `i <= j` iff flat `i` contains flat `j` as a set.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i].closure.is_subset(&self.flats[j].closure)
            && (self.flats[i].codim() <= self.flats[j].codim())
    }

    /// Betti numbers of the complement: `b_q` is the sum of `|mu|` over
    /// flats of codimension `q`.
    pub fn betti(&self) -> Vec<u64> {
        let mut b = vec![0u64; self.ambient_dim + 1];
        for (f, &m) in self.flats.iter().zip(&self.mobius) {
            b[f.codim()] += m.unsigned_abs();
        }
        b
    }


    /// Verify the Möbius recursion and the sign/nonvanishing pattern over a
    /// (possibly corrupted) value table. Used by the verification suite.
    pub fn check_mobius_table(&self, values: &[i64]) -> Result<(), MobiusViolation> {
        assert_eq!(values.len(), self.flats.len());
        for i in 0..self.flats.len() {
            let sum: i64 = (0..self.flats.len())
                .filter(|&j| self.leq(j, i))
                .map(|j| values[j])
                .sum();
            let expected = if i == 0 { 1 } else { 0 };
            if sum != expected {
                return Err(MobiusViolation::RecursionSum { flat: i, sum });
            }
            let codim = self.flats[i].codim();
            let signed = if codim % 2 == 0 { values[i] } else { -values[i] };
            if signed < 1 {
                return Err(MobiusViolation::Sign { flat: i, value: values[i], codim });
            }
        }
        Ok(())
    }

    pub fn check_mobius(&self) -> Result<(), MobiusViolation> {
        self.check_mobius_table(&self.mobius)
    }

    /// Möbius value of the dimension-zero flat through `point`, if any.
    pub fn mobius_at_point(&self, point: &[Rat]) -> Option<i64> {
        self.flats
            .iter()
            .position(|f| f.dim == 0 && f.witness == point)
            .map(|i| self.mobius[i])
    }
}

/// Build the intersection poset of an arrangement.
pub fn build_poset(a: &Arrangement) -> IntersectionPoset {
    IntersectionPoset::build(a)
}

/// Betti numbers of the complement by the Möbius-function oracle:
/// `b_q = sum of |mu(bottom, F)| over flats of codimension q`.
pub fn betti_os(a: &Arrangement) -> Vec<u64> {
    IntersectionPoset::build(a).betti()
}

/// A zero-dimensional flat: its point and the hyperplanes through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointStratum {
    pub point: Vec<Rat>,
    pub closure: BTreeSet<usize>,
}

/// All dimension-zero flats, sorted by coordinates.
pub fn point_strata(a: &Arrangement) -> Vec<PointStratum> {
    let poset = IntersectionPoset::build(a);
    let mut out: Vec<PointStratum> = poset
        .flats()
        .iter()
        .filter(|f| f.dim() == 0)
        .map(|f| PointStratum { point: f.witness.clone(), closure: f.closure.clone() })
        .collect();
    out.sort_by(|p, q| p.point.cmp(&q.point));
    out
}

/// Rational affine chart of the hyperplane `{ l . x = c }`: a point on it
/// plus a basis of the direction space, giving `x = point + basis . u`.
pub(crate) struct AffineChart {
    pub point: Vec<Rat>,
    /// `n x (n-1)`: column `i` is the i-th basis vector of `ker l`.
    pub basis: Vec<Vec<Rat>>,
}

pub(crate) fn chart_for(l: &[Rat], c: &Rat) -> AffineChart {
    let n = l.len();
    let k = l.iter().position(|v| !v.is_zero()).expect("nonzero form");
    let mut point = vec![Rat::zero(); n];
    point[k] = c / &l[k];
    let mut basis = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        if i == k {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v[k] = -(&l[i] / &l[k]);
        basis.push(v);
    }
    AffineChart { point, basis }
}

impl AffineChart {
    /// Pull an augmented row `[a | b]` back along `x = point + basis u`,
    /// producing `[a . basis | b - a . point]`.
    pub fn pull_row(&self, row: &[Rat]) -> Vec<Rat> {
        let n = self.point.len();
        let (a, b) = row.split_at(n);
        let mut out: Vec<Rat> = self
            .basis
            .iter()
            .map(|col| col.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect();
        let shift: Rat = a.iter().zip(&self.point).map(|(x, y)| x * y).sum();
        out.push(b[0].clone() - shift);
        out
    }
}

enum PullBack {
    Hyperplane(Hyperplane),
    Empty,
    Contained,
}

fn pull_back_hyperplane(h: &Hyperplane, chart: &AffineChart) -> PullBack {
    let row = chart.pull_row(&h.augmented_row());
    let (normal, offset) = row.split_at(row.len() - 1);
    if normal.iter().all(Rat::is_zero) {
        if offset[0].is_zero() {
            PullBack::Contained
        } else {
            PullBack::Empty
        }
    } else {
        PullBack::Hyperplane(
            Hyperplane::new(normal.to_vec(), offset[0].clone()).expect("nonzero normal"),
        )
    }
}

/// Restriction of the arrangement to the generic member `{ l = c }`,
/// including the verification that the slice is combinatorially faithful:
/// the traces are distinct (one per hyperplane when `n >= 2`) and taking
/// traces is a codimension-preserving bijection from the flats of dimension
/// at least 1 onto the flats of the restriction.
pub(crate) fn slice_verified(
    a: &Arrangement,
    l: &[Rat],
    c: &Rat,
) -> Result<Arrangement, ArrangementError> {
    let n = a.dim();
    assert!(n >= 1, "cannot slice a 0-dimensional arrangement");
    let chart = chart_for(l, c);

    let mut traces = Vec::with_capacity(a.len());
    for (j, h) in a.hyperplanes().iter().enumerate() {
        match pull_back_hyperplane(h, &chart) {
            PullBack::Hyperplane(t) => traces.push(t),
            PullBack::Empty if n == 1 => {} // points miss a generic point of the line
            PullBack::Empty => {
                return Err(ArrangementError::DegenerateRestriction {
                    reason: format!("hyperplane {j} is parallel to the slice"),
                })
            }
            PullBack::Contained => {
                return Err(ArrangementError::DegenerateRestriction {
                    reason: format!("hyperplane {j} contains the slice"),
                })
            }
        }
    }
    let count = traces.len();
    let restriction =
        Arrangement::new(n - 1, traces, false).map_err(|e| match e {
            ArrangementError::DuplicateHyperplane { first, second } => {
                ArrangementError::DegenerateRestriction {
                    reason: format!("hyperplanes {first} and {second} share their trace"),
                }
            }
            other => other,
        })?;
    if n >= 2 && restriction.len() != count {
        return Err(ArrangementError::DegenerateRestriction {
            reason: "trace count mismatch".into(),
        });
    }

    // Verify the poset bijection on flats of dimension >= 1.
    let upstairs = IntersectionPoset::build(a);
    let downstairs = IntersectionPoset::build(&restriction);
    let mut target: BTreeMap<Vec<Rat>, (usize, usize)> = BTreeMap::new(); // key -> (codim, hits)
    for f in downstairs.flats() {
        target.insert(f.equations().entries().to_vec(), (f.codim(), 0));
    }
    let mut mapped = 0usize;
    for f in upstairs.flats().iter().filter(|f| f.dim() >= 1) {
        let rows: Vec<Vec<Rat>> = (0..f.equations().rows())
            .map(|r| chart.pull_row(f.equations().row(r)))
            .collect();
        let pulled = if rows.is_empty() {
            QMatrix::zeros(0, n)
        } else {
            QMatrix::from_rows(rows)
        };
        let red = pulled.rref();
        if red.particular_solution().is_none() {
            return Err(ArrangementError::DegenerateRestriction {
                reason: "a positive-dimensional flat misses the slice".into(),
            });
        }
        let key = red.matrix.nonzero_rows();
        match target.get_mut(key.entries()) {
            None => {
                return Err(ArrangementError::DegenerateRestriction {
                    reason: "trace of a flat is not a flat of the restriction".into(),
                })
            }
            Some((codim, hits)) => {
                if *codim != f.codim() {
                    return Err(ArrangementError::DegenerateRestriction {
                        reason: "trace changes codimension".into(),
                    });
                }
                if *hits > 0 {
                    return Err(ArrangementError::DegenerateRestriction {
                        reason: "two flats share a trace".into(),
                    });
                }
                *hits += 1;
                mapped += 1;
            }
        }
    }
    if mapped != downstairs.flats().len() {
        return Err(ArrangementError::DegenerateRestriction {
            reason: format!(
                "flat count mismatch: {} traces vs {} flats downstairs",
                mapped,
                downstairs.flats().len()
            ),
        });
    }
    Ok(restriction)
}

/// Restrict to a certified generic member `{ l = c }` of a certified pencil.
/// The certificate is revalidated structurally; the geometric verification
/// (trace distinctness and the flat bijection) runs on every call and fails
/// only if a non-generic pair slipped through certification.
pub fn restrict_generic(
    a: &Arrangement,
    pencil: &Pencil,
    c: &Rat,
    cert: &GenericityCertificate,
) -> Result<Arrangement, ArrangementError> {
    if cert.direction() != pencil.direction() {
        return Err(ArrangementError::InvalidCertificate {
            reason: "certificate was issued for a different direction".into(),
        });
    }
    if !cert.direction_ok || !cert.separation_ok {
        return Err(ArrangementError::InvalidCertificate {
            reason: "direction certificate did not pass".into(),
        });
    }
    match &cert.member {
        Some(m) if &m.value == c && m.member_ok => {}
        _ => {
            return Err(ArrangementError::InvalidCertificate {
                reason: "certificate does not cover this member value".into(),
            })
        }
    }
    slice_verified(a, pencil.direction(), c)
}

/// The induced arrangement on hyperplane `j`: traces of the other
/// hyperplanes, empty traces dropped, coincident traces merged.
pub fn restrict_to_member(a: &Arrangement, j: usize) -> Result<Arrangement, ArrangementError> {
    if j >= a.len() {
        return Err(ArrangementError::IndexOutOfRange { index: j, count: a.len() });
    }
    let h = &a.hyperplanes[j];
    let chart = chart_for(&h.normal, &h.offset);
    let mut traces = Vec::new();
    for (i, other) in a.hyperplanes.iter().enumerate() {
        if i == j {
            continue;
        }
        if let PullBack::Hyperplane(t) = pull_back_hyperplane(other, &chart) {
            traces.push(t);
        }
    }
    Arrangement::new(a.dim - 1, traces, true)
}

/// Parse the arrangement text format:
///
/// ```text
/// # comment
/// dim 2
/// 1 0 0
/// 0 1 0
/// 1 1 1
/// ```
///
/// The first content line is `dim n`; every following line lists `n + 1`
/// rationals `a_1 ... a_n b` for the hyperplane `a . x = b`. Rationals are
/// integers or `p/q`.
pub fn parse_arrangement(text: &str, dedupe: bool) -> Result<Arrangement, ArrangementError> {
    let mut dim: Option<usize> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    let mut seen: BTreeMap<(Vec<Rat>, Rat), usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match dim {
            None => {
                let mut parts = content.split_whitespace();
                if parts.next() != Some("dim") {
                    return Err(ArrangementError::Parse {
                        line: line_no,
                        message: "expected `dim <n>` header".into(),
                    });
                }
                let n = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ArrangementError::Parse {
                        line: line_no,
                        message: "expected a nonnegative integer after `dim`".into(),
                    })?;
                if parts.next().is_some() {
                    return Err(ArrangementError::Parse {
                        line: line_no,
                        message: "trailing tokens after `dim <n>`".into(),
                    });
                }
                dim = Some(n);
            }
            Some(n) => {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                if tokens.len() != n + 1 {
                    return Err(ArrangementError::Parse {
                        line: line_no,
                        message: format!(
                            "expected {} rationals (normal and offset), found {}",
                            n + 1,
                            tokens.len()
                        ),
                    });
                }
                let mut values = Vec::with_capacity(n + 1);
                for t in &tokens {
                    values.push(parse_rat(t).ok_or(ArrangementError::Parse {
                        line: line_no,
                        message: format!("`{t}` is not a rational"),
                    })?);
                }
                let offset = values.pop().unwrap();
                let h = Hyperplane::new(values, offset).map_err(|_| ArrangementError::Parse {
                    line: line_no,
                    message: "hyperplane normal is zero".into(),
                })?;
                let key = (h.normal.clone(), h.offset.clone());
                if let Some(&first) = seen.get(&key) {
                    if dedupe {
                        continue;
                    }
                    return Err(ArrangementError::Parse {
                        line: line_no,
                        message: format!(
                            "duplicate hyperplane (same as line {})",
                            lines_of[first]
                        ),
                    });
                }
                seen.insert(key, hyperplanes.len());
                hyperplanes.push(h);
                lines_of.push(line_no);
            }
        }
    }
    let dim = dim.ok_or(ArrangementError::Parse {
        line: text.lines().count().max(1),
        message: "missing `dim <n>` header".into(),
    })?;
    Arrangement::new(dim, hyperplanes, false)
}

/// Canonical text form; `parse_arrangement(format_arrangement(a))` is `a`.
pub fn format_arrangement(a: &Arrangement) -> String {
    let mut out = format!("dim {}\n", a.dim);
    for h in &a.hyperplanes {
        let mut row: Vec<String> = h.normal.iter().map(Rat::to_string).collect();
        row.push(h.offset.to_string());
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
