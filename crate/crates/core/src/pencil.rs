//! Generic pencil directions and their machine-checkable certificates.
//!
//! A pencil of hyperplanes is the family `{ l = t }` for a nonzero rational
//! linear form `l`. For an arrangement, a direction is generic when `l` is
//! nonconstant on every flat of dimension at least 1 (no member ever
//! contains a positive-dimensional flat, and the pencil is well behaved at
//! infinity, where the strata are the projectivized direction spaces of the
//! flats) and separates the point strata (each member passes through at
//! most one of them). Both conditions are decided exactly by rank
//! computations and evaluations, and the outcome is stored as a certificate
//! with a witness on failure.
//!
//! Directions and member values are searched in a fixed deterministic order
//! so that every downstream report is reproducible.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::arrangement::{point_strata, slice_verified, Arrangement, IntersectionPoset};
use crate::qpoly::rat::{rat_int, Rat};

/// Default number of candidates tried by the deterministic searches.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PencilError {
    #[error("pencil direction is zero")]
    ZeroDirection,
    #[error("pencil direction has {got} coefficients, ambient dimension is {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("search budget of {budget} candidates exhausted while {searching}")]
    BudgetExhausted { budget: usize, searching: String },
    #[error("pencil is not certified: {reason}")]
    NotCertified { reason: String },
}

/// A pencil direction: a nonzero rational linear form, canonicalized so its
/// first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Pencil {
    direction: Vec<Rat>,
}

impl Pencil {
    pub fn new(direction: Vec<Rat>) -> Result<Self, PencilError> {
        let Some(lead) = direction.iter().find(|c| !c.is_zero()) else {
            return Err(PencilError::ZeroDirection);
        };
        let inv = lead.recip();
        Ok(Pencil { direction: direction.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_i64(direction: &[i64]) -> Result<Self, PencilError> {
        Pencil::new(direction.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn direction(&self) -> &[Rat] {
        &self.direction
    }

    /// Evaluate the linear form at a point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.direction.iter().zip(point).map(|(a, b)| a * b).sum()
    }
}

/// Why certification failed, with the violating witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericityFailure {
    /// The direction is constant on a flat of dimension >= 1.
    ConstantOnFlat { closure: BTreeSet<usize>, flat_dim: usize },
    /// Two point strata land on the same pencil member.
    StrataCollision { value: Rat, first: Vec<Rat>, second: Vec<Rat> },
    /// The candidate member value passes through a point stratum.
    AtypicalMember { value: Rat, stratum: Vec<Rat> },
    /// The restriction to the candidate member failed verification.
    SliceDegenerate { value: Rat, reason: String },
}

impl std::fmt::Display for GenericityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenericityFailure::ConstantOnFlat { closure, flat_dim } => write!(
                f,
                "direction constant on the dimension-{flat_dim} flat of hyperplanes {closure:?}"
            ),
            GenericityFailure::StrataCollision { value, first, second } => write!(
                f,
                "point strata {first:?} and {second:?} both map to pencil value {value}"
            ),
            GenericityFailure::AtypicalMember { value, .. } => {
                write!(f, "member value {value} is atypical")
            }
            GenericityFailure::SliceDegenerate { value, reason } => {
                write!(f, "slice at {value} degenerate: {reason}")
            }
        }
    }
}

/// Certificate for a member value: the restriction at `value` passed the
/// trace-distinctness and flat-bijection verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberCertificate {
    pub value: Rat,
    pub member_ok: bool,
}

/// Outcome of certifying a direction (and optionally a member value)
/// against an arrangement. Each boolean is recomputable, and each failed
/// check stores its first violating witness independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityCertificate {
    direction: Vec<Rat>,
    pub direction_ok: bool,
    pub separation_ok: bool,
    pub member: Option<MemberCertificate>,
    pub direction_failure: Option<GenericityFailure>,
    pub separation_failure: Option<GenericityFailure>,
}

impl GenericityCertificate {
    pub fn direction(&self) -> &[Rat] {
        &self.direction
    }

    /// Direction-level validity (member validity is separate).
    pub fn is_valid(&self) -> bool {
        self.direction_ok && self.separation_ok
    }

    /// The first stored failure, if any.
    pub fn failure(&self) -> Option<&GenericityFailure> {
        self.direction_failure
            .as_ref()
            .or(self.separation_failure.as_ref())
    }

    /// Recompute every check this certificate claims against the
    /// arrangement and compare.
    pub fn revalidate(&self, a: &Arrangement) -> bool {
        let Ok(pencil) = Pencil::new(self.direction.clone()) else {
            return false;
        };
        let fresh = certify_direction(a, &pencil);
        if fresh.direction_ok != self.direction_ok
            || fresh.separation_ok != self.separation_ok
            || fresh.direction_failure != self.direction_failure
            || fresh.separation_failure != self.separation_failure
        {
            return false;
        }
        match &self.member {
            None => true,
            Some(m) => m.member_ok && slice_verified(a, &self.direction, &m.value).is_ok(),
        }
    }
}

/// Decide genericity of a direction for an arrangement.
///
/// `direction_ok` holds iff the form is nonconstant on every flat of
/// dimension at least 1, i.e. appending the form to the homogeneous part of
/// the flat's equations raises the rank. `separation_ok` holds iff the form
/// is injective on the point strata. Both checks always run; each failure
/// records the first violating flat (in poset order) or point pair (in
/// value order).
pub fn certify_direction(a: &Arrangement, l: &Pencil) -> GenericityCertificate {
    assert_eq!(
        l.direction().len(),
        a.dim(),
        "direction length must match the ambient dimension"
    );
    let poset = IntersectionPoset::build(a);

    let mut direction_failure = None;
    for flat in poset.flats() {
        if flat.dim() == 0 {
            continue;
        }
        let homog = flat.direction_equations();
        let appended = homog.with_row(l.direction());
        if appended.rank() == flat.codim() {
            direction_failure = Some(GenericityFailure::ConstantOnFlat {
                closure: flat.closure().clone(),
                flat_dim: flat.dim(),
            });
            break;
        }
    }

    let mut separation_failure = None;
    let strata = point_strata(a);
    let mut values: Vec<(Rat, Vec<Rat>)> = strata
        .into_iter()
        .map(|s| (l.eval(&s.point), s.point))
        .collect();
    values.sort();
    for pair in values.windows(2) {
        if pair[0].0 == pair[1].0 {
            separation_failure = Some(GenericityFailure::StrataCollision {
                value: pair[0].0.clone(),
                first: pair[0].1.clone(),
                second: pair[1].1.clone(),
            });
            break;
        }
    }

    GenericityCertificate {
        direction: l.direction().to_vec(),
        direction_ok: direction_failure.is_none(),
        separation_ok: separation_failure.is_none(),
        member: None,
        direction_failure,
        separation_failure,
    }
}

/// Deterministic enumeration of candidate directions: integer coefficient
/// vectors ordered by max-norm, then lexicographically, keeping only
/// canonical representatives (first nonzero entry positive, coefficients
/// collectively coprime).
pub fn candidate_directions(dim: usize) -> impl Iterator<Item = Vec<i64>> {
    (1i64..).flat_map(move |norm| {
        let mut out: Vec<Vec<i64>> = Vec::new();
        let mut v = vec![-norm; dim];
        loop {
            if v.iter().any(|&c| c.abs() == norm) && is_canonical(&v) {
                out.push(v.clone());
            }
            // odometer increment in lexicographic order
            let mut i = dim;
            loop {
                if i == 0 {
                    return out.into_iter();
                }
                i -= 1;
                if v[i] < norm {
                    v[i] += 1;
                    for c in &mut v[i + 1..] {
                        *c = -norm;
                    }
                    break;
                }
            }
        }
    })
}

fn is_canonical(v: &[i64]) -> bool {
    let Some(first) = v.iter().find(|&&c| c != 0) else {
        return false;
    };
    if *first < 0 {
        return false;
    }
    let mut g = 0u64;
    for &c in v {
        g = gcd_u64(g, c.unsigned_abs());
    }
    g == 1
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// First `count` certified directions in enumeration order.
pub fn find_generic_directions(
    a: &Arrangement,
    count: usize,
    budget: usize,
) -> Result<Vec<(Pencil, GenericityCertificate)>, PencilError> {
    assert!(a.dim() >= 1, "pencils need a positive-dimensional ambient space");
    let mut found = Vec::with_capacity(count);
    for (tried, v) in candidate_directions(a.dim()).enumerate() {
        if tried >= budget {
            return Err(PencilError::BudgetExhausted {
                budget,
                searching: "for a generic direction".into(),
            });
        }
        let pencil = Pencil::from_i64(&v).expect("canonical candidates are nonzero");
        let cert = certify_direction(a, &pencil);
        if cert.is_valid() {
            found.push((pencil, cert));
            if found.len() == count {
                return Ok(found);
            }
        }
    }
    unreachable!("candidate enumeration is infinite")
}

/// First certified direction in enumeration order.
pub fn find_generic_direction(
    a: &Arrangement,
    budget: usize,
) -> Result<(Pencil, GenericityCertificate), PencilError> {
    Ok(find_generic_directions(a, 1, budget)?.pop().expect("one requested"))
}

/// Deterministic member values `0, 1, -1, 2, -2, ...`.
fn candidate_values() -> impl Iterator<Item = Rat> {
    (0i64..).flat_map(|k| {
        if k == 0 {
            vec![rat_int(0)]
        } else {
            vec![rat_int(k), rat_int(-k)]
        }
    })
}

/// Choose a generic member value for a certified pencil: enumerate
/// `0, 1, -1, 2, -2, ...`, skip the atypical values (images of the point
/// strata), and return the first value whose restriction passes the full
/// slice verification, together with the member certificate.
pub fn choose_generic_value(
    a: &Arrangement,
    pencil: &Pencil,
    budget: usize,
) -> Result<(Rat, GenericityCertificate), PencilError> {
    let mut cert = certify_direction(a, pencil);
    if !cert.is_valid() {
        return Err(PencilError::NotCertified {
            reason: cert
                .failure()
                .map_or_else(|| "unknown".into(), ToString::to_string),
        });
    }
    let atypical: BTreeSet<Rat> = point_strata(a)
        .iter()
        .map(|s| pencil.eval(&s.point))
        .collect();
    let mut attempts = 0usize;
    for c in candidate_values() {
        if atypical.contains(&c) {
            continue;
        }
        if attempts >= budget {
            break;
        }
        attempts += 1;
        match slice_verified(a, pencil.direction(), &c) {
            Ok(_) => {
                cert.member = Some(MemberCertificate { value: c.clone(), member_ok: true });
                return Ok((c, cert));
            }
            Err(_) => continue,
        }
    }
    Err(PencilError::BudgetExhausted {
        budget,
        searching: "for a generic member value".into(),
    })
}
