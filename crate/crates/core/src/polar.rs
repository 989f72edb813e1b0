//! Betti numbers by iterated slicing with a certified pencil, polar numbers
//! at the point strata, minimal-model cell counts, and the rank-level
//! verification of the splitting exact sequence.
//!
//! The recursion: a certified generic member of a certified pencil carries
//! the homology of the complement below the top degree, so those Betti
//! numbers are computed in the one-lower-dimensional restriction; the top
//! Betti number is the total polar number, a sum of one nonnegative integer
//! per point stratum, because the top relative homology localizes at the
//! point strata and the connecting map is trivial for arrangements. The
//! per-stratum polar number is the absolute value of the Möbius function at
//! the corresponding dimension-zero flat; this combinatorial form is
//! cross-validated against the exact plane-curve engine in dimension 2.

use thiserror::Error;

use crate::arrangement::{
    betti_os, point_strata, restrict_generic, Arrangement, ArrangementError, IntersectionPoset,
    PointStratum,
};
use crate::pencil::{
    choose_generic_value, find_generic_direction, GenericityCertificate, Pencil, PencilError,
};
use crate::qpoly::rat::Rat;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolarError {
    #[error("pencil is not certified for this arrangement: {reason}")]
    Uncertified { reason: String },
    #[error("queried point is not a point stratum")]
    NotAPointStratum,
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// One atypical value of a certified pencil: the image of the unique point
/// stratum on that member, with its polar number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtypicalValue {
    pub value: Rat,
    pub stratum: PointStratum,
    pub lambda: u64,
}

/// Record of one slicing level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceLevel {
    pub ambient_dim: usize,
    pub hyperplane_count: usize,
    pub direction: Vec<Rat>,
    pub member_value: Rat,
    pub point_strata: usize,
    pub lambda_total: u64,
}

/// The full recursion trace: level `k` has ambient dimension `n - k`, and
/// the trace has depth `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceTrace {
    pub levels: Vec<SliceLevel>,
}

/// Report of the polar computation at the top level plus the slicing
/// result. Cell counts equal Betti numbers (minimality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarReport {
    pub direction: Vec<Rat>,
    pub member_value: Rat,
    pub atypical: Vec<AtypicalValue>,
    pub lambda_total: u64,
    pub betti: Vec<u64>,
    pub cells: Vec<u64>,
}

/// Sorted atypical values of a certified pencil: the images under the
/// pencil of the point strata, exactly one stratum per value.
pub fn atypical_values(
    a: &Arrangement,
    pencil: &Pencil,
    cert: &GenericityCertificate,
) -> Result<Vec<(Rat, PointStratum)>, PolarError> {
    require_certified(pencil, cert)?;
    let mut out: Vec<(Rat, PointStratum)> = point_strata(a)
        .into_iter()
        .map(|s| (pencil.eval(&s.point), s))
        .collect();
    out.sort_by(|l, r| l.0.cmp(&r.0));
    Ok(out)
}

fn require_certified(pencil: &Pencil, cert: &GenericityCertificate) -> Result<(), PolarError> {
    if cert.direction() != pencil.direction() {
        return Err(PolarError::Uncertified {
            reason: "certificate was issued for a different direction".into(),
        });
    }
    if !cert.is_valid() {
        return Err(PolarError::Uncertified {
            reason: cert
                .failure()
                .map_or_else(|| "unknown".into(), ToString::to_string),
        });
    }
    Ok(())
}

/// The polar number of a point stratum: the absolute Möbius value of the
/// dimension-zero flat through the point.
pub fn lambda_comb(a: &Arrangement, point: &[Rat]) -> Result<u64, PolarError> {
    IntersectionPoset::build(a)
        .mobius_at_point(point)
        .map(i64::unsigned_abs)
        .ok_or(PolarError::NotAPointStratum)
}

/// All point strata with their polar numbers, in point order, sharing one
/// poset construction.
fn lambda_by_stratum(a: &Arrangement) -> Vec<(PointStratum, u64)> {
    let poset = IntersectionPoset::build(a);
    let mut out: Vec<(PointStratum, u64)> = poset
        .flats()
        .iter()
        .zip(poset.mobius())
        .filter(|(f, _)| f.dim() == 0)
        .map(|(f, &m)| {
            (
                PointStratum { point: f.witness().to_vec(), closure: f.closure().clone() },
                m.unsigned_abs(),
            )
        })
        .collect();
    out.sort_by(|l, r| l.0.point.cmp(&r.0.point));
    out
}

/// Betti numbers of the complement by iterated slicing: `b_q` for
/// `q <= n-1` comes from a certified generic member, and `b_n` is the total
/// polar number over the point strata.
pub fn betti_slicing(a: &Arrangement, budget: usize) -> Result<(Vec<u64>, SliceTrace), PolarError> {
    let mut trace = SliceTrace::default();
    let betti = slice_rec(a.clone(), budget, &mut trace)?;
    Ok((betti, trace))
}

fn slice_rec(
    a: Arrangement,
    budget: usize,
    trace: &mut SliceTrace,
) -> Result<Vec<u64>, PolarError> {
    let n = a.dim();
    if n == 0 {
        return Ok(vec![1]);
    }
    let (pencil, _) = find_generic_direction(&a, budget)?;
    let (value, cert) = choose_generic_value(&a, &pencil, budget)?;
    let restriction = restrict_generic(&a, &pencil, &value, &cert)?;
    let lambdas = lambda_by_stratum(&a);
    let lambda_total: u64 = lambdas.iter().map(|(_, l)| l).sum();
    trace.levels.push(SliceLevel {
        ambient_dim: n,
        hyperplane_count: a.len(),
        direction: pencil.direction().to_vec(),
        member_value: value,
        point_strata: lambdas.len(),
        lambda_total,
    });
    let mut betti = slice_rec(restriction, budget, trace)?;
    betti.push(lambda_total);
    Ok(betti)
}

/// Full polar report: top-level pencil, per-value polar numbers, and the
/// Betti/cell vectors from the slicing recursion.
pub fn polar_report(a: &Arrangement, budget: usize) -> Result<(PolarReport, SliceTrace), PolarError> {
    let (betti, trace) = betti_slicing(a, budget)?;
    let (direction, member_value) = match trace.levels.first() {
        Some(level) => (level.direction.clone(), level.member_value.clone()),
        None => (Vec::new(), Rat::from_integer(0.into())),
    };
    let atypical = if a.dim() == 0 {
        Vec::new()
    } else {
        let pencil = Pencil::new(direction.clone()).expect("recorded direction is nonzero");
        let cert = crate::pencil::certify_direction(a, &pencil);
        atypical_values(a, &pencil, &cert)?
            .into_iter()
            .map(|(value, stratum)| {
                let lambda = lambda_comb(a, &stratum.point).expect("stratum exists");
                AtypicalValue { value, stratum, lambda }
            })
            .collect()
    };
    let lambda_total = atypical.iter().map(|v| v.lambda).sum();
    let report = PolarReport {
        direction,
        member_value,
        atypical,
        lambda_total,
        cells: betti.clone(),
        betti,
    };
    Ok((report, trace))
}

/// Minimal-model cell counts: one `q`-cell per unit of `b_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub cells: Vec<u64>,
    pub total: u64,
    pub euler: i64,
}

pub fn minimal_model(a: &Arrangement, budget: usize) -> Result<MinimalModel, PolarError> {
    let (betti, _) = betti_slicing(a, budget)?;
    let total = betti.iter().sum();
    let euler = betti
        .iter()
        .enumerate()
        .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(MinimalModel { cells: betti, total, euler })
}

/// Rank-level check of the splitting of the top exact sequence of the pair
/// (complement, generic member): the top Betti number equals the total
/// polar number, and the next Betti number agrees between the arrangement
/// and its generic slice. Both sides are computed independently through the
/// Möbius oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub ambient_dim: usize,
    pub lambda_total: u64,
    pub betti_top: u64,
    pub top_matches: bool,
    pub betti_below: u64,
    pub betti_below_slice: u64,
    pub below_matches: bool,
    pub pass: bool,
}

pub fn verify_split(a: &Arrangement, budget: usize) -> Result<SplitReport, PolarError> {
    let n = a.dim();
    if n == 0 {
        return Ok(SplitReport {
            ambient_dim: 0,
            lambda_total: 0,
            betti_top: 0,
            top_matches: true,
            betti_below: 0,
            betti_below_slice: 0,
            below_matches: true,
            pass: true,
        });
    }
    let (pencil, _) = find_generic_direction(a, budget)?;
    let (value, cert) = choose_generic_value(a, &pencil, budget)?;
    let restriction = restrict_generic(a, &pencil, &value, &cert)?;
    let lambda_total: u64 = lambda_by_stratum(a).iter().map(|(_, l)| l).sum();
    let betti_a = betti_os(a);
    let betti_r = betti_os(&restriction);
    let betti_top = betti_a[n];
    let betti_below = betti_a[n - 1];
    let betti_below_slice = betti_r[n - 1];
    let top_matches = betti_top == lambda_total;
    let below_matches = betti_below == betti_below_slice;
    Ok(SplitReport {
        ambient_dim: n,
        lambda_total,
        betti_top,
        top_matches,
        betti_below,
        betti_below_slice,
        below_matches,
        pass: top_matches && below_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families;
    use crate::pencil::{certify_direction, find_generic_directions, DEFAULT_BUDGET};
    use crate::qpoly::rat::rat_int;

    fn three_generic_lines() -> Arrangement {
        Arrangement::new(
            2,
            vec![
                Hyperplane::from_i64(&[1, 0], 0).unwrap(),
                Hyperplane::from_i64(&[0, 1], 0).unwrap(),
                Hyperplane::from_i64(&[1, 1], 1).unwrap(),
            ],
            false,
        )
        .unwrap()
    }

    fn corpus() -> Vec<Arrangement> {
        let mut out = vec![
            Arrangement::empty(0),
            Arrangement::empty(3),
            three_generic_lines(),
        ];
        for n in 1..=4 {
            out.push(families::boolean(n));
        }
        for n in 2..=4 {
            out.push(families::braid(n));
        }
        for k in 1..=6 {
            out.push(families::concurrent(k));
            out.push(families::parallel(k));
            out.push(families::points(k));
        }
        for (n, k) in [(1, 5), (2, 4), (2, 6), (3, 4), (3, 5)] {
            out.push(families::generic(n, k));
        }
        out
    }

    #[test]
    fn atypical_values_examples() {
        // Boolean_2, l = x + y: single value 0 at the origin
        let a = families::boolean(2);
        let p = Pencil::from_i64(&[1, 1]).unwrap();
        let cert = certify_direction(&a, &p);
        let vals = atypical_values(&a, &p, &cert).unwrap();
        assert_eq!(vals.len(), 1);
        assert_eq!(vals[0].0, rat_int(0));
        assert_eq!(vals[0].1.point, vec![rat_int(0), rat_int(0)]);

        // parallel lines: none
        let a = families::parallel(2);
        let p = Pencil::from_i64(&[1, 1]).unwrap();
        let cert = certify_direction(&a, &p);
        assert!(atypical_values(&a, &p, &cert).unwrap().is_empty());

        // three generic lines with l = x + 2y: values 0, 1, 2
        let a = three_generic_lines();
        let p = Pencil::from_i64(&[1, 2]).unwrap();
        let cert = certify_direction(&a, &p);
        let vals = atypical_values(&a, &p, &cert).unwrap();
        let values: Vec<Rat> = vals.iter().map(|(v, _)| v.clone()).collect();
        assert_eq!(values, vec![rat_int(0), rat_int(1), rat_int(2)]);
    }

    #[test]
    fn atypical_values_rejects_uncertified_pencil() {
        let a = families::boolean(2);
        let bad = Pencil::from_i64(&[1, 0]).unwrap();
        let cert = certify_direction(&a, &bad);
        assert!(matches!(
            atypical_values(&a, &bad, &cert),
            Err(PolarError::Uncertified { .. })
        ));
    }

    #[test]
    fn lambda_comb_examples() {
        // a double point has polar number 1
        let a = families::boolean(2);
        assert_eq!(lambda_comb(&a, &[rat_int(0), rat_int(0)]).unwrap(), 1);

        // the center of k concurrent lines has polar number k - 1
        for k in 2..=6 {
            let a = families::concurrent(k);
            assert_eq!(
                lambda_comb(&a, &[rat_int(0), rat_int(0)]).unwrap(),
                k as u64 - 1
            );
        }

        // the origin of Boolean_3 has |mu| = 1
        let a = families::boolean(3);
        assert_eq!(lambda_comb(&a, &vec![rat_int(0); 3]).unwrap(), 1);

        // non-strata are rejected
        assert_eq!(
            lambda_comb(&a, &vec![rat_int(1); 3]),
            Err(PolarError::NotAPointStratum)
        );
    }

    #[test]
    fn betti_slicing_examples() {
        let (b, trace) = betti_slicing(&families::boolean(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(b, vec![1, 2, 1]);
        assert_eq!(trace.levels.len(), 2);

        for k in 1..=6 {
            let (b, _) = betti_slicing(&families::points(k), DEFAULT_BUDGET).unwrap();
            assert_eq!(b, vec![1, k as u64]);
        }

        let (b, trace) = betti_slicing(&families::braid(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(b, vec![1, 3, 2, 0]);
        assert_eq!(trace.levels.len(), 3);
    }

    #[test]
    fn trace_levels_descend_in_dimension() {
        let a = families::boolean(3);
        let (_, trace) = betti_slicing(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(trace.levels.len(), 3);
        for (k, level) in trace.levels.iter().enumerate() {
            assert_eq!(level.ambient_dim, 3 - k);
        }
    }

    #[test]
    fn slicing_matches_oracle_on_corpus() {
        for a in corpus() {
            let (b, _) = betti_slicing(&a, DEFAULT_BUDGET).unwrap();
            assert_eq!(b, betti_os(&a), "{a:?}");
        }
    }

    #[test]
    fn lambda_total_is_pencil_independent() {
        for a in [three_generic_lines(), families::concurrent(4), families::boolean(2)] {
            let lambda_fixed: u64 = lambda_by_stratum(&a).iter().map(|(_, l)| l).sum();
            for (p, cert) in find_generic_directions(&a, 3, DEFAULT_BUDGET).unwrap() {
                let vals = atypical_values(&a, &p, &cert).unwrap();
                let total: u64 = vals
                    .iter()
                    .map(|(_, s)| lambda_comb(&a, &s.point).unwrap())
                    .sum();
                assert_eq!(total, lambda_fixed);
            }
        }
    }

    #[test]
    fn lambda_positivity_and_vanishing() {
        for a in corpus() {
            let lambdas = lambda_by_stratum(&a);
            for (s, l) in &lambdas {
                assert!(*l >= 1, "{a:?} stratum {s:?}");
            }
            let total: u64 = lambdas.iter().map(|(_, l)| l).sum();
            assert_eq!(total == 0, point_strata(&a).is_empty());
        }
    }

    #[test]
    fn euler_characteristic_consistency() {
        // alternating sum of sliced Betti numbers equals the Möbius
        // polynomial evaluated at -1
        for a in corpus() {
            let (b, _) = betti_slicing(&a, DEFAULT_BUDGET).unwrap();
            let sliced: i64 = b
                .iter()
                .enumerate()
                .map(|(q, &v)| if q % 2 == 0 { v as i64 } else { -(v as i64) })
                .sum();
            let oracle: i64 = betti_os(&a)
                .iter()
                .enumerate()
                .map(|(q, &v)| if q % 2 == 0 { v as i64 } else { -(v as i64) })
                .sum();
            assert_eq!(sliced, oracle);
        }
    }

    #[test]
    fn minimal_model_examples() {
        let m = minimal_model(&families::boolean(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(m.cells, vec![1, 2, 1]);
        assert_eq!(m.total, 4);
        assert_eq!(m.euler, 0);

        let m = minimal_model(&Arrangement::empty(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(m.cells, vec![1, 0, 0, 0]);

        let m = minimal_model(&three_generic_lines(), DEFAULT_BUDGET).unwrap();
        assert_eq!(m.cells, vec![1, 3, 3]);
        assert_eq!(m.euler, 1);
    }

    #[test]
    fn minimality_cells_equal_betti() {
        for a in corpus() {
            let m = minimal_model(&a, DEFAULT_BUDGET).unwrap();
            assert_eq!(m.cells, betti_os(&a));
        }
    }

    #[test]
    fn split_verification_passes_on_corpus() {
        for a in corpus() {
            let r = verify_split(&a, DEFAULT_BUDGET).unwrap();
            assert!(r.pass, "{a:?}: {r:?}");
        }
    }

    #[test]
    fn split_examples() {
        for k in 2..=6 {
            let r = verify_split(&families::concurrent(k), DEFAULT_BUDGET).unwrap();
            assert_eq!(r.betti_top, k as u64 - 1);
            assert_eq!(r.lambda_total, k as u64 - 1);
            assert!(r.pass);
        }
        let r = verify_split(&families::parallel(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.betti_top, 0);
        assert_eq!(r.lambda_total, 0);
        assert!(r.pass);
    }

    /// Adding a hyperplane in general position (containing no existing
    /// flat) never decreases any Betti number.
    #[test]
    fn adding_a_generic_hyperplane_is_monotone() {
        for a in [
            families::boolean(2),
            three_generic_lines(),
            families::concurrent(4),
            families::boolean(3),
            families::braid(3),
        ] {
            let n = a.dim();
            let poset = IntersectionPoset::build(&a);
            // deterministic schedule of candidates; take the first that
            // contains no flat of the arrangement
            let added = (7i64..)
                .step_by(2)
                .map(|t| {
                    let normal: Vec<Rat> = (0..n).map(|p| rat_int(t.pow(p as u32))).collect();
                    Hyperplane::new(normal, rat_int(t.pow(n as u32))).unwrap()
                })
                .find(|h| {
                    poset.flats().iter().skip(1).all(|f| {
                        let mut row = h.normal().to_vec();
                        row.push(h.offset().clone());
                        f.equations().with_row(&row).rank() > f.codim()
                    })
                })
                .unwrap();
            let bigger =
                Arrangement::new(n, [a.hyperplanes().to_vec(), vec![added]].concat(), false)
                    .unwrap();
            let before = betti_os(&a);
            let after = betti_os(&bigger);
            for q in 0..=n {
                assert!(after[q] >= before[q], "{a:?} degree {q}");
            }
        }
    }
}
