//! Rational-root extraction for univariate polynomials, exact and complete.
//!
//! Any rational root of a primitive integer polynomial has a denominator
//! dividing the leading coefficient `a_d`, so all rational roots lie on the
//! grid `Z / a_d`. Real roots are isolated with a Sturm chain and the
//! isolating intervals are narrowed below the grid spacing; each interval
//! then holds at most one grid point, which is tested by exact evaluation.
//! This finds every rational root without factoring any integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rat::Rat;
use super::unipoly::{squarefree_uni, UniPoly};

/// All rational roots of the squarefree part of the input, sorted, plus the
/// remaining cofactor (monic, nonconstant, with no rational roots) if the
/// squarefree part does not split into rational linear factors.
#[derive(Clone, Debug)]
pub struct RationalRoots {
    pub roots: Vec<Rat>,
    pub cofactor: Option<UniPoly>,
}

/// Compute the rational roots of `p` (which must be nonzero).
pub fn rational_roots(p: &UniPoly) -> RationalRoots {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let sf = squarefree_uni(p);
    let grid = denominator_bound(&sf);
    let mut work = sf;
    let mut roots = Vec::new();
    // cheap pre-pass: small-divisor candidates deflate most roots before
    // any Sturm chain is built; the isolation loop below certifies that
    // nothing was missed
    for r in small_candidates(&work) {
        if work.eval(&r).is_zero() {
            let factor = UniPoly::from_roots(work.var(), std::slice::from_ref(&r));
            work = work.exact_div(&factor).expect("root divides");
            roots.push(r);
        }
    }
    loop {
        match work.degree() {
            None | Some(0) => break,
            Some(1) => {
                roots.push(-(&work.coeff(0) / &work.coeff(1)));
                work = UniPoly::one(work.var());
                break;
            }
            _ => {}
        }
        match find_one_rational_root(&work, &grid) {
            Some(r) => {
                let factor = UniPoly::from_roots(work.var(), std::slice::from_ref(&r));
                work = work.exact_div(&factor).expect("root divides");
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    let cofactor = match work.degree() {
        Some(d) if d >= 1 => Some(work.monic()),
        _ => None,
    };
    RationalRoots { roots, cofactor }
}

/// Leading coefficient of the primitive integer form: every rational root
/// has a denominator dividing it.
fn denominator_bound(p: &UniPoly) -> BigInt {
    let prim = p.primitive_scaled();
    prim.leading().expect("nonzero").numer().abs()
}

/// Divisors of `|x|` not exceeding 1024, capped in count. A bounded-effort
/// helper: missing large divisors only sends the corresponding roots to
/// the exact isolation path.
fn small_divisors(x: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    let limit = BigInt::from(1024);
    while d <= limit && out.len() < 128 {
        if (x % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

/// Candidate rational roots `±n/d` with small numerator and denominator,
/// from the primitive integer form's trailing and leading coefficients.
fn small_candidates(p: &UniPoly) -> Vec<Rat> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let prim = p.primitive_scaled();
    let mut out = Vec::new();
    let trailing = prim
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    if trailing > 0 {
        out.push(Rat::zero());
    }
    let a0 = prim.coeffs()[trailing].numer().abs();
    let ad = prim.leading().unwrap().numer().abs();
    for n in small_divisors(&a0) {
        for d in small_divisors(&ad) {
            let r = Rat::new(n.clone(), d);
            out.push(-r.clone());
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Strict bound `M` with every real root in (-M, M).
fn cauchy_bound(p: &UniPoly) -> Rat {
    let lead = p.leading().expect("nonzero");
    let d = p.degree().unwrap();
    let mut max = Rat::zero();
    for c in &p.coeffs()[..d] {
        let q = (c / lead).abs();
        if q > max {
            max = q;
        }
    }
    max + Rat::from_integer(BigInt::from(1))
}

struct Sturm {
    chain: Vec<UniPoly>,
}

impl Sturm {
    fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].div_rem(&chain[k - 1]).expect("nonzero").1;
            // positive scaling preserves signs, so the chain stays a Sturm chain
            chain.push((-&r).primitive_scaled());
        }
        Sturm { chain }
    }

    fn variations(&self, t: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None; // sign as is_positive
        for p in &self.chain {
            let v = p.eval(t);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]`; endpoints must not be
    /// roots of the chain head for `lo`.
    fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// Search for one rational root of the squarefree polynomial `work`; roots
/// have denominators dividing `grid`.
fn find_one_rational_root(work: &UniPoly, grid: &BigInt) -> Option<Rat> {
    let sturm = Sturm::new(work);
    let bound = cauchy_bound(work);
    let spacing = Rat::new(BigInt::from(1), grid.clone());
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        if sturm.count(&lo, &hi) == 0 {
            continue;
        }
        let width = &hi - &lo;
        if width < spacing {
            // at most one grid point j/grid inside (lo, hi]
            let j = (&hi * Rat::from_integer(grid.clone())).floor();
            let candidate = j / Rat::from_integer(grid.clone());
            if candidate > lo && work.eval(&candidate).is_zero() {
                return Some(candidate);
            }
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
        if work.eval(&mid).is_zero() {
            return Some(mid);
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat::{rat, rat_int};

    fn xpoly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64('x', coeffs)
    }

    #[test]
    fn finds_integer_and_fractional_roots() {
        // (x - 2)(x + 3)(2x - 1) = 2x^3 + 3x^2 - 11x + ... expand via from_roots
        let p = UniPoly::from_roots('x', &[rat_int(2), rat_int(-3), rat(1, 2)]);
        let rr = rational_roots(&p);
        assert_eq!(rr.roots, vec![rat_int(-3), rat(1, 2), rat_int(2)]);
        assert!(rr.cofactor.is_none());
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = UniPoly::from_roots('x', &[rat_int(1), rat_int(1), rat(-2, 3)]);
        let rr = rational_roots(&p);
        assert_eq!(rr.roots, vec![rat(-2, 3), rat_int(1)]);
    }

    #[test]
    fn irrational_factor_surfaces_as_cofactor() {
        // (x - 1)(x^2 - 2)
        let p = &xpoly(&[-1, 1]) * &xpoly(&[-2, 0, 1]);
        let rr = rational_roots(&p);
        assert_eq!(rr.roots, vec![rat_int(1)]);
        assert_eq!(rr.cofactor.unwrap(), xpoly(&[-2, 0, 1]));
    }

    #[test]
    fn no_real_roots_at_all() {
        let rr = rational_roots(&xpoly(&[1, 0, 1])); // x^2 + 1
        assert!(rr.roots.is_empty());
        assert_eq!(rr.cofactor.unwrap(), xpoly(&[1, 0, 1]));
    }

    #[test]
    fn constants_and_linear() {
        let rr = rational_roots(&xpoly(&[5]));
        assert!(rr.roots.is_empty());
        assert!(rr.cofactor.is_none());

        let rr = rational_roots(&xpoly(&[3, -6])); // -6x + 3
        assert_eq!(rr.roots, vec![rat(1, 2)]);
    }

    #[test]
    fn close_rational_roots_are_separated() {
        // roots at 1/1000 and 2/1000 with a huge leading coefficient
        let p = UniPoly::from_roots('x', &[rat(1, 1000), rat(2, 1000)]).scale(&rat_int(1_000_000));
        let rr = rational_roots(&p);
        assert_eq!(rr.roots, vec![rat(1, 1000), rat(1, 500)]);
    }

    #[test]
    fn planted_random_roots_recovered_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let nroots = rng.random_range(1..=4);
            let mut roots: Vec<Rat> = (0..nroots)
                .map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=4)))
                .collect();
            roots.sort();
            roots.dedup();
            let mut p = UniPoly::from_roots('x', &roots);
            // mix in an irreducible quadratic sometimes
            let with_cofactor = rng.random_bool(0.5);
            if with_cofactor {
                p = &p * &xpoly(&[1, 1, 1]); // x^2 + x + 1, no real roots
            }
            let rr = rational_roots(&p);
            assert_eq!(rr.roots, roots);
            assert_eq!(rr.cofactor.is_some(), with_cofactor);
        }
    }
}
