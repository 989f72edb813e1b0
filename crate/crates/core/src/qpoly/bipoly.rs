//! Bivariate polynomials as elements of ℚ[x][y].
//!
//! A `BiPoly` is a dense list of y-power coefficients, each a univariate
//! polynomial in x. This is the representation used by the plane-curve
//! engine: pencil members are vertical lines `x = t`, fibers are obtained by
//! evaluating the x-variable, and elimination happens through resultants
//! with respect to y.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::QMatrix;
use super::rat::{rat_int, Rat};
use super::unipoly::{gcd_uni, UniPoly};
use super::QpolyError;

const XVAR: char = 'x';
const YVAR: char = 'y';

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    /// `coeffs[i]` multiplies `y^i`; the top entry is nonzero unless the
    /// whole polynomial is zero.
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::new(vec![UniPoly::constant(XVAR, c)])
    }

    pub fn x() -> Self {
        BiPoly::new(vec![UniPoly::from_i64(XVAR, &[0, 1])])
    }

    pub fn y() -> Self {
        BiPoly::new(vec![UniPoly::zero(XVAR), UniPoly::one(XVAR)])
    }

    /// The affine form `a*x + b*y + c`.
    pub fn linear(a: Rat, b: Rat, c: Rat) -> Self {
        BiPoly::new(vec![
            UniPoly::new(XVAR, vec![c, a]),
            UniPoly::constant(XVAR, b),
        ])
    }

    pub fn from_ycoeffs(coeffs: Vec<UniPoly>) -> Self {
        BiPoly::new(coeffs)
    }

    pub fn ycoeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    fn ycoeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| UniPoly::zero(XVAR))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.first().is_none_or(UniPoly::is_constant)
    }

    pub fn deg_y(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| d + i))
            .max()
    }

    pub fn leading_ycoeff(&self) -> Option<&UniPoly> {
        self.coeffs.last()
    }

    pub fn derivative_y(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&rat_int(i as i64)))
            .collect();
        BiPoly::new(coeffs)
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(UniPoly::derivative).collect())
    }

    /// Specialize `x = t`, leaving a univariate polynomial in y.
    pub fn eval_x(&self, t: &Rat) -> UniPoly {
        UniPoly::new(YVAR, self.coeffs.iter().map(|c| c.eval(t)).collect())
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(x);
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn mul_unipoly(&self, c: &UniPoly) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn mul_ypow(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![UniPoly::zero(XVAR); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly { coeffs }
    }

    /// Content in y: the monic gcd of all y-coefficients.
    pub fn content_y(&self) -> UniPoly {
        let mut c = UniPoly::zero(XVAR);
        for a in &self.coeffs {
            c = gcd_uni(&c, a);
            if c.is_constant() && !c.is_zero() {
                break;
            }
        }
        c
    }

    /// `self` divided by its y-content.
    pub fn primitive_y(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_y();
        BiPoly::new(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(&c).expect("content divides"))
                .collect(),
        )
    }

    /// Pseudo-division: returns `(q, r)` with
    /// `lc(d)^(deg_y self - deg_y d + 1) * self = q * d + r` and
    /// `deg_y r < deg_y d`. Requires `d` nonzero.
    pub fn pseudo_div_rem(&self, d: &BiPoly) -> (BiPoly, BiPoly) {
        let dd = d.deg_y().expect("nonzero divisor");
        let lc = d.leading_ycoeff().unwrap().clone();
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        let mut steps_left = match self.deg_y() {
            Some(sd) if sd >= dd => sd - dd + 1,
            _ => 0,
        };
        while let Some(rd) = r.deg_y() {
            if rd < dd {
                break;
            }
            let t = BiPoly::new(vec![r.leading_ycoeff().unwrap().clone()]).mul_ypow(rd - dd);
            q = &q.mul_unipoly(&lc) + &t;
            r = &r.mul_unipoly(&lc) - &(&t * d);
            steps_left -= 1;
        }
        // degree can drop by more than one per step; pad to the stated scaling
        for _ in 0..steps_left {
            q = q.mul_unipoly(&lc);
            r = r.mul_unipoly(&lc);
        }
        (q, r)
    }

    /// Exact division in ℚ[x][y]; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if d.deg_y() == Some(0) {
            let du = &d.coeffs[0];
            let coeffs: Option<Vec<UniPoly>> =
                self.coeffs.iter().map(|c| c.exact_div(du)).collect();
            return coeffs.map(BiPoly::new);
        }
        let sd = self.deg_y()?;
        let dd = d.deg_y().unwrap();
        if sd < dd {
            return None;
        }
        let (q, r) = self.pseudo_div_rem(d);
        if !r.is_zero() {
            return None;
        }
        // q equals lc(d)^(sd-dd+1) times the true quotient
        let lc = d.leading_ycoeff().unwrap();
        let mut factor = UniPoly::one(XVAR);
        for _ in 0..(sd - dd + 1) {
            factor = &factor * lc;
        }
        let coeffs: Option<Vec<UniPoly>> =
            q.coeffs.iter().map(|c| c.exact_div(&factor)).collect();
        coeffs.map(BiPoly::new)
    }

    /// Canonical normalization: scale by the unique positive rational making
    /// every coefficient an integer, the collective integer content 1, and
    /// the leading x-coefficient of the leading y-coefficient positive.
    pub fn normalize(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            for a in c.coeffs() {
                if a.is_zero() {
                    continue;
                }
                den_lcm = den_lcm.lcm(a.denom());
                num_gcd = num_gcd.gcd(a.numer());
            }
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        let lead = self
            .leading_ycoeff()
            .and_then(UniPoly::leading)
            .expect("nonzero polynomial");
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

/// Greatest common divisor in ℚ[x][y], computed by content/primitive-part
/// decomposition and a pseudo-remainder sequence with content stripped at
/// every step. The result is primitive in y and normalized canonically.
///
/// Coprime primitive parts are recognized cheaply first: any common factor
/// of positive y-degree has a leading y-coefficient dividing that of
/// either operand, so at a sample point where one leading coefficient is
/// nonzero the factor survives specialization; a constant univariate gcd
/// there proves there is no such factor and skips the remainder sequence.
pub fn gcd_bi(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.normalize();
    }
    if q.is_zero() {
        return p.normalize();
    }
    let cont = gcd_uni(&p.content_y(), &q.content_y());
    let mut a = p.primitive_y();
    let mut b = q.primitive_y();
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
    }
    if a.deg_y().unwrap_or(0) >= 1 && b.deg_y().unwrap_or(0) >= 1 {
        // A common factor of positive y-degree survives specialization at
        // any point where lc_y(a) is nonzero, so one constant univariate
        // gcd proves coprimality. Conversely the specialized gcd of
        // coprime parts is nonconstant only at roots of their resultant,
        // a nonzero polynomial of degree at most `shared_bound`; seeing
        // more such points than that proves a common factor.
        let shared_bound = a.deg_y().unwrap() * b.deg_x().unwrap_or(0)
            + b.deg_y().unwrap() * a.deg_x().unwrap_or(0);
        let lc = a.leading_ycoeff().unwrap();
        let mut nonconstant_seen = 0usize;
        for t in sample_points() {
            if lc.eval(&t).is_zero() {
                continue;
            }
            if gcd_uni(&a.eval_x(&t), &b.eval_x(&t)).is_constant() {
                return BiPoly::new(vec![cont]).normalize();
            }
            nonconstant_seen += 1;
            if nonconstant_seen > shared_bound {
                break;
            }
        }
    }
    while !b.is_zero() {
        if b.deg_y() == Some(0) {
            // primitive y-constant: a nonzero rational, so the gcd is trivial
            a = BiPoly::constant(Rat::one());
            break;
        }
        let (_, r) = a.pseudo_div_rem(&b);
        a = b;
        b = r.primitive_y();
    }
    a.primitive_y().mul_unipoly(&cont).normalize()
}

/// Squarefree part: repeated factors collapse to multiplicity one, both in
/// the primitive part (via the y-derivative gcd) and in the content.
pub fn squarefree_part(p: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let cont = p.content_y();
    let pp = p.primitive_y();
    let sf_cont = super::unipoly::squarefree_uni(&cont);
    let sf_pp = if pp.deg_y() == Some(0) {
        BiPoly::constant(Rat::one())
    } else {
        let d = gcd_bi(&pp, &pp.derivative_y());
        pp.exact_div(&d).expect("gcd divides exactly")
    };
    sf_pp.mul_unipoly(&sf_cont).normalize()
}

/// Resultant with respect to y, fixed as the determinant of the Sylvester
/// matrix with the rows of `p` first. Computed by specializing x at enough
/// sample points (avoiding zeros of either leading coefficient, where the
/// Sylvester shape would change) and interpolating exactly.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> Result<UniPoly, QpolyError> {
    let (Some(m), Some(n)) = (p.deg_y(), q.deg_y()) else {
        return Err(QpolyError::ResultantDegree);
    };
    if m == 0 || n == 0 {
        return Err(QpolyError::ResultantDegree);
    }
    let dxp = p.deg_x().unwrap_or(0);
    let dxq = q.deg_x().unwrap_or(0);
    let bound = m * dxq + n * dxp;
    let lcp = p.leading_ycoeff().unwrap();
    let lcq = q.leading_ycoeff().unwrap();

    let mut samples: Vec<(Rat, Rat)> = Vec::with_capacity(bound + 1);
    for t in sample_points() {
        if lcp.eval(&t).is_zero() || lcq.eval(&t).is_zero() {
            continue;
        }
        let pv = p.eval_x(&t);
        let qv = q.eval_x(&t);
        let det = sylvester_det(&pv, &qv);
        samples.push((t, det));
        if samples.len() == bound + 1 {
            break;
        }
    }
    Ok(newton_interpolate(&samples))
}

/// Exact composition `p(M (x, y)^T + offset)` for an invertible 2x2 change.
pub fn substitute_affine(
    p: &BiPoly,
    change: &QMatrix,
    offset: &[Rat; 2],
) -> Result<BiPoly, QpolyError> {
    if change.rows() != 2 || change.cols() != 2 {
        return Err(QpolyError::ChangeShape {
            rows: change.rows(),
            cols: change.cols(),
        });
    }
    let det = change.at(0, 0) * change.at(1, 1) - change.at(0, 1) * change.at(1, 0);
    if det.is_zero() {
        return Err(QpolyError::SingularChange);
    }
    let new_x = BiPoly::linear(
        change.at(0, 0).clone(),
        change.at(0, 1).clone(),
        offset[0].clone(),
    );
    let new_y = BiPoly::linear(
        change.at(1, 0).clone(),
        change.at(1, 1).clone(),
        offset[1].clone(),
    );
    let mut acc = BiPoly::zero();
    for c in p.coeffs.iter().rev() {
        acc = &(&acc * &new_y) + &compose_unipoly(c, &new_x);
    }
    Ok(acc)
}

/// Horner evaluation of a univariate polynomial at a bivariate argument.
fn compose_unipoly(c: &UniPoly, arg: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for a in c.coeffs().iter().rev() {
        acc = &(&acc * arg) + &BiPoly::constant(a.clone());
    }
    acc
}

/// 0, 1, -1, 2, -2, ...
fn sample_points() -> impl Iterator<Item = Rat> {
    (0..).flat_map(|k: i64| {
        if k == 0 {
            vec![rat_int(0)]
        } else {
            vec![rat_int(k), rat_int(-k)]
        }
    })
}

/// Determinant of the Sylvester matrix of two univariate polynomials with
/// the rows of `p` first, by exact Gaussian elimination.
fn sylvester_det(p: &UniPoly, q: &UniPoly) -> Rat {
    let m = p.degree().expect("nonzero");
    let n = q.degree().expect("nonzero");
    let size = m + n;
    let mut mat = QMatrix::zeros(size, size);
    for i in 0..n {
        for j in 0..=m {
            mat.set(i, i + j, p.coeff(m - j));
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat.set(n + i, i + j, q.coeff(n - j));
        }
    }
    det_gauss(mat)
}

fn det_gauss(mut m: QMatrix) -> Rat {
    let n = m.rows();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            for j in 0..n {
                let a = m.at(c, j).clone();
                let b = m.at(p, j).clone();
                m.set(c, j, b);
                m.set(p, j, a);
            }
            det = -det;
        }
        let pivot = m.at(c, c).clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if m.at(i, c).is_zero() {
                continue;
            }
            let factor = m.at(i, c) / &pivot;
            for j in c..n {
                let v = m.at(i, j) - &factor * m.at(c, j);
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Newton divided-difference interpolation through exact points.
fn newton_interpolate(points: &[(Rat, Rat)]) -> UniPoly {
    let n = points.len();
    assert!(n > 0, "interpolation needs at least one point");
    let mut dd: Vec<Rat> = points.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut poly = UniPoly::zero(XVAR);
    for i in (0..n).rev() {
        let factor = UniPoly::new(XVAR, vec![-points[i].0.clone(), Rat::one()]);
        poly = if i + 1 < n {
            &(&poly * &factor) + &UniPoly::constant(XVAR, dd[i].clone())
        } else {
            UniPoly::constant(XVAR, dd[i].clone())
        };
    }
    poly
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|i| &self.ycoeff(i) + &rhs.ycoeff(i)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|i| &self.ycoeff(i) - &rhs.ycoeff(i)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs =
            vec![UniPoly::zero(XVAR); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BiPoly::new(coeffs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            for (i, a) in c.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                if first {
                    if a.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if a.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mag = a.abs();
                let has_var = i > 0 || j > 0;
                if !has_var || !mag.is_one() {
                    write!(f, "{mag}")?;
                    if has_var {
                        write!(f, "*")?;
                    }
                }
                if i == 1 {
                    write!(f, "x")?;
                } else if i > 1 {
                    write!(f, "x^{i}")?;
                }
                if i > 0 && j > 0 {
                    write!(f, "*")?;
                }
                if j == 1 {
                    write!(f, "y")?;
                } else if j > 1 {
                    write!(f, "y^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xp(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(XVAR, coeffs)
    }

    /// x + y
    fn x_plus_y() -> BiPoly {
        BiPoly::linear(rat_int(1), rat_int(1), rat_int(0))
    }

    /// x - y
    fn x_minus_y() -> BiPoly {
        BiPoly::linear(rat_int(1), rat_int(-1), rat_int(0))
    }

    fn random_bipoly(rng: &mut ChaCha8Rng, dy: usize, dx: usize) -> BiPoly {
        let coeffs = (0..=dy)
            .map(|_| {
                UniPoly::new(
                    XVAR,
                    (0..=dx)
                        .map(|_| rat(rng.random_range(-3..=3), 1))
                        .collect(),
                )
            })
            .collect();
        BiPoly::new(coeffs)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = &(&BiPoly::x() * &BiPoly::x()) - &(&(&BiPoly::y() * &BiPoly::y()) * &BiPoly::y());
        assert_eq!(f.to_string(), "-y^3 + x^2");
        assert_eq!(f.deg_y(), Some(3));
        assert_eq!(f.deg_x(), Some(2));
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.eval(&rat_int(3), &rat_int(2)), rat_int(1));
    }

    #[test]
    fn exact_division_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let a = random_bipoly(&mut rng, 2, 2);
            let b = random_bipoly(&mut rng, 1, 2);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let prod = &a * &b;
            let q = prod.exact_div(&b).expect("divides");
            assert_eq!(q, a);
            // a non-divisor is rejected
            let shifted = &prod + &BiPoly::constant(rat_int(1));
            if shifted.exact_div(&b).is_some() {
                // only possible if b is constant
                assert_eq!(b.deg_y(), Some(0));
            }
        }
    }

    #[test]
    fn gcd_shared_factor() {
        // gcd((x+y)(x-y), (x+y) y) = x + y up to normalization
        let p = &x_plus_y() * &x_minus_y();
        let q = &x_plus_y() * &BiPoly::y();
        assert_eq!(gcd_bi(&p, &q), x_plus_y().normalize());
    }

    #[test]
    fn gcd_idempotent() {
        let f = &(&x_plus_y() * &x_minus_y()) * &BiPoly::y();
        assert_eq!(gcd_bi(&f, &f), f.normalize());
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut done = 0;
        while done < 15 {
            let h = random_bipoly(&mut rng, 1, 1);
            if h.deg_y() != Some(1) {
                continue;
            }
            let a = random_bipoly(&mut rng, 1, 1);
            let b = random_bipoly(&mut rng, 1, 1);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if !gcd_bi(&a, &b).is_constant() {
                continue;
            }
            let g = gcd_bi(&(&a * &h), &(&b * &h));
            // planted factor recovered up to the coprime parts' constants
            assert_eq!(g, h.normalize(), "a={a} b={b} h={h}");
            done += 1;
        }
    }

    #[test]
    fn squarefree_collapses_planted_square() {
        let p = &(&x_minus_y() * &x_minus_y()) * &x_plus_y();
        let expect = (&x_minus_y() * &x_plus_y()).normalize();
        assert_eq!(squarefree_part(&p), expect);
    }

    #[test]
    fn squarefree_fixes_already_squarefree() {
        let f = &x_plus_y() * &BiPoly::y();
        assert_eq!(squarefree_part(&f), f.normalize());
    }

    #[test]
    fn squarefree_collapses_planted_powers_and_content() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut done = 0;
        while done < 10 {
            let a = random_bipoly(&mut rng, 1, 1);
            let b = random_bipoly(&mut rng, 1, 1);
            if a.deg_y() != Some(1) || b.deg_y() != Some(1) {
                continue;
            }
            if !gcd_bi(&a, &b).is_constant() {
                continue;
            }
            let p = &(&(&a * &a) * &a) * &(&b * &b); // a^3 b^2
            let sf = squarefree_part(&p);
            assert_eq!(sf, (&a * &b).normalize());
            done += 1;
        }
        // repeated pure-x content also collapses
        let c = xp(&[1, 1]); // x + 1
        let p = x_plus_y().mul_unipoly(&(&c * &c));
        assert_eq!(squarefree_part(&p), x_plus_y().mul_unipoly(&c).normalize());
    }

    #[test]
    fn resultant_of_two_lines() {
        // Res_y(y - x, y + x) with p-rows first: det [[1, -x], [1, x]] = 2x
        let p = BiPoly::linear(rat_int(-1), rat_int(1), rat_int(0)); // y - x
        let q = x_plus_y(); // y + x (deg_y 1)
        let r = resultant_y(&p, &q).unwrap();
        assert_eq!(r, xp(&[0, 2]));
    }

    #[test]
    fn resultant_of_linear_eliminant_is_substitution() {
        // Res_y(y - a(x), q) = q(x, a(x)) for monic linear first argument
        let a = xp(&[1, 0, 2]); // a(x) = 2x^2 + 1
        let p = BiPoly::new(vec![-&a, UniPoly::one(XVAR)]); // y - a(x)
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let q = random_bipoly(&mut rng, 2, 2);
            if q.deg_y() != Some(2) {
                continue;
            }
            let r = resultant_y(&p, &q).unwrap();
            // q(x, a(x)) via composition in y
            let expect = {
                let mut acc = UniPoly::zero(XVAR);
                for c in q.ycoeffs().iter().rev() {
                    acc = &(&acc * &a) + c;
                }
                acc
            };
            assert_eq!(r, expect);
        }
    }

    /// Laplace-expansion determinant over ℚ[x]: the independent oracle for
    /// the interpolated resultant.
    fn det_unipoly(entries: &[Vec<UniPoly>]) -> UniPoly {
        let n = entries.len();
        if n == 0 {
            return UniPoly::one(XVAR);
        }
        if n == 1 {
            return entries[0][0].clone();
        }
        let mut acc = UniPoly::zero(XVAR);
        for c in 0..n {
            if entries[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UniPoly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&j| j != c)
                        .map(|j| entries[r][j].clone())
                        .collect()
                })
                .collect();
            let term = &entries[0][c] * &det_unipoly(&minor);
            if c % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    fn sylvester_matrix_poly(p: &BiPoly, q: &BiPoly) -> Vec<Vec<UniPoly>> {
        let m = p.deg_y().unwrap();
        let n = q.deg_y().unwrap();
        let size = m + n;
        let mut rows = vec![vec![UniPoly::zero(XVAR); size]; size];
        for i in 0..n {
            for j in 0..=m {
                rows[i][i + j] = p.ycoeffs()[m - j].clone();
            }
        }
        for i in 0..m {
            for j in 0..=n {
                rows[n + i][i + j] = q.ycoeffs()[n - j].clone();
            }
        }
        rows
    }

    #[test]
    fn resultant_matches_determinant_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut done = 0;
        while done < 12 {
            let p = random_bipoly(&mut rng, 2, 2);
            let q = random_bipoly(&mut rng, 2, 2);
            if p.deg_y() != Some(2) || q.deg_y() != Some(2) {
                continue;
            }
            let fast = resultant_y(&p, &q).unwrap();
            let oracle = det_unipoly(&sylvester_matrix_poly(&p, &q));
            assert_eq!(fast, oracle);
            done += 1;
        }
    }

    #[test]
    fn resultant_rejects_y_constant_input() {
        let p = BiPoly::new(vec![xp(&[1, 1])]);
        assert_eq!(
            resultant_y(&p, &BiPoly::y()),
            Err(QpolyError::ResultantDegree)
        );
        assert_eq!(
            resultant_y(&BiPoly::y(), &BiPoly::zero()),
            Err(QpolyError::ResultantDegree)
        );
    }

    #[test]
    fn resultant_vanishing_characterization() {
        // res(p, q)(t) = 0 iff the specialized polynomials share a root
        // (over the complex numbers) or both leading coefficients vanish.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut done = 0;
        while done < 10 {
            let p = random_bipoly(&mut rng, 2, 1);
            let q = random_bipoly(&mut rng, 2, 1);
            if p.deg_y() != Some(2) || q.deg_y() != Some(2) {
                continue;
            }
            let Ok(r) = resultant_y(&p, &q) else {
                continue;
            };
            for t in (-6..=6).map(rat_int) {
                let pv = p.eval_x(&t);
                let qv = q.eval_x(&t);
                let lead_drop = p.leading_ycoeff().unwrap().eval(&t).is_zero()
                    && q.leading_ycoeff().unwrap().eval(&t).is_zero();
                let common = if pv.is_zero() || qv.is_zero() {
                    true
                } else {
                    !gcd_uni(&pv, &qv).is_constant()
                };
                assert_eq!(
                    r.eval(&t).is_zero(),
                    common || lead_drop,
                    "p={p} q={q} t={t}"
                );
            }
            done += 1;
        }
    }

    #[test]
    fn substitution_identity_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let f = random_bipoly(&mut rng, 3, 2);
        let id = QMatrix::identity(2);
        let zero_off = [Rat::zero(), Rat::zero()];
        assert_eq!(substitute_affine(&f, &id, &zero_off).unwrap(), f);

        // swap x and y twice
        let swap = QMatrix::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ]);
        let once = substitute_affine(&f, &swap, &zero_off).unwrap();
        let twice = substitute_affine(&once, &swap, &zero_off).unwrap();
        assert_eq!(twice, f);
    }

    #[test]
    fn substitution_rejects_singular_change() {
        let sing = QMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert_eq!(
            substitute_affine(&BiPoly::y(), &sing, &[Rat::zero(), Rat::zero()]),
            Err(QpolyError::SingularChange)
        );
    }

    #[test]
    fn substitution_agrees_with_point_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let f = random_bipoly(&mut rng, 2, 2);
        let change = QMatrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        let off = [rat(1, 2), rat_int(-1)];
        let g = substitute_affine(&f, &change, &off).unwrap();
        assert_eq!(g.total_degree(), f.total_degree());
        for _ in 0..20 {
            let u = rat(rng.random_range(-8..=8), rng.random_range(1..=3));
            let v = rat(rng.random_range(-8..=8), rng.random_range(1..=3));
            let x = change.at(0, 0) * &u + change.at(0, 1) * &v + &off[0];
            let y = change.at(1, 0) * &u + change.at(1, 1) * &v + &off[1];
            assert_eq!(g.eval(&u, &v), f.eval(&x, &y));
        }
    }

    #[test]
    fn substitution_respects_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..10 {
            let f = random_bipoly(&mut rng, 2, 1);
            let a = QMatrix::from_rows(vec![
                vec![rat_int(1), rat_int(1)],
                vec![rat_int(0), rat_int(1)],
            ]);
            let a_off = [rat_int(1), rat_int(0)];
            let b = QMatrix::from_rows(vec![
                vec![rat_int(2), rat_int(0)],
                vec![rat_int(1), rat_int(1)],
            ]);
            let b_off = [rat_int(0), rat(1, 3)];
            // applying change A then change B equals applying the composite
            // x -> A(Bx + b_off) + a_off
            let step = substitute_affine(&f, &a, &a_off).unwrap();
            let lhs = substitute_affine(&step, &b, &b_off).unwrap();
            let comp = QMatrix::from_rows(vec![
                vec![
                    a.at(0, 0) * b.at(0, 0) + a.at(0, 1) * b.at(1, 0),
                    a.at(0, 0) * b.at(0, 1) + a.at(0, 1) * b.at(1, 1),
                ],
                vec![
                    a.at(1, 0) * b.at(0, 0) + a.at(1, 1) * b.at(1, 0),
                    a.at(1, 0) * b.at(0, 1) + a.at(1, 1) * b.at(1, 1),
                ],
            ]);
            let comp_off = [
                a.at(0, 0) * &b_off[0] + a.at(0, 1) * &b_off[1] + &a_off[0],
                a.at(1, 0) * &b_off[0] + a.at(1, 1) * &b_off[1] + &a_off[1],
            ];
            let rhs = substitute_affine(&f, &comp, &comp_off).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn normalize_is_canonical_up_to_scale() {
        let f = &x_plus_y() * &x_minus_y();
        let g = f.scale(&rat(-7, 3));
        assert_eq!(f.normalize(), g.normalize());
        let lead = f
            .normalize()
            .leading_ycoeff()
            .unwrap()
            .leading()
            .unwrap()
            .clone();
        assert!(lead.is_positive());
    }
}

