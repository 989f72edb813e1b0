//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored from degree 0 upward with no trailing zeros; the
//! zero polynomial has an empty coefficient list. Each polynomial carries a
//! variable tag used for display and for debug-checking that mixed-variable
//! arithmetic never happens.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{rat_int, Rat};
use super::QpolyError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(var: char, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: char) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: char) -> Self {
        UniPoly::constant(var, Rat::one())
    }

    pub fn constant(var: char, c: Rat) -> Self {
        UniPoly::new(var, vec![c])
    }

    pub fn monomial(var: char, deg: usize, c: Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero(var);
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly { var, coeffs }
    }

    pub fn from_i64(var: char, coeffs: &[i64]) -> Self {
        UniPoly::new(var, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots(var: char, roots: &[Rat]) -> Self {
        let mut p = UniPoly::one(var);
        for r in roots {
            let factor = UniPoly::new(var, vec![-r.clone(), Rat::one()]);
            p = &p * &factor;
        }
        p
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of the given power (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(self.var);
        }
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { var: self.var, coeffs }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), QpolyError> {
        debug_assert_eq!(self.var, d.var);
        let Some(dd) = d.degree() else {
            return Err(QpolyError::DivisionByZero);
        };
        let mut rem = self.clone();
        let mut q = UniPoly::zero(self.var);
        let dlead_inv = d.leading().unwrap().recip();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() * &dlead_inv;
            let k = rd - dd;
            q = &q + &UniPoly::monomial(self.var, k, c.clone());
            rem = &rem - &d.scale(&c).shift(k);
        }
        Ok((q, rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Scale by the positive rational that makes the coefficients integer
    /// and collectively coprime. Signs are preserved, which keeps sign
    /// sequences (e.g. Sturm chains) intact.
    pub fn primitive_scaled(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let factor = Rat::new(den_lcm, num_gcd.abs());
        self.scale(&factor)
    }
}

/// Monic greatest common divisor; `gcd(p, 0)` is monic `p`, `gcd(0, 0) = 0`.
pub fn gcd_uni(p: &UniPoly, q: &UniPoly) -> UniPoly {
    debug_assert_eq!(p.var(), q.var());
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        // monic normalization keeps coefficient growth in check
        b = r.monic();
    }
    a.monic()
}

/// The maximal monic divisor of `p` sharing no root with `h`. Repeatedly
/// divides out `gcd(p, h)` until it is constant, removing shared factors
/// with their full multiplicity in `p`.
pub fn coprime_part(p: &UniPoly, h: &UniPoly) -> Result<UniPoly, QpolyError> {
    if p.is_zero() {
        return Err(QpolyError::ZeroPolynomial);
    }
    let mut p = p.clone();
    loop {
        let d = gcd_uni(&p, h);
        if d.is_constant() {
            return Ok(p.monic());
        }
        p = p.exact_div(&d).expect("gcd divides exactly");
    }
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_uni(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let d = gcd_uni(p, &p.derivative());
    p.exact_div(&d).expect("gcd divides exactly").monic()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        debug_assert_eq!(self.var, rhs.var);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(self.var, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        debug_assert_eq!(self.var, rhs.var);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(self.var, coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        debug_assert_eq!(self.var, rhs.var);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(self.var, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if i == 1 {
                    write!(f, "{}", self.var)?;
                } else {
                    write!(f, "{}^{}", self.var, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
