//! Sparse bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{denominator_lcm, numerator_gcd, Rat};
use crate::error::{Error, Result};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Monomial = (u32, u32);

/// Total degree; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A non-negative integer or infinity. Used for multiplicities and
/// local intersection numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(u32),
    Infinite,
}

impl Mult {
    pub fn finite(self) -> Option<u32> {
        match self {
            Mult::Finite(m) => Some(m),
            Mult::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Mult::Finite(_))
    }
}

impl Add for Mult {
    type Output = Mult;

    fn add(self, rhs: Mult) -> Mult {
        match (self, rhs) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a + b),
            _ => Mult::Infinite,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(m) => write!(f, "{m}"),
            Mult::Infinite => f.write_str("inf"),
        }
    }
}

/// Graded lexicographic key: total degree first, then the power of `x`.
pub(crate) fn grlex_key(m: &Monomial) -> (u32, u32) {
    (m.0 + m.1, m.0)
}

/// Polynomial in `x`, `y` with rational coefficients. No stored
/// coefficient is ever zero, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl BPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms in descending graded lexicographic order (the rendering order).
    pub fn terms_grlex_desc(&self) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|t| std::cmp::Reverse(grlex_key(&t.0)));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by_key(|(m, _)| grlex_key(m))
            .map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> BPoly {
        BPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ((m.0 + i, m.1 + j), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x^i y^j`; `None` when some term is not divisible.
    pub fn div_monomial(&self, i: u32, j: u32) -> Option<BPoly> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0 < i || m.1 < j {
                return None;
            }
            out.insert((m.0 - i, m.1 - j), c.clone());
        }
        Some(BPoly { terms: out })
    }

    pub fn pow(&self, e: u32) -> BPoly {
        let mut result = BPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.terms {
            acc += c * pow_rat(x, *i) * pow_rat(y, *j);
        }
        acc
    }

    pub fn partial_x(&self) -> BPoly {
        BPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.0 > 0)
                .map(|(m, c)| ((m.0 - 1, m.1), c * Rat::from_integer(BigInt::from(m.0)))),
        )
    }

    pub fn partial_y(&self) -> BPoly {
        BPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.1 > 0)
                .map(|(m, c)| ((m.0, m.1 - 1), c * Rat::from_integer(BigInt::from(m.1)))),
        )
    }

    /// `self(px, py)`.
    pub fn compose(&self, px: &BPoly, py: &BPoly) -> BPoly {
        let max_i = self.degree_x().unwrap_or(0) as usize;
        let max_j = self.degree_y().unwrap_or(0) as usize;
        let powers = |p: &BPoly, n: usize| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(BPoly::one());
            for k in 0..n {
                let next = &v[k] * p;
                v.push(next);
            }
            v
        };
        let xp = powers(px, max_i);
        let yp = powers(py, max_j);
        let mut out = BPoly::zero();
        for ((i, j), c) in &self.terms {
            let t = (&xp[*i as usize] * &yp[*j as usize]).scale(c);
            out = out + t;
        }
        out
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> BPoly {
        BPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0 + m.1 == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.0 + m.1);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Lowest total degree of a term; `Infinite` for zero.
    pub fn multiplicity_at_origin(&self) -> Mult {
        self.terms
            .keys()
            .map(|m| m.0 + m.1)
            .min()
            .map_or(Mult::Infinite, Mult::Finite)
    }

    /// Lowest homogeneous part (the tangent cone when the constant term vanishes).
    pub fn lowest_part(&self) -> BPoly {
        match self.multiplicity_at_origin() {
            Mult::Finite(m) => self.homogeneous_component(m),
            Mult::Infinite => BPoly::zero(),
        }
    }

    /// Minimal weight `i*w1 + j*w2` over the support, together with the
    /// sum of the terms attaining it.
    pub fn weighted_order(&self, w: (&Rat, &Rat)) -> Result<(Rat, BPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let weight = |m: &Monomial| {
            Rat::from_integer(BigInt::from(m.0)) * w.0 + Rat::from_integer(BigInt::from(m.1)) * w.1
        };
        let min = self
            .terms
            .keys()
            .map(weight)
            .min()
            .expect("nonzero polynomial has a term");
        let lead = BPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weight(m) == min)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        };
        Ok((min, lead))
    }

    /// `self(x + p.0, y + p.1)`.
    pub fn translate(&self, p: (&Rat, &Rat)) -> BPoly {
        if p.0.is_zero() && p.1.is_zero() {
            return self.clone();
        }
        let px = BPoly::x() + BPoly::constant(p.0.clone());
        let py = BPoly::y() + BPoly::constant(p.1.clone());
        self.compose(&px, &py)
    }

    /// `self(m[0][0] x + m[0][1] y, m[1][0] x + m[1][1] y)`.
    pub fn linear_change(&self, m: &[[Rat; 2]; 2]) -> Result<BPoly> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let px = BPoly::from_terms([((1, 0), m[0][0].clone()), ((0, 1), m[0][1].clone())]);
        let py = BPoly::from_terms([((1, 0), m[1][0].clone()), ((0, 1), m[1][1].clone())]);
        Ok(self.compose(&px, &py))
    }

    /// Exact quotient `self / g`, by multivariate division in graded
    /// lexicographic order (a single divisor divides iff the remainder is zero).
    pub fn divide_exact(&self, g: &BPoly) -> Result<BPoly> {
        let ((gi, gj), gc) = match g.leading_term() {
            Some((m, c)) => (m, c.clone()),
            None => return Err(Error::DivisorZero),
        };
        let mut q = BPoly::zero();
        let mut r = self.clone();
        while let Some(((ri, rj), rc)) = r.leading_term().map(|(m, c)| (m, c.clone())) {
            if ri < gi || rj < gj {
                return Err(Error::NotDivisible);
            }
            let c = rc / &gc;
            let (di, dj) = (ri - gi, rj - gj);
            q.add_term((di, dj), c.clone());
            r = r - g.mul_monomial(di, dj).scale(&c);
        }
        Ok(q)
    }

    /// Splits `self = unit * p` with `p` having coprime integer coefficients
    /// and positive leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive_normalized(&self) -> (Rat, BPoly) {
        if self.is_zero() {
            return (Rat::zero(), BPoly::zero());
        }
        let lcm = denominator_lcm(self.terms.values());
        let scaled: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c * Rat::from_integer(lcm.clone())))
            .collect();
        let g = numerator_gcd(scaled.iter().map(|(_, c)| c));
        let mut unit = Rat::new(g.clone(), lcm);
        if self.leading_coeff().is_negative() {
            unit = -unit;
        }
        let p = self.scale(&unit.recip());
        (unit, p)
    }

    /// The normalized primitive associate of `self`.
    pub fn normalized(&self) -> BPoly {
        self.primitive_normalized().1
    }

    /// Coefficients of `self(x, 0)`, lowest degree first.
    pub fn coeffs_at_y0(&self) -> Vec<Rat> {
        let mut v = Vec::new();
        for ((i, j), c) in &self.terms {
            if *j == 0 {
                let i = *i as usize;
                if v.len() <= i {
                    v.resize(i + 1, Rat::zero());
                }
                v[i] = c.clone();
            }
        }
        v
    }

    /// Coefficients of `self(0, y)`, lowest degree first.
    pub fn coeffs_at_x0(&self) -> Vec<Rat> {
        let mut v = Vec::new();
        for ((i, j), c) in &self.terms {
            if *i == 0 {
                let j = *j as usize;
                if v.len() <= j {
                    v.resize(j + 1, Rat::zero());
                }
                v[j] = c.clone();
            }
        }
        v
    }

    /// Canonical text form, parseable by [`parse_poly`](super::parse::parse_poly).
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    num_traits::pow(r.clone(), e as usize)
}

fn monomial_text(i: u32, j: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var("x", i), var("y", j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let mono = monomial_text(i, j);
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            match (k, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({self})")
    }
}

impl Add<&BPoly> for &BPoly {
    type Output = BPoly;

    fn add(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for BPoly {
    type Output = BPoly;

    fn add(mut self, rhs: BPoly) -> BPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&BPoly> for &BPoly {
    type Output = BPoly;

    fn sub(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Sub for BPoly {
    type Output = BPoly;

    fn sub(mut self, rhs: BPoly) -> BPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for &BPoly {
    type Output = BPoly;

    fn neg(self) -> BPoly {
        BPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for BPoly {
    type Output = BPoly;

    fn neg(self) -> BPoly {
        -&self
    }
}

impl Mul<&BPoly> for &BPoly {
    type Output = BPoly;

    fn mul(self, rhs: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term((ma.0 + mb.0, ma.1 + mb.1), ca * cb);
            }
        }
        out
    }
}

impl Mul for BPoly {
    type Output = BPoly;

    fn mul(self, rhs: BPoly) -> BPoly {
        &self * &rhs
    }
}

impl From<BigInt> for BPoly {
    fn from(n: BigInt) -> Self {
        BPoly::constant(Rat::from_integer(n))
    }
}
