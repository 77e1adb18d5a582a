//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{denominator_lcm, numerator_gcd, Rat};

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading_coeff();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Exact quotient; `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero). Runs a primitive
    /// remainder sequence over the integers to keep coefficients small.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() || self.is_constant() || other.is_constant() {
            return if other.is_zero() {
                self.monic()
            } else {
                UPoly::one()
            };
        }
        let mut a = self.primitive_integer().1;
        let mut b = other.primitive_integer().1;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        UPoly::from_bigints(&a).monic()
    }

    /// Yun's square-free decomposition of a nonzero polynomial: monic,
    /// pairwise coprime, square-free parts with their multiplicities.
    /// The leading coefficient is dropped.
    pub fn squarefree_parts(&self) -> Vec<(UPoly, u32)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// `self = unit * p` with `p` primitive over the integers and positive
    /// leading coefficient. Returns the integer coefficients of `p`.
    pub fn primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let lcm = denominator_lcm(&self.coeffs);
        let scaled: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|c| c * Rat::from_integer(lcm.clone()))
            .collect();
        let g = numerator_gcd(&scaled);
        let mut unit = Rat::new(g.clone(), lcm);
        if self.leading_coeff().is_negative() {
            unit = -unit;
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c / &unit;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        (unit, ints)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> UPoly {
        UPoly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    /// Renders with variable `var`, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            match (s.is_empty(), neg) {
                (true, false) => s.push_str(&body),
                (true, true) => s.push_str(&format!("-{body}")),
                (false, false) => s.push_str(&format!(" + {body}")),
                (false, true) => s.push_str(&format!(" - {body}")),
            }
        }
        s
    }
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// `lc(b)^k * a mod b` over the integers.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= bc * &lr;
        }
        r = int_trim(r);
    }
    r
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            a.gcd(&UPoly::from_ints(&[-1, 1])),
            UPoly::from_ints(&[-1, 1])
        );
        assert_eq!(a.gcd(&UPoly::from_ints(&[2, 1])), UPoly::one());
    }

    #[test]
    fn yun_parts() {
        // (t-1)^3 (t+2)
        let f = UPoly::from_ints(&[-1, 1])
            .pow(3)
            .mul(&UPoly::from_ints(&[2, 1]));
        let parts = f.squarefree_parts();
        assert_eq!(
            parts,
            vec![
                (UPoly::from_ints(&[2, 1]), 1),
                (UPoly::from_ints(&[-1, 1]), 3)
            ]
        );
    }

    #[test]
    fn primitive_parts() {
        let f = UPoly::new(vec![
            Rat::new(1.into(), 2.into()),
            Rat::new((-3).into(), 4.into()),
        ]);
        let (unit, ints) = f.primitive_integer();
        assert_eq!(unit, Rat::new((-1).into(), 4.into()));
        assert_eq!(ints, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(f.render("t"), "-3/4*t + 1/2");
    }
}
