//! Square-free decomposition of bivariate polynomials and irreducible
//! factorization of binary forms.

use num_traits::{One, Zero};

use super::bpoly::BPoly;
use super::gcd::{from_xpoly, gcd_bivariate, split_content, to_ypoly};
use super::rat::Rat;
use super::upoly::UPoly;
use super::zfactor::factor_rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorGrade {
    /// Every factor is irreducible over the rationals.
    Irreducible,
    /// Factors are square-free and pairwise coprime but may be reducible.
    Squarefree,
}

/// `unit * prod(factor^exponent)`, factors primitive over the integers with
/// positive leading coefficient and pairwise non-associate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(BPoly, u32)>,
    pub grade: FactorGrade,
}

impl Factorization {
    pub fn reconstruct(&self) -> BPoly {
        self.factors
            .iter()
            .fold(BPoly::constant(self.unit.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    /// Exponent of the factor associate to `g` (0 when absent).
    pub fn exponent_of(&self, g: &BPoly) -> u32 {
        let target = g.normalized();
        self.factors
            .iter()
            .find(|(f, _)| *f == target)
            .map_or(0, |(_, e)| *e)
    }
}

fn finish(f: &BPoly, mut factors: Vec<(BPoly, u32)>, grade: FactorGrade) -> Factorization {
    factors.sort_by(|a, b| {
        a.1.cmp(&b.1)
            .then_with(|| a.0.degree().cmp(&b.0.degree()))
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    let mut lc = Rat::one();
    for (g, e) in &factors {
        lc *= num_traits::pow(g.leading_coeff(), *e as usize);
    }
    Factorization {
        unit: f.leading_coeff() / lc,
        factors,
        grade,
    }
}

/// Yun-style square-free decomposition. The `y`-content (a polynomial in
/// `x` alone) is decomposed separately, since differentiating in `y`
/// cannot see it.
pub fn squarefree_decomposition(f: &BPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    let (content, prim) = split_content(f);
    let content_u = to_ypoly(&content).into_iter().next().unwrap_or_default();
    if !content_u.is_zero() {
        for (part, e) in content_u.squarefree_parts() {
            factors.push((from_xpoly(&part).normalized(), e));
        }
    }
    if !prim.is_constant() {
        let dy = prim.partial_y();
        let g = gcd_bivariate(&prim, &dy)?;
        let mut b = prim.divide_exact(&g)?;
        let c = dy.divide_exact(&g)?;
        let mut d = &c - &b.partial_y();
        let mut i = 1;
        while !b.is_constant() {
            let a = gcd_bivariate(&b, &d)?;
            if !a.is_constant() {
                factors.push((a.clone(), i));
            }
            b = b.divide_exact(&a)?;
            let c = d.divide_exact(&a)?;
            d = &c - &b.partial_y();
            i += 1;
        }
    }
    Ok(finish(f, factors, FactorGrade::Squarefree))
}

/// A homogeneous polynomial of a fixed degree `n` (possibly zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    poly: BPoly,
    n: u32,
}

impl BinaryForm {
    pub fn new(poly: BPoly, n: u32) -> Result<Self> {
        if poly.terms().any(|(m, _)| m.0 + m.1 != n) {
            return Err(Error::InvalidArgument(format!(
                "{poly} is not homogeneous of degree {n}"
            )));
        }
        Ok(BinaryForm { poly, n })
    }

    /// Infers `n` from the terms; `None` for zero or inhomogeneous input.
    pub fn from_poly(poly: BPoly) -> Option<Self> {
        let n = poly.terms().next().map(|(m, _)| m.0 + m.1)?;
        BinaryForm::new(poly, n).ok()
    }

    pub fn poly(&self) -> &BPoly {
        &self.poly
    }

    pub fn into_poly(self) -> BPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `F(t, 1)`.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(
            (0..=self.n)
                .map(|i| self.poly.coeff(i, self.n - i))
                .collect(),
        )
    }
}

/// `y^k h(x/y)` for `h` of degree `k`.
fn rehomogenize(h: &UPoly) -> BPoly {
    let k = h.degree().unwrap_or(0) as u32;
    BPoly::from_terms(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| ((i as u32, k - i as u32), c.clone())),
    )
}

/// Irreducible factorization of a binary form over the rationals. Roots of
/// `F(t, 1)` give the factors; the deficit `n - deg F(t, 1)` is the
/// exponent of `y` (the root at infinity).
pub fn factor_binary_form(form: &BinaryForm) -> Result<Factorization> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = form.dehomogenize();
    let (_, ufactors) = factor_rational(&u);
    let mut factors: Vec<(BPoly, u32)> = ufactors
        .iter()
        .map(|(h, e)| (rehomogenize(h), *e))
        .collect();
    let deg = u.degree().expect("nonzero") as u32;
    if form.n > deg {
        factors.push((BPoly::y(), form.n - deg));
    }
    let fz = finish(form.poly(), factors, FactorGrade::Irreducible);
    debug_assert!(!fz.unit.is_zero());
    Ok(fz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse::parse_poly;

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    fn as_set(f: &Factorization) -> Vec<(String, u32)> {
        let mut v: Vec<_> = f.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect();
        v.sort();
        v
    }

    #[test]
    fn squarefree_examples() {
        let f = squarefree_decomposition(&p("x^2*y^3")).unwrap();
        assert_eq!(as_set(&f), vec![("x".into(), 2), ("y".into(), 3)]);
        let g = squarefree_decomposition(&p("(x+y)^2*(x-y)")).unwrap();
        assert_eq!(as_set(&g), vec![("x + y".into(), 2), ("x - y".into(), 1)]);
        let h = squarefree_decomposition(&p("x^2+y^2")).unwrap();
        assert_eq!(as_set(&h), vec![("x^2 + y^2".into(), 1)]);
        assert_eq!(h.grade, FactorGrade::Squarefree);
        assert_eq!(
            squarefree_decomposition(&BPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_reconstructs_with_unit() {
        let f = p("-3/2*(x^2+1)^2*(x*y-1)^3*(y+x)");
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d.reconstruct(), f);
    }

    #[test]
    fn binary_form_examples() {
        let f = factor_binary_form(&BinaryForm::new(p("x^2*y + y^3"), 3).unwrap()).unwrap();
        assert_eq!(as_set(&f), vec![("x^2 + y^2".into(), 1), ("y".into(), 1)]);
        let g = factor_binary_form(&BinaryForm::new(p("x^3"), 3).unwrap()).unwrap();
        assert_eq!(as_set(&g), vec![("x".into(), 3)]);
        let h = factor_binary_form(&BinaryForm::new(p("x^2*y^2"), 4).unwrap()).unwrap();
        assert_eq!(as_set(&h), vec![("x".into(), 2), ("y".into(), 2)]);
        assert_eq!(h.exponent_of(&p("-3*y")), 2);
    }

    #[test]
    fn binary_form_reconstructs() {
        let form = BinaryForm::new(p("-5*(2*x - 3*y)^3*(x^2 - 2*y^2)*y^2"), 7).unwrap();
        let f = factor_binary_form(&form).unwrap();
        assert_eq!(f.reconstruct(), *form.poly());
        assert_eq!(f.exponent_of(&p("2*x - 3*y")), 3);
        assert_eq!(f.exponent_of(&p("x^2 - 2*y^2")), 1);
    }

    #[test]
    fn inhomogeneous_rejected() {
        assert!(BinaryForm::new(p("x + y^2"), 1).is_err());
        assert!(BinaryForm::from_poly(BPoly::zero()).is_none());
        let z = BinaryForm::new(BPoly::zero(), 3).unwrap();
        assert_eq!(factor_binary_form(&z), Err(Error::ZeroPolynomial));
    }
}
