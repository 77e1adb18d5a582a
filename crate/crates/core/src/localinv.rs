//! Local invariants of a plane curve germ at the origin.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{gcd_bivariate, squarefree_decomposition, BPoly, Mult, Rat};

/// Line multiplicities of the tangent cone over the algebraic closure,
/// sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangentConePattern(Vec<u32>);

impl TangentConePattern {
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        TangentConePattern(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of distinct lines.
    pub fn lines(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for TangentConePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The data behind `lct <= (w1 + w2) / wt(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBound {
    pub weights: (Rat, Rat),
    pub wt_f: Rat,
    pub b: Rat,
    /// Terms of `f` of minimal weight.
    pub leading: BPoly,
}

fn x_order(coeffs: &[Rat]) -> u32 {
    coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero restriction") as u32
}

/// Intersection number of `f` and `g` at the origin, by Fulton's
/// reduction on the restrictions to `y = 0`.
pub fn intersection_multiplicity_origin(f: &BPoly, g: &BPoly) -> Result<Mult> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(Mult::Finite(0));
    }
    let common = gcd_bivariate(f, g)?;
    if common.vanishes_at_origin() {
        return Ok(Mult::Infinite);
    }
    // A common factor that is a unit at the origin changes nothing locally.
    let (mut f, mut g) = if common.is_constant() {
        (f.clone(), g.clone())
    } else {
        (f.divide_exact(&common)?, g.divide_exact(&common)?)
    };
    let mut acc = 0u32;
    loop {
        if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
            return Ok(Mult::Finite(acc));
        }
        let mut f0 = f.coeffs_at_y0();
        let mut g0 = g.coeffs_at_y0();
        // The zero restriction counts as the smallest degree.
        if g0.is_empty() || (!f0.is_empty() && g0.len() < f0.len()) {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        if f0.is_empty() {
            // f = y * h: I(f, g) = I(y, g) + I(h, g).
            acc += x_order(&g0);
            f = f.div_monomial(0, 1).expect("y divides f");
            continue;
        }
        let shift = (g0.len() - f0.len()) as u32;
        let c = g0.last().expect("nonzero") / f0.last().expect("nonzero");
        g = &g - &f.mul_monomial(shift, 0).scale(&c);
    }
}

/// Milnor number `I(f_x, f_y)` at the origin.
pub fn milnor_number_origin(f: &BPoly) -> Result<Mult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    let fx = f.partial_x();
    let fy = f.partial_y();
    match (fx.is_zero(), fy.is_zero()) {
        (true, true) => unreachable!("nonconstant polynomial has a nonzero partial"),
        (true, false) => Ok(if fy.vanishes_at_origin() {
            Mult::Infinite
        } else {
            Mult::Finite(0)
        }),
        (false, true) => Ok(if fx.vanishes_at_origin() {
            Mult::Infinite
        } else {
            Mult::Finite(0)
        }),
        (false, false) => intersection_multiplicity_origin(&fx, &fy),
    }
}

pub fn tangent_cone_pattern(f: &BPoly) -> Result<TangentConePattern> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    let cone = f.lowest_part();
    let parts = squarefree_decomposition(&cone)?;
    let mut entries = Vec::new();
    for (factor, e) in &parts.factors {
        let g = factor.degree().finite().expect("nonzero factor");
        entries.extend(std::iter::repeat_n(*e, g as usize));
    }
    Ok(TangentConePattern::new(entries))
}

/// True iff `f` has no repeated nonconstant factor.
pub fn is_square_free(f: &BPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let g = gcd_bivariate(f, &f.partial_x())?;
    if g.is_constant() {
        return Ok(true);
    }
    Ok(gcd_bivariate(&g, &f.partial_y())?.is_constant())
}

pub fn weighted_lct_upper_bound(f: &BPoly, w: (&Rat, &Rat)) -> Result<WeightedBound> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    if !w.0.is_positive() || !w.1.is_positive() {
        return Err(Error::InvalidArgument("weights must be positive".into()));
    }
    let (wt_f, leading) = f.weighted_order(w)?;
    let b = (w.0 + w.1) / &wt_f;
    Ok(WeightedBound {
        weights: (w.0.clone(), w.1.clone()),
        wt_f,
        b,
        leading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, parse_poly, rat};

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    fn imult(f: &str, g: &str) -> Mult {
        intersection_multiplicity_origin(&p(f), &p(g)).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(imult("x", "y"), Mult::Finite(1));
        assert_eq!(imult("y - x^2", "y"), Mult::Finite(2));
        assert_eq!(imult("2*x", "3*y^2"), Mult::Finite(2));
        assert_eq!(imult("x + 1", "y"), Mult::Finite(0));
        assert_eq!(imult("x*y", "x*(x - y^2)"), Mult::Infinite);
        assert_eq!(imult("(x + 1)*y", "(x + 1)*(y - x^3)"), Mult::Finite(3));
        assert_eq!(imult("y^2 - x^3", "y^3 - x^2"), Mult::Finite(4));
        assert_eq!(
            intersection_multiplicity_origin(&BPoly::zero(), &p("x")),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn milnor_examples() {
        let mu = |s: &str| milnor_number_origin(&p(s)).unwrap();
        assert_eq!(mu("x^2 + y^3"), Mult::Finite(2));
        assert_eq!(mu("x^2*y + y^4"), Mult::Finite(5));
        assert_eq!(mu("y + x^2"), Mult::Finite(0));
        assert_eq!(mu("x^3 + y^4"), Mult::Finite(6));
        assert_eq!(mu("x^2"), Mult::Infinite);
        assert_eq!(mu("y"), Mult::Finite(0));
        assert_eq!(
            milnor_number_origin(&p("x + 1")),
            Err(Error::NotThroughOrigin)
        );
    }

    #[test]
    fn cone_patterns() {
        let pat = |s: &str| tangent_cone_pattern(&p(s)).unwrap().to_string();
        assert_eq!(pat("x^2*y + y^3"), "{1,1,1}");
        assert_eq!(pat("x^3 + y^4"), "{3}");
        assert_eq!(pat("x^3*y + y^5"), "{3,1}");
        assert_eq!(pat("x^2*y^2 + x^5 + y^5"), "{2,2}");
    }

    #[test]
    fn square_free_examples() {
        assert!(is_square_free(&p("x*y*(x - y)")).unwrap());
        assert!(!is_square_free(&p("(x^2 + y^2)^2")).unwrap());
        assert!(!is_square_free(&p("x^4 + 2*x^2*y^2 + y^4")).unwrap());
        assert!(!is_square_free(&p("x^2")).unwrap());
        assert!(is_square_free(&p("3")).unwrap());
    }

    #[test]
    fn weighted_bounds() {
        let b = |s: &str, w1: i64, w2: i64| {
            weighted_lct_upper_bound(&p(s), (&int(w1), &int(w2))).unwrap()
        };
        assert_eq!(b("x^3 + y^4", 4, 3).b, rat(7, 12));
        assert_eq!(b("x^2 + y^5", 5, 2).b, rat(7, 10));
        let t = b("x^2*y^2 + x^3 + y^6", 2, 1);
        assert_eq!(t.b, rat(1, 2));
        assert_eq!(t.leading, p("x^2*y^2 + x^3 + y^6"));
        assert!(weighted_lct_upper_bound(&p("x"), (&int(0), &int(1))).is_err());
    }
}
