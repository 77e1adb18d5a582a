//! Bivariate gcd via primitive remainder sequences in `Q[x][y]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bpoly::BPoly;
use super::rat::Rat;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `f` viewed as a polynomial in `y` with coefficients in `Q[x]`,
/// indexed by the power of `y`.
pub(crate) fn to_ypoly(f: &BPoly) -> Vec<UPoly> {
    let dy = match f.degree_y() {
        Some(d) => d as usize,
        None => return Vec::new(),
    };
    let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); dy + 1];
    for (&(i, j), c) in f.terms() {
        let row = &mut rows[j as usize];
        if row.len() <= i as usize {
            row.resize(i as usize + 1, Rat::default());
        }
        row[i as usize] = c.clone();
    }
    rows.into_iter().map(UPoly::new).collect()
}

pub(crate) fn from_ypoly(v: &[UPoly]) -> BPoly {
    BPoly::from_terms(v.iter().enumerate().flat_map(|(j, u)| {
        u.coeffs()
            .iter()
            .enumerate()
            .map(move |(i, c)| ((i as u32, j as u32), c.clone()))
    }))
}

pub(crate) fn from_xpoly(u: &UPoly) -> BPoly {
    from_ypoly(std::slice::from_ref(u))
}

/// Monic gcd of the `Q[x]` coefficients.
pub(crate) fn content_x(v: &[UPoly]) -> UPoly {
    v.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
}

fn div_content(v: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    v.iter()
        .map(|a| a.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

/// Dense integer polynomial in `x`, lowest degree first, trimmed.
type Zx = Vec<BigInt>;

fn zx_trim(mut v: Zx) -> Zx {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zx_mul(a: &Zx, b: &Zx) -> Zx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zx_trim(out)
}

fn zx_sub(a: &Zx, b: &Zx) -> Zx {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zx_trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

fn zx_pow(a: &Zx, e: u32) -> Zx {
    (0..e).fold(vec![BigInt::one()], |acc, _| zx_mul(&acc, a))
}

/// Quotient of an exact division in `Z[x]`.
fn zx_div_exact(a: &Zx, d: &Zx) -> Zx {
    let dd = d.len() - 1;
    if a.len() <= dd {
        debug_assert!(a.is_empty());
        return Vec::new();
    }
    let lc = &d[dd];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &r[k + dd] / lc;
        debug_assert!((&c * lc) == r[k + dd], "inexact division");
        if !c.is_zero() {
            for (i, dc) in d.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    zx_trim(q)
}

fn zx_content(a: &Zx) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn zx_primitive(a: Zx) -> Zx {
    let g = zx_content(&a);
    if g.is_zero() || g.is_one() {
        return a;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn zx_prem(a: &Zx, b: &Zx) -> Zx {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let lr = r[r.len() - 1].clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= bc * &lr;
        }
        r = zx_trim(r);
    }
    r
}

/// Gcd in `Z[x]` with positive leading coefficient.
fn zx_gcd(a: &Zx, b: &Zx) -> Zx {
    if a.is_empty() {
        return zx_positive(b.clone());
    }
    if b.is_empty() {
        return zx_positive(a.clone());
    }
    let c = zx_content(a).gcd(&zx_content(b));
    let mut p = zx_primitive(a.clone());
    let mut q = zx_primitive(b.clone());
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = zx_prem(&p, &q);
        p = q;
        q = zx_primitive(r);
    }
    let p = zx_positive(p);
    p.into_iter().map(|x| x * &c).collect()
}

fn zx_positive(a: Zx) -> Zx {
    if a.last().is_some_and(Signed::is_negative) {
        a.into_iter().map(|c| -c).collect()
    } else {
        a
    }
}

/// `f` scaled to integer coefficients, as a polynomial in `y` over `Z[x]`.
fn to_zy(f: &BPoly) -> Vec<Zx> {
    let (_, prim) = f.primitive_normalized();
    let dy = prim.degree_y().unwrap_or(0) as usize;
    let mut rows: Vec<Zx> = vec![Vec::new(); dy + 1];
    for (&(i, j), c) in prim.terms() {
        let row = &mut rows[j as usize];
        if row.len() <= i as usize {
            row.resize(i as usize + 1, BigInt::zero());
        }
        row[i as usize] = c.to_integer();
    }
    rows
}

fn from_zy(v: &[Zx]) -> BPoly {
    BPoly::from_terms(v.iter().enumerate().flat_map(|(j, u)| {
        u.iter()
            .enumerate()
            .map(move |(i, c)| ((i as u32, j as u32), Rat::from_integer(c.clone())))
    }))
}

fn zy_content(v: &[Zx]) -> Zx {
    v.iter().fold(Vec::new(), |acc, c| zx_gcd(&acc, c))
}

fn zy_div(v: &[Zx], c: &Zx) -> Vec<Zx> {
    v.iter().map(|a| zx_div_exact(a, c)).collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, with respect to `y`.
fn zy_prem(a: &[Zx], b: &[Zx]) -> Vec<Zx> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut missing = a.len() - db;
    while r.len() > db {
        missing -= 1;
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Zx> = r.iter().map(|c| zx_mul(c, lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = zx_sub(&next[k + shift], &zx_mul(bc, &lr));
        }
        while next.last().is_some_and(Vec::is_empty) {
            next.pop();
        }
        r = next;
    }
    if missing > 0 && !r.is_empty() {
        let scale = zx_pow(lb, missing as u32);
        r = r.iter().map(|c| zx_mul(c, &scale)).collect();
    }
    r
}

/// Greatest common divisor, normalized primitive with positive leading
/// coefficient. Errors only when both inputs are zero.
pub fn gcd_bivariate(f: &BPoly, g: &BPoly) -> Result<BPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() {
        return Ok(g.normalized());
    }
    if g.is_zero() {
        return Ok(f.normalized());
    }
    let fv = to_zy(f);
    let gv = to_zy(g);
    let cf = zy_content(&fv);
    let cg = zy_content(&gv);
    let c = zx_gcd(&cf, &cg);
    let mut a = zy_div(&fv, &cf);
    let mut b = zy_div(&gv, &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // Subresultant remainder sequence: the divisions by `g * h^delta` are
    // exact and keep the coefficient growth polynomial.
    let mut sg: Zx = vec![BigInt::one()];
    let mut sh: Zx = vec![BigInt::one()];
    let prim = loop {
        if b.len() == 1 {
            break vec![vec![BigInt::one()]];
        }
        let delta = (a.len() - b.len()) as u32;
        let r = zy_prem(&a, &b);
        if r.is_empty() {
            let cb = zy_content(&b);
            break zy_div(&b, &cb);
        }
        let divisor = zx_mul(&sg, &zx_pow(&sh, delta));
        a = b;
        b = zy_div(&r, &divisor);
        sg = a.last().expect("nonzero").clone();
        sh = if delta == 0 {
            sh
        } else {
            zx_div_exact(&zx_pow(&sg, delta), &zx_pow(&sh, delta - 1))
        };
    };
    let prim = from_zy(&prim);
    let c = from_zy(std::slice::from_ref(&c));
    Ok((&prim * &c).normalized())
}

/// Content with respect to `y` (a polynomial in `x`) and the primitive part.
pub(crate) fn split_content(f: &BPoly) -> (BPoly, BPoly) {
    let v = to_ypoly(f);
    let c = content_x(&v);
    let p = from_ypoly(&div_content(&v, &c));
    (from_xpoly(&c), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse::parse_poly;

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(gcd_bivariate(&p("x^2*y"), &p("x*y^2")).unwrap(), p("x*y"));
        assert_eq!(gcd_bivariate(&p("x^2+y^2"), &p("x")).unwrap(), p("1"));
        assert_eq!(
            gcd_bivariate(&p("(x+y)^2*(x-y)"), &p("(x+y)*y")).unwrap(),
            p("x+y")
        );
        assert_eq!(
            gcd_bivariate(&BPoly::zero(), &BPoly::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn mixed_content_and_primitive_parts() {
        let common = p("(x^2 + 1)*(x*y - 3)*(y^2 + x)");
        let f = &common * &p("x + y + 7");
        let g = &common * &p("2*x*y^3 - x^5");
        assert_eq!(gcd_bivariate(&f, &g).unwrap(), common.normalized());
        assert_eq!(gcd_bivariate(&p("-4*x"), &BPoly::zero()).unwrap(), p("x"));
    }
}
