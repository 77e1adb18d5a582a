//! Log canonical thresholds at points of multiplicity `d - 1` on reduced
//! curves of degree `d`.
//!
//! Write the lowest form of the local equation as a binary form of degree
//! `d - 1`. At most one line can occur in it with exponent `m` satisfying
//! `2m > d - 1`, and any factor with such an exponent is a line because
//! `m * deg <= d - 1`. When that line exists the threshold is decided by `m`
//! and by whether the line is a component of the curve; otherwise it is
//! `2/(d-1)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactpoly::{factor_binary_form, homogeneous_part, rat, render_rat, BPoly, Mult, Rat};
use crate::localinv::is_square_free;

/// The distinguished tangent line and the data derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPoint {
    /// Primitive linear form cutting out the line.
    pub line: BPoly,
    /// Exponent of the line in the lowest form.
    pub m: u32,
    pub line_is_component: bool,
    /// `m - 1` when the line is a component, `m` otherwise.
    pub k_q: u32,
    /// Threshold contributed by this point.
    pub l_q: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighMultAnalysis {
    pub d: u32,
    pub special: Option<SpecialPoint>,
    pub lct: Rat,
}

impl HighMultAnalysis {
    pub fn has_special_q(&self) -> bool {
        self.special.is_some()
    }
}

fn degree_of(f: &BPoly) -> Result<u32> {
    f.degree().finite().ok_or(Error::ZeroPolynomial)
}

/// Threshold when the special line is a component; `k` is its tangency
/// order with the residual curve.
pub fn component_value(d: u32, k: u32) -> Rat {
    rat((2 * k + 1) as i64, (k * d + 1) as i64)
}

/// Threshold when the special line is not a component; `k` is its
/// exponent in the lowest form.
pub fn transversal_value(d: u32, k: u32) -> Rat {
    rat((2 * k + 1) as i64, (k * d) as i64)
}

/// Threshold when no line dominates the lowest form.
pub fn generic_value(d: u32) -> Rat {
    rat(2, (d - 1) as i64)
}

pub fn analyze_high_mult(f: &BPoly) -> Result<HighMultAnalysis> {
    let d = degree_of(f)?;
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let mult = f.multiplicity_at_origin();
    if mult != Mult::Finite(d - 1) {
        return Err(Error::WrongMultiplicity {
            expected: d - 1,
            found: mult.to_string(),
        });
    }
    if !is_square_free(f)? {
        return Err(Error::NotSquareFree);
    }
    let cone = factor_binary_form(&homogeneous_part(f, d - 1))?;
    let mut dominant = cone.factors.iter().filter(|(_, e)| 2 * e > d - 1);
    let Some((line, m)) = dominant.next() else {
        return Ok(HighMultAnalysis {
            d,
            special: None,
            lct: generic_value(d),
        });
    };
    debug_assert!(dominant.next().is_none());
    debug_assert_eq!(line.degree().finite(), Some(1));
    let m = *m;
    let special = match f.divide_exact(line) {
        Ok(residual) => {
            let k_q = factor_binary_form(&homogeneous_part(&residual, d - 2))?.exponent_of(line);
            debug_assert_eq!(k_q, m - 1);
            SpecialPoint {
                line: line.clone(),
                m,
                line_is_component: true,
                k_q,
                l_q: component_value(d, k_q),
            }
        }
        Err(Error::NotDivisible) => SpecialPoint {
            line: line.clone(),
            m,
            line_is_component: false,
            k_q: m,
            l_q: transversal_value(d, m),
        },
        Err(e) => return Err(e),
    };
    Ok(HighMultAnalysis {
        d,
        lct: special.l_q.clone(),
        special: Some(special),
    })
}

/// How a threshold value is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    Generic,
    Component { k: u32 },
    Transversal { k: u32 },
}

fn realizations(d: u32) -> Vec<(Rat, Realization)> {
    let mut out = vec![(generic_value(d), Realization::Generic)];
    for k in (d - 1) / 2..=d - 2 {
        out.push((component_value(d, k), Realization::Component { k }));
    }
    for k in d.div_ceil(2)..=d - 1 {
        out.push((transversal_value(d, k), Realization::Transversal { k }));
    }
    out
}

/// All thresholds attained at multiplicity-`(d-1)` points of reduced
/// degree-`d` curves, in increasing order.
pub fn lambda_set(d: u32) -> Result<Vec<Rat>> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let mut v: Vec<Rat> = realizations(d).into_iter().map(|(r, _)| r).collect();
    v.sort();
    Ok(v)
}

fn realization_of(d: u32, value: &Rat) -> Option<Realization> {
    realizations(d)
        .into_iter()
        .find(|(r, _)| r == value)
        .map(|(_, how)| how)
}

fn padding_terms(deg: u32) -> Vec<BPoly> {
    (0..=deg)
        .map(|j| BPoly::monomial(deg - j, j, Rat::one()))
        .collect()
}

/// A square-free degree-`d` curve with a multiplicity-`(d-1)` point at the
/// origin whose threshold there is `target`.
pub fn construct_witness(d: u32, target: &Rat) -> Result<BPoly> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let not_realizable = || Error::TargetNotRealizable {
        d,
        target: render_rat(target),
    };
    let how = realization_of(d, target).ok_or_else(not_realizable)?;
    let x = BPoly::x();
    let y = BPoly::y();
    let mono = |i: u32, j: u32| BPoly::monomial(i, j, Rat::one());
    // Each candidate is `wrap(core + padding)`.
    let (core, pad_degree, wrap): (BPoly, u32, Box<dyn Fn(BPoly) -> BPoly>) = match how {
        Realization::Generic => {
            let mut lines = &x * &y;
            for i in 1..=d.saturating_sub(3) {
                lines = &lines * &(&x - &y.scale(&Rat::from_integer(i.into())));
            }
            (lines, d, Box::new(|g| g))
        }
        Realization::Component { k } => {
            let inner = &mono(k, d - 2 - k) + &mono(0, d - 1);
            let xx = x.clone();
            (inner, d - 1, Box::new(move |g| &xx * &g))
        }
        Realization::Transversal { k } => (&mono(k, d - 1 - k) + &mono(0, d), d, Box::new(|g| g)),
    };
    let pads = padding_terms(pad_degree);
    let mut candidates: Vec<BPoly> = vec![BPoly::zero()];
    candidates.extend(pads.iter().cloned());
    for (i, a) in pads.iter().enumerate() {
        for b in &pads[i + 1..] {
            candidates.push(a + b);
        }
    }
    for pad in candidates {
        let f = wrap(&core + &pad);
        if f.degree().finite() != Some(d) || !is_square_free(&f)? {
            continue;
        }
        if matches!(analyze_high_mult(&f), Ok(a) if a.lct == *target) {
            return Ok(f);
        }
    }
    Err(not_realizable())
}

/// True when the threshold forces the special line to be a component, so
/// the curve is reducible.
pub fn reducibility_hint(lct: &Rat, d: u32) -> Result<bool> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    match realization_of(d, lct) {
        Some(how) => Ok(matches!(how, Realization::Component { .. })),
        None => Err(Error::NotInLambdaSet {
            d,
            value: render_rat(lct),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> BPoly {
        parse_poly(s).unwrap()
    }

    fn lct(s: &str) -> Rat {
        analyze_high_mult(&p(s)).unwrap().lct
    }

    #[test]
    fn worked_examples() {
        assert_eq!(lct("y^3 + x^4"), rat(7, 12));
        assert_eq!(lct("x^2 + y^3"), rat(5, 6));
        assert_eq!(lct("y^3 + x^3*y"), rat(5, 9));
        assert_eq!(lct("x*y*(x - y) + x^4"), rat(2, 3));
        assert_eq!(lct("y^4 + x^5"), rat(9, 20));

        let e7 = analyze_high_mult(&p("y^3 + x^3*y")).unwrap();
        let sp = e7.special.unwrap();
        assert_eq!(sp.line, p("y"));
        assert_eq!((sp.m, sp.k_q, sp.line_is_component), (3, 2, true));

        let e6 = analyze_high_mult(&p("y^3 + x^4")).unwrap().special.unwrap();
        assert_eq!((e6.m, e6.k_q, e6.line_is_component), (3, 3, false));
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            analyze_high_mult(&p("x^2 + y^2")),
            Err(Error::DegreeTooSmall(2))
        );
        assert!(matches!(
            analyze_high_mult(&p("x^2 + y^4")),
            Err(Error::WrongMultiplicity { expected: 3, .. })
        ));
        assert_eq!(
            analyze_high_mult(&p("x^2*y^2 + x^6")),
            Err(Error::WrongMultiplicity {
                expected: 5,
                found: "4".into()
            })
        );
        assert_eq!(
            analyze_high_mult(&p("y^2*(y + x^2)")),
            Err(Error::NotSquareFree)
        );
    }

    #[test]
    fn value_sets() {
        assert_eq!(
            lambda_set(3).unwrap(),
            vec![rat(3, 4), rat(5, 6), rat(1, 1)]
        );
        assert_eq!(
            lambda_set(4).unwrap(),
            vec![rat(5, 9), rat(7, 12), rat(3, 5), rat(5, 8), rat(2, 3)]
        );
        assert_eq!(
            lambda_set(5).unwrap(),
            vec![rat(7, 16), rat(9, 20), rat(5, 11), rat(7, 15), rat(1, 2)]
        );
        assert_eq!(lambda_set(2), Err(Error::DegreeTooSmall(2)));
    }

    #[test]
    fn witnesses() {
        assert_eq!(construct_witness(4, &rat(7, 12)).unwrap(), p("x^3 + y^4"));
        assert_eq!(construct_witness(4, &rat(5, 9)).unwrap(), p("x^3 + x*y^3"));
        assert_eq!(
            construct_witness(4, &rat(2, 3)).unwrap(),
            p("x*y*(x - y) + x^4")
        );
        assert!(matches!(
            construct_witness(4, &rat(1, 2)),
            Err(Error::TargetNotRealizable { d: 4, .. })
        ));
        for d in 3..=7 {
            for t in lambda_set(d).unwrap() {
                let f = construct_witness(d, &t).unwrap();
                assert_eq!(analyze_high_mult(&f).unwrap().lct, t, "d={d} f={f}");
            }
        }
    }

    #[test]
    fn reducibility() {
        assert_eq!(reducibility_hint(&rat(5, 9), 4), Ok(true));
        assert_eq!(reducibility_hint(&rat(7, 12), 4), Ok(false));
        assert_eq!(reducibility_hint(&rat(2, 3), 4), Ok(false));
        assert!(matches!(
            reducibility_hint(&rat(1, 2), 4),
            Err(Error::NotInLambdaSet { .. })
        ));
    }
}
