//! Polynomial text parser.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' exponent)?
//! exponent := int | '(' int ')'
//! base     := 'x' | 'y' | int | '(' expr ')'
//! ```
//!
//! Division is accepted only by nonzero constants, so `3/2*x` reads as a
//! rational coefficient. Juxtaposition (`2x`) is a syntax error.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bpoly::BPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

/// Parses a polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BPoly> {
    let p = Parser::new(text, &['x', 'y'])?.parse_all()?;
    Ok(BPoly::from_terms(
        p.terms.into_iter().map(|(e, c)| ((e[0], e[1]), c)),
    ))
}

/// Parses a homogeneous form in `x`, `y`, `z` and dehomogenizes it by
/// setting `chart` to 1. The two remaining variables, in `x, y, z` order,
/// become `x` and `y`.
pub fn parse_projective(text: &str, chart: char) -> Result<BPoly> {
    let slot = match chart {
        'x' => 0,
        'y' => 1,
        'z' => 2,
        other => {
            return Err(Error::InvalidArgument(format!(
                "projective chart must be x, y or z, got {other:?}"
            )))
        }
    };
    let p = Parser::new(text, &['x', 'y', 'z'])?.parse_all()?;
    let mut degrees = p.terms.keys().map(|e| e[0] + e[1] + e[2]);
    if let Some(first) = degrees.next() {
        if degrees.any(|d| d != first) {
            return Err(Error::InvalidArgument(
                "projective input must be a homogeneous form in x, y, z".into(),
            ));
        }
    }
    let keep: Vec<usize> = (0..3).filter(|&k| k != slot).collect();
    Ok(BPoly::from_terms(
        p.terms
            .into_iter()
            .map(|(e, c)| ((e[keep[0]], e[keep[1]]), c)),
    ))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

/// Scratch polynomial in up to three variables.
#[derive(Clone, Default)]
struct Tri {
    terms: BTreeMap<[u32; 3], Rat>,
}

impl Tri {
    fn constant(c: Rat) -> Self {
        let mut t = Tri::default();
        t.add([0, 0, 0], c);
        t
    }

    fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        let mut t = Tri::default();
        t.add(e, Rat::one());
        t
    }

    fn add(&mut self, e: [u32; 3], c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn plus(mut self, other: Tri, sign: bool) -> Tri {
        for (e, c) in other.terms {
            self.add(e, if sign { c } else { -c });
        }
        self
    }

    fn times(&self, other: &Tri) -> Tri {
        let mut out = Tri::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }

    fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn pow(&self, mut e: u32) -> Tri {
        let mut result = Tri::constant(Rat::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        result
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn lex(text: &str, vars: &[char]) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => match vars.iter().position(|&v| v == c) {
                Some(k) => {
                    if i + 1 < bytes.len() && (bytes[i + 1] as char).is_ascii_alphanumeric() {
                        return Err(Error::Syntax {
                            pos: i + 1,
                            msg: "implicit multiplication is not allowed; use '*'".into(),
                        });
                    }
                    Tok::Var(k)
                }
                None => {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: format!("unknown variable {c:?}"),
                    })
                }
            },
            other => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser {
    fn new(text: &str, vars: &[char]) -> Result<Self> {
        Ok(Parser {
            toks: lex(text, vars)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn parse_all(mut self) -> Result<Tri> {
        if *self.peek() == Tok::End {
            return self.syntax("empty expression");
        }
        let e = self.expr()?;
        match self.peek() {
            Tok::End => Ok(e),
            Tok::RParen => self.syntax("unbalanced ')'"),
            _ => self.syntax("expected an operator; implicit multiplication is not allowed"),
        }
    }

    fn expr(&mut self) -> Result<Tri> {
        let mut sign = true;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                sign = false;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = Tri::default().plus(self.term()?, sign);
        loop {
            let sign = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            acc = acc.plus(t, sign);
        }
    }

    fn term(&mut self) -> Result<Tri> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.times(&f);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos();
                    let f = self.factor()?;
                    match f.as_constant() {
                        Some(c) if c.is_zero() => {
                            return Err(Error::Syntax {
                                pos: at,
                                msg: "division by zero".into(),
                            })
                        }
                        Some(c) => acc = acc.times(&Tri::constant(c.recip())),
                        None => {
                            return Err(Error::NonPolynomial {
                                pos: at,
                                msg: "division by a non-constant".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Tri> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.pos();
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let n = match self.bump() {
            Tok::Num(n) => n,
            _ => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "expected an integer exponent".into(),
                })
            }
        };
        if parenthesized {
            if *self.peek() != Tok::RParen {
                return self.syntax("expected ')' after exponent");
            }
            self.bump();
        }
        if negative && !n.is_zero() {
            return Err(Error::NonPolynomial {
                pos: at,
                msg: "negative exponent".into(),
            });
        }
        let e: u32 = match u32::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: format!("exponent exceeds {MAX_EXPONENT}"),
                })
            }
        };
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Tri> {
        match self.peek().clone() {
            Tok::Var(k) => {
                self.bump();
                Ok(Tri::var(k))
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Tri::constant(Rat::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.syntax("unexpected end of input"),
            _ => self.syntax("expected a variable, number or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat;

    #[test]
    fn literal_examples() {
        assert_eq!(
            parse_poly("x^2 + y^3").unwrap(),
            BPoly::from_terms([((2, 0), rat(1, 1)), ((0, 3), rat(1, 1))])
        );
        assert_eq!(
            parse_poly("3/2*x*y - x*y").unwrap(),
            BPoly::monomial(1, 1, rat(1, 2))
        );
    }

    #[test]
    fn negative_exponent_is_not_polynomial() {
        assert!(matches!(
            parse_poly("x^(-1)"),
            Err(Error::NonPolynomial { .. })
        ));
        assert!(matches!(
            parse_poly("x^-2"),
            Err(Error::NonPolynomial { .. })
        ));
        assert!(matches!(
            parse_poly("1/x"),
            Err(Error::NonPolynomial { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_poly("2x"),
            Err(Error::Syntax {
                pos: 1,
                msg: "expected an operator; implicit multiplication is not allowed".into()
            })
        );
        assert!(matches!(
            parse_poly("x + "),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse_poly("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_poly("x)"),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse_poly("z"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(
            parse_poly("xy"),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse_poly("x/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn nested_and_signed() {
        assert_eq!(
            parse_poly("-(x - y)^2").unwrap(),
            parse_poly("-x^2 + 2*x*y - y^2").unwrap()
        );
        assert_eq!(parse_poly("x^(2)").unwrap(), parse_poly("x*x").unwrap());
        assert_eq!(
            parse_poly("(1/2)/(1/4)*y").unwrap(),
            parse_poly("2*y").unwrap()
        );
    }

    #[test]
    fn projective_dehomogenization() {
        assert_eq!(
            parse_projective("x^2*z + y^3", 'z').unwrap(),
            parse_poly("x^2 + y^3").unwrap()
        );
        assert_eq!(
            parse_projective("x^2*z + y^3", 'x').unwrap(),
            parse_poly("y + x^3").unwrap()
        );
        assert!(parse_projective("x^2 + y", 'z').is_err());
        assert!(parse_projective("x", 'w').is_err());
    }
}
