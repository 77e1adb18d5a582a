//! Classification of singular points on curves of degree at most five, and
//! their log canonical thresholds.
//!
//! A germ is identified by its multiplicity, the line multiplicities of its
//! tangent cone, and its Milnor number. Within the families that occur in
//! degree at most five this triple determines the type.

mod tables;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{int, parse_poly, rat, render_rat, BPoly, Mult, Rat};
use crate::localinv::{is_square_free, milnor_number_origin, tangent_cone_pattern};

pub use tables::{instantiate, tables, NormalFormEntry, Tables, TABLES_TOML};

/// A singularity type. `T(q, r)` stands for `T(2,q,r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    T(u32, u32),
    Z11,
    Z12,
    W12,
    W13,
    N16,
}

impl Symbol {
    pub fn is_valid(self) -> bool {
        match self {
            Symbol::A(k) => k >= 1,
            Symbol::D(k) => k >= 4,
            Symbol::T(q, r) => q >= 3 && q <= r && q * r >= 2 * (q + r),
            _ => true,
        }
    }

    pub fn family(self) -> &'static str {
        match self {
            Symbol::A(_) => "A",
            Symbol::D(_) => "D",
            Symbol::E6 => "E6",
            Symbol::E7 => "E7",
            Symbol::E8 => "E8",
            Symbol::T(..) => "T",
            Symbol::Z11 => "Z11",
            Symbol::Z12 => "Z12",
            Symbol::W12 => "W12",
            Symbol::W13 => "W13",
            Symbol::N16 => "N16",
        }
    }

    pub fn mult(self) -> u32 {
        match self {
            Symbol::A(_) => 2,
            Symbol::D(_) | Symbol::E6 | Symbol::E7 | Symbol::E8 => 3,
            Symbol::T(q, _) => {
                if q == 3 {
                    3
                } else {
                    4
                }
            }
            Symbol::Z11 | Symbol::Z12 | Symbol::W12 | Symbol::W13 => 4,
            Symbol::N16 => 5,
        }
    }

    pub fn mu(self) -> u32 {
        match self {
            Symbol::A(k) | Symbol::D(k) => k,
            Symbol::E6 => 6,
            Symbol::E7 => 7,
            Symbol::E8 => 8,
            Symbol::T(q, r) => q + r + 1,
            Symbol::Z11 => 11,
            Symbol::Z12 | Symbol::W12 => 12,
            Symbol::W13 => 13,
            Symbol::N16 => 16,
        }
    }

    pub fn lct(self) -> Rat {
        match self {
            Symbol::A(k) => rat(k as i64 + 3, 2 * (k as i64 + 1)),
            Symbol::D(k) => rat(k as i64, 2 * (k as i64 - 1)),
            Symbol::E6 => rat(7, 12),
            Symbol::E7 => rat(5, 9),
            Symbol::E8 => rat(8, 15),
            Symbol::T(..) => rat(1, 2),
            Symbol::Z11 => rat(7, 15),
            Symbol::Z12 => rat(5, 11),
            Symbol::W12 => rat(9, 20),
            Symbol::W13 => rat(7, 16),
            Symbol::N16 => rat(2, 5),
        }
    }

    /// Line multiplicities of the tangent cone of the normal form.
    pub fn cone_pattern(self) -> Vec<u32> {
        match self {
            Symbol::A(1) => vec![1, 1],
            Symbol::A(_) => vec![2],
            Symbol::D(4) => vec![1, 1, 1],
            Symbol::D(_) => vec![2, 1],
            Symbol::E6 | Symbol::E7 | Symbol::E8 | Symbol::T(3, _) => vec![3],
            Symbol::T(4, 4) => vec![1, 1, 1, 1],
            Symbol::T(4, _) => vec![2, 1, 1],
            Symbol::T(..) => vec![2, 2],
            Symbol::Z11 | Symbol::Z12 => vec![3, 1],
            Symbol::W12 | Symbol::W13 => vec![4],
            Symbol::N16 => vec![1; 5],
        }
    }

    /// Number of free coefficients in the normal form.
    pub fn parameter_count(self) -> usize {
        match self {
            Symbol::A(_) | Symbol::D(_) | Symbol::E6 | Symbol::E7 | Symbol::E8 => 0,
            Symbol::N16 => 3,
            _ => 1,
        }
    }

    fn entry(self) -> &'static NormalFormEntry {
        tables()
            .normal_form(self.family())
            .expect("every family has a row")
    }

    /// Whether the parameters stay inside the family's stratum.
    pub fn admits(self, params: &[Rat]) -> bool {
        if params.len() != self.parameter_count() {
            return false;
        }
        match self {
            Symbol::T(3, 6) => {
                let a = &params[0];
                int(4) * a * a * a + int(27) != Rat::zero()
            }
            Symbol::T(4, 4) => &params[0] * &params[0] != int(4),
            Symbol::T(..) => !params[0].is_zero(),
            Symbol::N16 => {
                let quintic = self
                    .normal_form(params)
                    .expect("admissible shape")
                    .homogeneous_component(5);
                is_square_free(&quintic).expect("nonzero quintic")
            }
            _ => true,
        }
    }

    /// The normal form at the given parameters (restrictions not checked).
    pub fn normal_form(self, params: &[Rat]) -> Result<BPoly> {
        if !self.is_valid() {
            return Err(Error::InvalidArgument(format!(
                "{self} is not a valid symbol"
            )));
        }
        if params.len() != self.parameter_count() {
            return Err(Error::InvalidArgument(format!(
                "{self} takes {} parameters",
                self.parameter_count()
            )));
        }
        let vars: Vec<(&str, i64)> = match self {
            Symbol::A(k) | Symbol::D(k) => vec![("k", k as i64)],
            Symbol::T(q, r) => vec![("q", q as i64), ("r", r as i64)],
            _ => Vec::new(),
        };
        let mut text = String::new();
        for ch in instantiate(&self.entry().form, &vars).chars() {
            match ch {
                'a' | 'b' | 'c' => {
                    let value = &params[(ch as u8 - b'a') as usize];
                    text.push_str(&format!("({})", render_rat(value)));
                }
                _ => text.push(ch),
            }
        }
        parse_poly(&text)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::A(k) => write!(f, "A{k}"),
            Symbol::D(k) => write!(f, "D{k}"),
            Symbol::T(q, r) => write!(f, "T(2,{q},{r})"),
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown singularity symbol {s:?}"));
        let t = s.trim();
        let sym = match t {
            "E6" => Symbol::E6,
            "E7" => Symbol::E7,
            "E8" => Symbol::E8,
            "Z11" => Symbol::Z11,
            "Z12" => Symbol::Z12,
            "W12" => Symbol::W12,
            "W13" => Symbol::W13,
            "N16" => Symbol::N16,
            _ => {
                if let Some(k) = t.strip_prefix('A') {
                    Symbol::A(k.parse().map_err(|_| bad())?)
                } else if let Some(k) = t.strip_prefix('D') {
                    Symbol::D(k.parse().map_err(|_| bad())?)
                } else if let Some(inner) = t.strip_prefix("T(").and_then(|r| r.strip_suffix(')')) {
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    match parts.as_slice() {
                        ["2", q, r] => {
                            Symbol::T(q.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?)
                        }
                        _ => return Err(bad()),
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        if sym.is_valid() {
            Ok(sym)
        } else {
            Err(bad())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityClass {
    pub symbol: Symbol,
    pub mult: u32,
    pub mu: u32,
    pub lct: Rat,
}

impl From<Symbol> for SingularityClass {
    fn from(symbol: Symbol) -> Self {
        SingularityClass {
            symbol,
            mult: symbol.mult(),
            mu: symbol.mu(),
            lct: symbol.lct(),
        }
    }
}

/// A threshold, or `+inf` at points off the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LctValue {
    Finite(Rat),
    Infinite,
}

impl fmt::Display for LctValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LctValue::Finite(r) => f.write_str(&render_rat(r)),
            LctValue::Infinite => f.write_str("inf"),
        }
    }
}

fn check_degree(d: u32) -> Result<()> {
    if (1..=5).contains(&d) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(d.to_string()))
    }
}

/// Singularity types occurring on reduced curves of degree `d`.
pub fn allowed_types(d: u32) -> Result<Vec<Symbol>> {
    check_degree(d)?;
    Ok(tables().types(d).expect("row present").to_vec())
}

/// Thresholds occurring on reduced curves of degree `d`, ascending.
pub fn table1_values(d: u32) -> Result<Vec<Rat>> {
    let mut set: BTreeSet<Rat> = allowed_types(d)?.into_iter().map(Symbol::lct).collect();
    set.insert(Rat::one());
    Ok(set.into_iter().collect())
}

/// The symbol for a classification key, if the key is in the table.
pub fn lookup(mult: u32, pattern: &[u32], mu: u32) -> Option<Symbol> {
    let sym = match (mult, pattern, mu) {
        (2, _, k) if k >= 1 => Symbol::A(k),
        (3, [1, 1, 1], 4) => Symbol::D(4),
        (3, [2, 1], k) if k >= 5 => Symbol::D(k),
        (3, [3], 6) => Symbol::E6,
        (3, [3], 7) => Symbol::E7,
        (3, [3], 8) => Symbol::E8,
        (3, [3], 10..=14) => Symbol::T(3, mu - 4),
        (4, [1, 1, 1, 1], 9) => Symbol::T(4, 4),
        (4, [2, 1, 1], 10) => Symbol::T(4, 5),
        (4, [2, 1, 1], 11) => Symbol::T(4, 6),
        (4, [2, 2], 11) => Symbol::T(5, 5),
        (4, [2, 2], 12) => Symbol::T(5, 6),
        (4, [2, 2], 13) => Symbol::T(6, 6),
        (4, [3, 1], 11) => Symbol::Z11,
        (4, [3, 1], 12) => Symbol::Z12,
        (4, [4], 12) => Symbol::W12,
        (4, [4], 13) => Symbol::W13,
        (5, [1, 1, 1, 1, 1], 16) => Symbol::N16,
        _ => return None,
    };
    (sym.mult() == mult && sym.mu() == mu).then_some(sym)
}

pub fn classify_singularity(f: &BPoly) -> Result<SingularityClass> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    if !is_square_free(f)? {
        return Err(Error::NotSquareFree);
    }
    let mult = f.multiplicity_at_origin().finite().expect("nonzero");
    if mult < 2 {
        return Err(Error::NotSingular);
    }
    let pattern = tangent_cone_pattern(f)?;
    let mu = milnor_number_origin(f)?;
    let not_classifiable = || Error::NotClassifiable {
        mult,
        pattern: pattern.to_string(),
        mu: mu.to_string(),
    };
    let Mult::Finite(mu_value) = mu else {
        return Err(not_classifiable());
    };
    lookup(mult, pattern.entries(), mu_value)
        .map(SingularityClass::from)
        .ok_or_else(not_classifiable)
}

/// Threshold of a curve of degree at most five at the rational point `p`.
pub fn lct_low_degree(f: &BPoly, p: (&Rat, &Rat)) -> Result<LctValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree().finite().expect("nonzero");
    if d > 5 {
        return Err(Error::DegreeOutOfRange(d.to_string()));
    }
    if !is_square_free(f)? {
        return Err(Error::NotSquareFree);
    }
    let g = f.translate(p);
    Ok(match g.multiplicity_at_origin() {
        Mult::Finite(0) => LctValue::Infinite,
        Mult::Finite(1) => LctValue::Finite(Rat::one()),
        _ => LctValue::Finite(classify_singularity(&g)?.lct),
    })
}

fn draw_parameter(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Parameters for `symbol`, drawn deterministically from `seed` and
/// redrawn until the family's restriction holds.
pub fn sample_parameters(symbol: Symbol, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let params: Vec<Rat> = (0..symbol.parameter_count())
            .map(|_| draw_parameter(&mut rng))
            .collect();
        if symbol.admits(&params) {
            return params;
        }
    }
}

/// A member of the normal-form family of `symbol`, deterministic in `seed`.
pub fn sample_normal_form(symbol: Symbol, seed: u64) -> BPoly {
    symbol
        .normal_form(&sample_parameters(symbol, seed))
        .expect("valid symbol")
}
