//! Seeded random curves with a point of multiplicity `d - 1` at the origin
//! whose threshold is known from the construction.
//!
//! The lowest form is `x^m * R`, where `R` is a product of rational lines
//! other than `x` (each of exponent at most `(d-1)/2`) and of irreducible
//! quadratics of exponent one. The degree-`d` part is chosen so that the
//! strict transform after one blowup is smooth at every point of the first
//! exceptional curve; with that, every later blowup centre is rational.
//! Finally a random invertible integer change of coordinates and a random
//! nonzero scalar hide the normalization.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::{int, rat, BPoly, Rat};
use crate::highmult::{component_value, generic_value, transversal_value, Realization};
use crate::localinv::is_square_free;

#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub d: u32,
    pub seed: u64,
    pub case: Realization,
    /// The curve before the change of coordinates; its special line, if
    /// any, is `x = 0`.
    pub normalized: BPoly,
    pub poly: BPoly,
    pub expected_lct: Rat,
}

fn int_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    int(rng.gen_range(lo..=hi))
}

fn random_form(rng: &mut ChaCha8Rng, n: u32) -> BPoly {
    BPoly::from_terms((0..=n).map(|j| ((n - j, j), int_in(rng, -3, 3))))
}

/// `y - c x`.
fn slanted_line(c: i64) -> BPoly {
    &BPoly::y() - &BPoly::x().scale(&int(c))
}

struct LowestForm {
    poly: BPoly,
    /// Lines of exponent at least two; the top-degree part must avoid them.
    repeated_lines: Vec<BPoly>,
}

/// A product of degree `n` of distinct rational lines `y - c x` (and `x`
/// when `allow_x`), each with exponent at most `cap`, and irreducible
/// quadratics.
fn random_residual(rng: &mut ChaCha8Rng, n: u32, cap: u32, allow_x: bool) -> LowestForm {
    let mut poly = BPoly::one();
    let mut repeated_lines = Vec::new();
    let mut used: Vec<i64> = Vec::new();
    let mut x_used = !allow_x;
    let mut left = n;
    while left > 0 {
        if left >= 2 && rng.gen_bool(0.25) {
            let c = int_in(rng, -3, 3);
            let s = int_in(rng, 1, 4);
            let shifted = &BPoly::x() - &BPoly::y().scale(&c);
            let q = &shifted.pow(2) + &BPoly::monomial(0, 2, s);
            poly = &poly * &q;
            left -= 2;
            continue;
        }
        let line = if !x_used && rng.gen_bool(0.3) {
            x_used = true;
            BPoly::x()
        } else {
            let c = loop {
                let c = rng.gen_range(-5..=5);
                if !used.contains(&c) {
                    break c;
                }
            };
            used.push(c);
            slanted_line(c)
        };
        let e = rng.gen_range(1..=cap.min(left).max(1));
        if e >= 2 {
            repeated_lines.push(line.clone());
        }
        poly = &poly * &line.pow(e);
        left -= e;
    }
    LowestForm {
        poly,
        repeated_lines,
    }
}

fn avoids(top: &BPoly, lines: &[BPoly]) -> bool {
    lines.iter().all(|l| top.divide_exact(l).is_err())
}

fn random_case(rng: &mut ChaCha8Rng, d: u32) -> Realization {
    let mut cases = vec![Realization::Generic];
    cases.extend(((d - 1) / 2..=d - 2).map(|k| Realization::Component { k }));
    cases.extend((d.div_ceil(2)..=d - 1).map(|k| Realization::Transversal { k }));
    cases[rng.gen_range(0..cases.len())]
}

fn random_invertible(rng: &mut ChaCha8Rng) -> [[Rat; 2]; 2] {
    loop {
        let m: [[i64; 2]; 2] = [
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
        ];
        if m[0][0] * m[1][1] != m[0][1] * m[1][0] {
            return m.map(|row| row.map(int));
        }
    }
}

/// One instance of degree `d >= 3`, determined by `seed`.
pub fn lemma_instance(d: u32, seed: u64) -> CorpusInstance {
    assert!(d >= 3, "degree must be at least 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((d as u64) << 48));
    let case = random_case(&mut rng, d);
    let cap = (d - 1) / 2;
    let (m, is_component) = match case {
        Realization::Generic => (0, false),
        Realization::Component { k } => (k + 1, true),
        Realization::Transversal { k } => (k, false),
    };
    let normalized = loop {
        let residual = random_residual(&mut rng, d - 1 - m, cap, m == 0);
        let lowest = &BPoly::x().pow(m) * &residual.poly;
        let top = if is_component {
            let b = random_form(&mut rng, d - 1);
            if b.coeff(0, d - 1).is_zero() {
                continue;
            }
            &BPoly::x() * &b
        } else {
            let t = random_form(&mut rng, d);
            if m > 0 && t.coeff(0, d).is_zero() {
                continue;
            }
            t
        };
        if top.is_zero() || !avoids(&top, &residual.repeated_lines) {
            continue;
        }
        let f = &lowest + &top;
        if is_square_free(&f).expect("nonzero") {
            break f;
        }
    };
    let expected_lct = match case {
        Realization::Generic => generic_value(d),
        Realization::Component { k } => component_value(d, k),
        Realization::Transversal { k } => transversal_value(d, k),
    };
    let matrix = random_invertible(&mut rng);
    let scale = loop {
        let s = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        if !s.is_zero() {
            break s;
        }
    };
    let poly = normalized
        .linear_change(&matrix)
        .expect("invertible")
        .scale(&scale);
    CorpusInstance {
        d,
        seed,
        case,
        normalized,
        poly,
        expected_lct,
    }
}

/// `count` instances of degree `d`, seeds derived from `seed`.
pub fn lemma_corpus(d: u32, count: usize, seed: u64) -> Vec<CorpusInstance> {
    (0..count as u64)
        .map(|i| lemma_instance(d, seed.wrapping_mul(1_000_003).wrapping_add(i)))
        .collect()
}

/// Whether the multiplicity at the origin is `d - 1` for the instance.
pub fn has_expected_multiplicity(inst: &CorpusInstance) -> bool {
    inst.poly.multiplicity_at_origin().finite() == Some(inst.d - 1)
        && inst.poly.degree().finite() == Some(inst.d)
}
