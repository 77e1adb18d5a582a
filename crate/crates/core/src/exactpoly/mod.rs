//! Exact arithmetic: rationals, sparse bivariate polynomials, coordinate
//! changes, gcd, square-free and irreducible factorization.

mod bpoly;
mod factorization;
mod gcd;
mod parse;
mod rat;
mod upoly;
mod zfactor;

pub use bpoly::{BPoly, Degree, Monomial, Mult};
pub use factorization::{
    factor_binary_form, squarefree_decomposition, BinaryForm, FactorGrade, Factorization,
};
pub use gcd::gcd_bivariate;
pub use parse::{parse_poly, parse_projective};
pub use rat::{int, parse_rat, rat, render_rat, Rat};
pub use upoly::UPoly;
pub use zfactor::factor_rational;

use crate::error::Result;

/// Sum of the terms of `f` of total degree `k`.
pub fn homogeneous_part(f: &BPoly, k: u32) -> BinaryForm {
    BinaryForm::new(f.homogeneous_component(k), k).expect("component is homogeneous")
}

pub fn multiplicity_at_origin(f: &BPoly) -> Mult {
    f.multiplicity_at_origin()
}

/// Weighted order of `f` and its weighted-homogeneous leading part.
pub fn weighted_order(f: &BPoly, w: (&Rat, &Rat)) -> Result<(Rat, BPoly)> {
    f.weighted_order(w)
}

/// `f(x + p.0, y + p.1)`.
pub fn translate_affine(f: &BPoly, p: (&Rat, &Rat)) -> BPoly {
    f.translate(p)
}

/// `f` composed with `(x, y) -> M (x, y)`.
pub fn linear_change(f: &BPoly, m: &[[Rat; 2]; 2]) -> Result<BPoly> {
    f.linear_change(m)
}

pub fn divide_exact(f: &BPoly, g: &BPoly) -> Result<BPoly> {
    f.divide_exact(g)
}
