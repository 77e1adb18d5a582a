//! Built-in cross-checks between the closed-form analysis, the resolution
//! engine, the local invariants and the embedded tables.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    allowed_types, classify_singularity, sample_normal_form, table1_values, tables, Symbol,
};
use crate::corpus::{lemma_corpus, CorpusInstance};
use crate::error::{Error, Result};
use crate::exactpoly::{int, parse_poly, rat, BPoly, Mult, Rat};
use crate::highmult::{analyze_high_mult, construct_witness, lambda_set, Realization};
use crate::localinv::{
    intersection_multiplicity_origin, milnor_number_origin, weighted_lct_upper_bound,
};
use crate::resolution::{
    lct_from_tree, log_pullback_coefficients, resolve_over_origin, ResolutionTree, DEFAULT_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Fast,
    Full,
}

impl Scope {
    fn pick(self, fast: usize, full: usize) -> usize {
        match self {
            Scope::Fast => fast,
            Scope::Full => full,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub total_checked: usize,
}

fn fail(what: impl Into<String>) -> Error {
    Error::SelfTestFailure(what.into())
}

fn expect_eq<T: PartialEq + std::fmt::Display>(
    instance: &BPoly,
    what: &str,
    want: T,
    got: T,
) -> Result<()> {
    if want == got {
        Ok(())
    } else {
        Err(fail(format!(
            "{what} for {instance}: expected {want}, got {got}"
        )))
    }
}

fn table_rows() -> Result<usize> {
    for d in 1..=5 {
        let mut want = tables().thresholds(d).expect("row").to_vec();
        want.sort();
        if table1_values(d)? != want {
            return Err(fail(format!(
                "threshold row {d} differs from the embedded table"
            )));
        }
    }
    Ok(5)
}

fn oracle_agreement(scope: Scope, seed: u64) -> Result<(usize, Vec<CorpusInstance>)> {
    let per_degree = scope.pick(25, 100);
    let mut all = Vec::new();
    for d in 3..=6 {
        for inst in lemma_corpus(d, per_degree, seed) {
            let closed = analyze_high_mult(&inst.poly)?.lct;
            let tree = resolve_over_origin(&inst.poly, DEFAULT_CAP)?;
            let oracle = lct_from_tree(&tree)?;
            expect_eq(&inst.poly, "closed form vs resolution", &oracle, &closed)?;
            expect_eq(
                &inst.poly,
                "constructed threshold",
                &inst.expected_lct,
                &closed,
            )?;
            all.push(inst);
        }
    }
    Ok((all.len(), all))
}

fn realization(scope: Scope, corpus: &[CorpusInstance]) -> Result<usize> {
    let top = match scope {
        Scope::Fast => 5,
        Scope::Full => 7,
    };
    let mut checked = 0;
    for d in 3..=top {
        for target in lambda_set(d)? {
            let f = construct_witness(d, &target)?;
            expect_eq(
                &f,
                "witness threshold",
                &target,
                &analyze_high_mult(&f)?.lct,
            )?;
            checked += 1;
        }
    }
    for inst in corpus {
        let set = lambda_set(inst.d)?;
        if !set.contains(&inst.expected_lct) {
            return Err(fail(format!(
                "{} has threshold outside the value set",
                inst.poly
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

fn samples(scope: Scope, seed: u64) -> Result<Vec<(Symbol, BPoly)>> {
    let per_symbol = scope.pick(3, 50) as u64;
    let mut out = Vec::new();
    for s in allowed_types(5)? {
        for i in 0..per_symbol {
            out.push((
                s,
                sample_normal_form(s, seed.wrapping_mul(7919).wrapping_add(i)),
            ));
        }
    }
    Ok(out)
}

fn normal_form_invariants(samples: &[(Symbol, BPoly)]) -> Result<usize> {
    for (s, f) in samples {
        let mult = f.multiplicity_at_origin();
        expect_eq(f, "multiplicity", Mult::Finite(s.mult()), mult)?;
        expect_eq(
            f,
            "Milnor number",
            Mult::Finite(s.mu()),
            milnor_number_origin(f)?,
        )?;
    }
    Ok(samples.len())
}

fn classifier_round_trip(samples: &[(Symbol, BPoly)]) -> Result<usize> {
    for (s, f) in samples {
        let got = classify_singularity(f)?.symbol;
        expect_eq(f, "classification", *s, got)?;
    }
    for a in [2, -2] {
        let degenerate = Symbol::T(4, 4).normal_form(&[int(a)])?;
        if classify_singularity(&degenerate) != Err(Error::NotSquareFree) {
            return Err(fail(format!("{degenerate} should not be square-free")));
        }
    }
    Ok(samples.len() + 2)
}

fn random_weight(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

fn bound_checks(
    scope: Scope,
    seed: u64,
    corpus: &[CorpusInstance],
    samples: &[(Symbol, BPoly)],
) -> Result<usize> {
    let weights_per_instance = scope.pick(5, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0b0);
    let mut cases: Vec<(&BPoly, Rat, u32, Option<u32>)> = corpus
        .iter()
        .map(|i| (&i.poly, i.expected_lct.clone(), i.d - 1, Some(i.d)))
        .collect();
    cases.extend(samples.iter().map(|(s, f)| (f, s.lct(), s.mult(), None)));
    for (f, lct, mult, degree) in &cases {
        let m = int((*mult).into());
        if *lct < Rat::one() / &m || *lct > int(2) / &m {
            return Err(fail(format!(
                "{f}: threshold {lct} outside [1/mult, 2/mult]"
            )));
        }
        if let Some(d) = degree {
            if *lct > rat(2, (*d - 1).into()) {
                return Err(fail(format!("{f}: threshold {lct} above 2/(d-1)")));
            }
        }
        for _ in 0..weights_per_instance {
            let w = (random_weight(&mut rng), random_weight(&mut rng));
            let bound = weighted_lct_upper_bound(f, (&w.0, &w.1))?;
            if *lct > bound.b {
                return Err(fail(format!(
                    "{f}: threshold {lct} above weighted bound {}",
                    bound.b
                )));
            }
        }
    }
    Ok(cases.len())
}

fn random_germ(rng: &mut ChaCha8Rng) -> BPoly {
    let deg = rng.gen_range(1..=4);
    let mut f = BPoly::zero();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if i + j > 0 && rng.gen_bool(0.4) {
                f = &f + &BPoly::monomial(i, j, int(rng.gen_range(-3..=3)));
            }
        }
    }
    if f.is_zero() {
        BPoly::x()
    } else {
        f
    }
}

fn fulton_properties(scope: Scope, seed: u64) -> Result<usize> {
    let pairs = scope.pick(100, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf017);
    for _ in 0..pairs {
        let f = random_germ(&mut rng);
        let g = random_germ(&mut rng);
        let h = random_germ(&mut rng);
        let fg = intersection_multiplicity_origin(&f, &g)?;
        let gf = intersection_multiplicity_origin(&g, &f)?;
        expect_eq(&f, "symmetry", fg, gf)?;
        let fh = intersection_multiplicity_origin(&f, &h)?;
        let fgh = intersection_multiplicity_origin(&f, &(&g * &h))?;
        if fg.is_finite() && fh.is_finite() {
            expect_eq(&f, "additivity", fg + fh, fgh)?;
        }
    }
    for s in ["y - x^2", "x + y^3", "2*x - 3*y + x*y"] {
        let f = parse_poly(s)?;
        expect_eq(
            &f,
            "smooth Milnor number",
            Mult::Finite(0),
            milnor_number_origin(&f)?,
        )?;
    }
    for k in 1..=12 {
        let f = sample_normal_form(Symbol::A(k), seed);
        expect_eq(
            &f,
            "Milnor number",
            Mult::Finite(k),
            milnor_number_origin(&f)?,
        )?;
    }
    Ok(pairs + 15)
}

/// Divisors over the chart-two origin of the first blowup, with their
/// depth below it.
pub fn chain_over_special_point(tree: &ResolutionTree) -> Vec<(usize, usize)> {
    let Some(q) = tree
        .nodes
        .iter()
        .find(|n| n.parent == Some(1) && n.center.coords.0.ends_with('\''))
    else {
        return Vec::new();
    };
    let qid = q.divisor.id;
    tree.nodes
        .iter()
        .filter_map(|n| {
            let path = tree.ancestry(n.divisor.id);
            path.iter()
                .position(|&p| p == qid)
                .map(|i| (n.divisor.id, path.len() - i))
        })
        .collect()
}

fn ledger_checks(corpus: &[CorpusInstance]) -> Result<usize> {
    let cusp = parse_poly("x^2 + y^3")?;
    let tree = resolve_over_origin(&cusp, DEFAULT_CAP)?;
    let ledger: Vec<(u32, u32)> = tree.divisors().map(|e| (e.m, e.a)).collect();
    if ledger != [(2, 1), (3, 2), (6, 4)] || lct_from_tree(&tree)? != rat(5, 6) {
        return Err(fail(format!("cusp ledger {ledger:?}")));
    }
    let mut checked = 1;
    for inst in corpus {
        let Realization::Component { k } = inst.case else {
            continue;
        };
        let d = inst.d;
        let tree = resolve_over_origin(&inst.normalized, DEFAULT_CAP)?;
        let lambda = inst.expected_lct.clone();
        let coeffs = log_pullback_coefficients(&tree, &lambda)?;
        let chain = chain_over_special_point(&tree);
        if chain.len() != k as usize {
            return Err(fail(format!(
                "{}: {} blowups over the special point, expected {k}",
                inst.normalized,
                chain.len()
            )));
        }
        for (id, j) in chain {
            let j = j as i64;
            let want = &lambda * int(j * d as i64 + 1) - int(2 * j);
            expect_eq(
                &inst.normalized,
                "log pullback coefficient",
                &want,
                &coeffs[&id],
            )?;
        }
        checked += 1;
    }
    Ok(checked)
}

/// Runs every check; the first failure aborts with the offending instance.
pub fn selftest(scope: Scope, seed: u64) -> Result<SelfTestReport> {
    let mut criteria = Vec::new();
    criteria.push(CriterionResult {
        name: "threshold table",
        checked: table_rows()?,
    });
    let (n, corpus) = oracle_agreement(scope, seed)?;
    criteria.push(CriterionResult {
        name: "closed form vs resolution",
        checked: n,
    });
    criteria.push(CriterionResult {
        name: "value set realization",
        checked: realization(scope, &corpus)?,
    });
    let samples = samples(scope, seed)?;
    criteria.push(CriterionResult {
        name: "normal form invariants",
        checked: normal_form_invariants(&samples)?,
    });
    criteria.push(CriterionResult {
        name: "classifier round trip",
        checked: classifier_round_trip(&samples)?,
    });
    criteria.push(CriterionResult {
        name: "threshold bounds",
        checked: bound_checks(scope, seed, &corpus, &samples)?,
    });
    criteria.push(CriterionResult {
        name: "intersection multiplicity",
        checked: fulton_properties(scope, seed)?,
    });
    criteria.push(CriterionResult {
        name: "resolution ledger",
        checked: ledger_checks(&corpus)?,
    });
    let total_checked = criteria.iter().map(|c| c.checked).sum();
    Ok(SelfTestReport {
        seed,
        criteria,
        total_checked,
    })
}
