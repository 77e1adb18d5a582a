//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use plane_lct::classify::{
    allowed_types, classify_singularity, sample_normal_form, table1_values, Symbol,
};
use plane_lct::corpus::{lemma_corpus, CorpusInstance};
use plane_lct::exactpoly::{int, parse_poly, rat, BPoly, Mult, Rat};
use plane_lct::highmult::{analyze_high_mult, construct_witness, lambda_set, Realization};
use plane_lct::localinv::{
    intersection_multiplicity_origin, milnor_number_origin, weighted_lct_upper_bound,
};
use plane_lct::resolution::{
    lct_from_tree, log_pullback_coefficients, resolve_over_origin, ResolutionTree, DEFAULT_CAP,
};
use plane_lct::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(text: &str) -> Rat {
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    rat(n.parse().unwrap(), d.parse().unwrap())
}

fn resolution_lct(f: &BPoly) -> Rat {
    lct_from_tree(&resolve_over_origin(f, DEFAULT_CAP).unwrap()).unwrap()
}

fn corpus() -> Vec<CorpusInstance> {
    (3..=6).flat_map(|d| lemma_corpus(d, 100, 20240)).collect()
}

/// Every normal-form row, with representatives of the open-ended families.
fn normal_form_symbols() -> Vec<Symbol> {
    let mut out = allowed_types(5).unwrap();
    out.extend([
        Symbol::A(20),
        Symbol::D(15),
        Symbol::T(3, 12),
        Symbol::T(4, 9),
        Symbol::T(5, 8),
        Symbol::T(7, 7),
    ]);
    out
}

/// `(mult, mu, lct)` columns of the normal-form table.
fn table_columns(s: Symbol) -> (u32, u32, Rat) {
    match s {
        Symbol::A(k) => (2, k, rat((k + 3).into(), (2 * (k + 1)).into())),
        Symbol::D(k) => (3, k, rat(k.into(), (2 * (k - 1)).into())),
        Symbol::E6 => (3, 6, r("7/12")),
        Symbol::E7 => (3, 7, r("5/9")),
        Symbol::E8 => (3, 8, r("8/15")),
        Symbol::T(3, rr) => (3, rr + 4, r("1/2")),
        Symbol::T(q, rr) => (4, q + rr + 1, r("1/2")),
        Symbol::Z11 => (4, 11, r("7/15")),
        Symbol::Z12 => (4, 12, r("5/11")),
        Symbol::W12 => (4, 12, r("9/20")),
        Symbol::W13 => (4, 13, r("7/16")),
        Symbol::N16 => (5, 16, r("2/5")),
    }
}

fn samples() -> Vec<(Symbol, BPoly)> {
    normal_form_symbols()
        .into_iter()
        .flat_map(|s| (0..50u64).map(move |i| (s, sample_normal_form(s, 7000 + i))))
        .collect()
}

fn table_reproduction() -> Outcome {
    let rows: [&[&str]; 5] = [
        &["1"],
        &["1"],
        &["1", "5/6", "3/4", "2/3"],
        &[
            "1", "5/6", "3/4", "7/10", "2/3", "9/14", "5/8", "3/5", "7/12", "5/9", "1/2",
        ],
        &[
            "1", "5/6", "3/4", "7/10", "2/3", "9/14", "5/8", "11/18", "3/5", "13/22", "7/12",
            "15/26", "4/7", "9/16", "5/9", "11/20", "6/11", "8/15", "1/2", "7/15", "5/11", "9/20",
            "7/16", "2/5",
        ],
    ];
    for (i, row) in rows.iter().enumerate() {
        let d = i as u32 + 1;
        let want: BTreeSet<Rat> = row.iter().map(|t| r(t)).collect();
        let got: BTreeSet<Rat> = table1_values(d).unwrap().into_iter().collect();
        check(got == want, || format!("row {d} differs"))?;
    }
    check(table1_values(5).unwrap().len() == 24, || {
        "row 5 length".into()
    })?;
    Ok("5 rows, 24 values at d = 5".into())
}

fn theorem_vs_oracle() -> Outcome {
    let corpus = corpus();
    for inst in &corpus {
        let closed = analyze_high_mult(&inst.poly).unwrap().lct;
        let oracle = resolution_lct(&inst.poly);
        check(closed == oracle, || {
            format!("{}: closed form {closed}, resolution {oracle}", inst.poly)
        })?;
        check(closed == inst.expected_lct, || {
            format!(
                "{}: expected {}, got {closed}",
                inst.poly, inst.expected_lct
            )
        })?;
    }
    Ok(format!("{} instances, d = 3..6", corpus.len()))
}

fn value_set_formula(d: u32) -> BTreeSet<Rat> {
    let mut set = BTreeSet::from([rat(2, (d - 1).into())]);
    for k in (d - 1) / 2..=d - 2 {
        set.insert(rat((2 * k + 1).into(), (k * d + 1).into()));
    }
    for k in d.div_ceil(2)..=d - 1 {
        set.insert(rat((2 * k + 1).into(), (k * d).into()));
    }
    set
}

fn value_set_realization() -> Outcome {
    let mut witnesses = 0;
    for d in 3..=7 {
        let set = lambda_set(d).unwrap();
        let as_set: BTreeSet<Rat> = set.iter().cloned().collect();
        check(as_set == value_set_formula(d), || {
            format!("value set for d = {d}")
        })?;
        for target in &set {
            let f = construct_witness(d, target).unwrap();
            check(f.degree().finite() == Some(d), || {
                format!("{f} has wrong degree")
            })?;
            let got = analyze_high_mult(&f).unwrap().lct;
            check(&got == target, || format!("witness {f}: {got} vs {target}"))?;
            let oracle = resolution_lct(&f);
            check(&oracle == target, || {
                format!("witness {f}: resolution {oracle}")
            })?;
            witnesses += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut random = 0;
    for d in 3..=7 {
        let set = value_set_formula(d);
        for inst in lemma_corpus(d, 20, rng.gen()) {
            let lct = analyze_high_mult(&inst.poly).unwrap().lct;
            check(set.contains(&lct), || {
                format!("{}: {lct} not in the set", inst.poly)
            })?;
            random += 1;
        }
    }
    Ok(format!("{witnesses} witnesses, {random} random instances"))
}

fn normal_form_invariants(samples: &[(Symbol, BPoly)]) -> Outcome {
    let mut lct_checked = 0;
    for (i, (s, f)) in samples.iter().enumerate() {
        let (mult, mu, lct) = table_columns(*s);
        check(f.multiplicity_at_origin() == Mult::Finite(mult), || {
            format!("{s} sample {f}: multiplicity")
        })?;
        let got = milnor_number_origin(f).unwrap();
        check(got == Mult::Finite(mu), || {
            format!("{s} sample {f}: mu {got}, want {mu}")
        })?;
        if i % 50 == 0 {
            let oracle = resolution_lct(f);
            check(oracle == lct, || {
                format!("{s} sample {f}: resolution lct {oracle}")
            })?;
            lct_checked += 1;
        }
    }
    Ok(format!(
        "{} rows x 50 samples, {lct_checked} thresholds by resolution",
        samples.len() / 50
    ))
}

fn has_rational_root(coeffs: &[i64]) -> bool {
    let lead = *coeffs.last().unwrap();
    let constant = coeffs[0];
    let divisors = |n: i64| (1..=n.abs()).filter(move |k| n % k == 0);
    for p in divisors(constant) {
        for q in divisors(lead) {
            for sign in [1, -1] {
                let t = rat(sign * p, q);
                let value = coeffs
                    .iter()
                    .rev()
                    .fold(Rat::zero(), |acc, c| acc * &t + int(*c));
                if value.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn classifier_round_trip(samples: &[(Symbol, BPoly)]) -> Outcome {
    let table: BTreeSet<String> = allowed_types(5)
        .unwrap()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut checked = 0;
    for (s, f) in samples {
        if !table.contains(&s.to_string()) {
            continue;
        }
        let got = classify_singularity(f).unwrap().symbol;
        check(got == *s, || {
            format!("{f}: classified as {got}, sampled from {s}")
        })?;
        checked += 1;
    }
    for a in [2, -2] {
        let f = Symbol::T(4, 4).normal_form(&[int(a)]).unwrap();
        check(
            classify_singularity(&f) == Err(Error::NotSquareFree),
            || format!("{f} should be rejected as not square-free"),
        )?;
    }
    check(!has_rational_root(&[27, 0, 0, 4]), || {
        "4a^3 + 27 has a rational root".into()
    })?;
    Ok(format!("{checked} samples, boundary cases rejected"))
}

fn bound_properties(samples: &[(Symbol, BPoly)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut cases: Vec<(BPoly, Rat, u32, Option<u32>)> = corpus()
        .into_iter()
        .map(|i| (i.poly, i.expected_lct, i.d - 1, Some(i.d)))
        .collect();
    cases.extend(samples.iter().map(|(s, f)| {
        let (mult, _, lct) = table_columns(*s);
        (f.clone(), lct, mult, None)
    }));
    for (f, lct, mult, degree) in &cases {
        let m = int((*mult).into());
        check(Rat::one() / &m <= *lct && *lct <= int(2) / &m, || {
            format!("{f}: {lct} outside [1/{mult}, 2/{mult}]")
        })?;
        if let Some(d) = degree {
            check(*lct <= rat(2, (*d - 1).into()), || {
                format!("{f}: {lct} above 2/(d-1)")
            })?;
        }
        for _ in 0..20 {
            let w1 = rat(rng.gen_range(1..=12), rng.gen_range(1..=5));
            let w2 = rat(rng.gen_range(1..=12), rng.gen_range(1..=5));
            let b = weighted_lct_upper_bound(f, (&w1, &w2)).unwrap().b;
            check(*lct <= b, || {
                format!("{f}: {lct} above bound {b} for ({w1}, {w2})")
            })?;
        }
    }
    Ok(format!("{} instances x 20 weights", cases.len()))
}

fn random_germ(rng: &mut ChaCha8Rng) -> BPoly {
    let deg = rng.gen_range(1..=4u32);
    let mut f = BPoly::zero();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if i + j > 0 && rng.gen_bool(0.35) {
                f = &f + &BPoly::monomial(i, j, int(rng.gen_range(-4..=4)));
            }
        }
    }
    if f.is_zero() {
        BPoly::y()
    } else {
        f
    }
}

fn fulton_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut finite = 0;
    for _ in 0..600 {
        let (f, g, h) = (
            random_germ(&mut rng),
            random_germ(&mut rng),
            random_germ(&mut rng),
        );
        let fg = intersection_multiplicity_origin(&f, &g).unwrap();
        let gf = intersection_multiplicity_origin(&g, &f).unwrap();
        check(fg == gf, || format!("I({f}, {g}) = {fg} but reversed {gf}"))?;
        let fh = intersection_multiplicity_origin(&f, &h).unwrap();
        let fgh = intersection_multiplicity_origin(&f, &(&g * &h)).unwrap();
        check(fg + fh == fgh, || {
            format!("additivity fails for {f}; {g}; {h}")
        })?;
        if fgh.is_finite() {
            finite += 1;
        }
    }
    for text in ["x", "y - x^2", "3*x - y + x*y^4", "x + y^3 + x^2*y"] {
        let f = parse_poly(text).unwrap();
        check(milnor_number_origin(&f).unwrap() == Mult::Finite(0), || {
            format!("{text} is smooth")
        })?;
    }
    for k in 1..=20 {
        let f = sample_normal_form(Symbol::A(k), 0);
        check(milnor_number_origin(&f).unwrap() == Mult::Finite(k), || {
            format!("mu of {f}")
        })?;
    }
    Ok(format!("600 triples ({finite} finite), 4 smooth, A1..A20"))
}

/// Divisors above the chart-two origin of the first blowup, each with its
/// depth counted from one.
fn chain_over_special_point(tree: &ResolutionTree) -> Vec<(usize, i64)> {
    let roots: Vec<usize> = tree
        .nodes
        .iter()
        .filter(|n| n.parent == Some(1) && n.center.coords.0.ends_with('\''))
        .map(|n| n.divisor.id)
        .collect();
    let [q] = roots.as_slice() else {
        return Vec::new();
    };
    tree.nodes
        .iter()
        .filter_map(|n| {
            let path = tree.ancestry(n.divisor.id);
            let at = path.iter().position(|p| p == q)?;
            Some((n.divisor.id, (path.len() - at) as i64))
        })
        .collect()
}

fn resolution_ledger() -> Outcome {
    let cusp = parse_poly("x^2 + y^3").unwrap();
    let tree = resolve_over_origin(&cusp, DEFAULT_CAP).unwrap();
    let ledger: Vec<(u32, u32)> = tree.divisors().map(|e| (e.m, e.a)).collect();
    check(ledger == [(2, 1), (3, 2), (6, 4)], || {
        format!("cusp ledger {ledger:?}")
    })?;
    check(lct_from_tree(&tree).unwrap() == r("5/6"), || {
        "cusp threshold".into()
    })?;
    let mut instances = 0;
    let mut coefficients = 0;
    for inst in corpus() {
        let Realization::Component { k } = inst.case else {
            continue;
        };
        let d = inst.d as i64;
        let lambda = inst.expected_lct.clone();
        let tree = resolve_over_origin(&inst.normalized, DEFAULT_CAP).unwrap();
        let coeffs = log_pullback_coefficients(&tree, &lambda).unwrap();
        let chain = chain_over_special_point(&tree);
        check(chain.len() == k as usize, || {
            format!(
                "{}: chain of length {}, want {k}",
                inst.normalized,
                chain.len()
            )
        })?;
        for (id, j) in chain {
            let e = tree.divisor(id).unwrap();
            check(e.m as i64 == j * d + 1 && e.a as i64 == 2 * j, || {
                format!("{}: E{id} has (m, a) = ({}, {})", inst.normalized, e.m, e.a)
            })?;
            let want = &lambda * int(j * d + 1) - int(2 * j);
            check(coeffs[&id] == want, || {
                format!(
                    "{}: coefficient of E{id} is {}",
                    inst.normalized, coeffs[&id]
                )
            })?;
            coefficients += 1;
        }
        instances += 1;
    }
    check(instances > 0, || "no component-case instances".into())?;
    Ok(format!(
        "cusp, {instances} component-case instances, {coefficients} coefficients"
    ))
}

fn run(n: usize, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
        other => other,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {n} {name}: {tag} ({detail}; {elapsed:.2?})");
    outcome.is_ok()
}

fn main() {
    let samples = samples();
    let secs = Duration::from_secs;
    let results = [
        run(1, "threshold table", secs(1), table_reproduction),
        run(2, "closed form vs resolution", secs(60), theorem_vs_oracle),
        run(3, "value set realization", secs(10), value_set_realization),
        run(4, "normal form invariants", secs(30), || {
            normal_form_invariants(&samples)
        }),
        run(5, "classifier round trip", secs(30), || {
            classifier_round_trip(&samples)
        }),
        run(6, "threshold bounds", secs(60), || {
            bound_properties(&samples)
        }),
        run(7, "intersection multiplicity", secs(30), fulton_properties),
        run(8, "resolution ledger", secs(30), resolution_ledger),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
