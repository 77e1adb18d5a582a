//! Irreducible factorization of integer polynomials.
//!
//! Square-free primitive inputs are factored modulo a single prime larger
//! than twice the leading coefficient times the Mignotte bound, using
//! distinct-degree and Cantor–Zassenhaus equal-degree splitting; true
//! factors are recovered by subset recombination and checked by exact
//! division over the integers.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rat::Rat;
use super::upoly::UPoly;

/// Factors a nonzero rational polynomial into `unit * prod(p_i^e_i)` with
/// every `p_i` irreducible, primitive over the integers, with positive
/// leading coefficient. Factors are sorted by degree, then coefficients.
pub fn factor_rational(f: &UPoly) -> (Rat, Vec<(UPoly, u32)>) {
    assert!(!f.is_zero(), "factorization of zero");
    let mut factors: Vec<(UPoly, u32)> = Vec::new();
    for (part, e) in f.squarefree_parts() {
        let (_, ints) = part.primitive_integer();
        for g in factor_squarefree_primitive(&ints) {
            factors.push((UPoly::from_bigints(&g), e));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    let mut lc_product = Rat::one();
    for (p, e) in &factors {
        lc_product *= num_traits::pow(p.leading_coeff(), *e as usize);
    }
    let unit = f.leading_coeff() / lc_product;
    (unit, factors)
}

/// Irreducible factors of a square-free, primitive integer polynomial with
/// positive leading coefficient.
pub fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    // A factor t splits off without any modular work.
    if f[0].is_zero() {
        let mut rest = factor_squarefree_primitive(&f[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let lc = f[n].abs();
    let bound = mignotte_bound(&f);
    let mut p: BigInt = &lc * &bound * 2 + 1;
    if p.is_even() {
        p += 1;
    }
    if p < BigInt::from(3) {
        p = BigInt::from(3);
    }
    loop {
        p = next_prime(&p);
        if (&f[n] % &p).is_zero() {
            p += 2;
            continue;
        }
        let fp = Fp::new(p.clone());
        let monic = fp.monic(&fp.reduce(&f));
        let der = fp.derivative(&monic);
        if fp.gcd(&monic, &der).len() != 1 {
            p += 2;
            continue;
        }
        let modular = fp.factor_monic(&monic);
        return recombine(&f, &modular, &fp);
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// `2^n * ceil(||f||_2)`: bounds every coefficient of every factor of `f`.
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + 1;
    root << n
}

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    const SMALL: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for &sp in &SMALL {
        let sp = BigInt::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(start: &BigInt) -> BigInt {
    let mut p = start.clone();
    if p.is_even() {
        p += 1;
    }
    while !is_probable_prime(&p) {
        p += 2;
    }
    p
}

/// Arithmetic in `F_p[t]`; polynomials are dense, lowest degree first,
/// trimmed, with coefficients in `[0, p)`.
struct Fp {
    p: BigInt,
}

type PolyP = Vec<BigInt>;

impl Fp {
    fn new(p: BigInt) -> Self {
        Fp { p }
    }

    fn norm(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.p)
    }

    fn reduce(&self, f: &[BigInt]) -> PolyP {
        self.trim(f.iter().map(|c| self.norm(c)).collect())
    }

    fn trim(&self, mut v: PolyP) -> PolyP {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn inv(&self, c: &BigInt) -> BigInt {
        c.modpow(&(&self.p - 2), &self.p)
    }

    fn monic(&self, f: &PolyP) -> PolyP {
        match f.last() {
            None => Vec::new(),
            Some(lc) => {
                let i = self.inv(lc);
                f.iter().map(|c| (c * &i) % &self.p).collect()
            }
        }
    }

    fn derivative(&self, f: &PolyP) -> PolyP {
        self.trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| (c * BigInt::from(k)) % &self.p)
                .collect(),
        )
    }

    fn sub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.trim(
            (0..n)
                .map(|k| self.norm(&(a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))))
                .collect(),
        )
    }

    fn mul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(&out)
    }

    fn div_rem(&self, a: &PolyP, d: &PolyP) -> (PolyP, PolyP) {
        let dd = d.len() - 1;
        if a.len() < d.len() {
            return (Vec::new(), a.clone());
        }
        let li = self.inv(&d[dd]);
        let mut r = a.clone();
        let mut q = vec![BigInt::zero(); a.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (&r[k + dd] * &li) % &self.p;
            if !c.is_zero() {
                for (i, dc) in d.iter().enumerate() {
                    r[k + i] = self.norm(&(&r[k + i] - &c * dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (self.trim(q), self.trim(r))
    }

    fn rem(&self, a: &PolyP, d: &PolyP) -> PolyP {
        self.div_rem(a, d).1
    }

    fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    fn powmod(&self, base: &PolyP, e: &BigInt, m: &PolyP) -> PolyP {
        let mut result = vec![BigInt::one()];
        let b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
        }
        result
    }

    /// Complete factorization of a monic square-free polynomial into monic
    /// irreducibles.
    fn factor_monic(&self, f: &PolyP) -> Vec<PolyP> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d1c7);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, &mut rng, &mut out);
        }
        out
    }

    fn distinct_degree(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while rest.len() > 2 * i {
            h = self.powmod(&h, &self.p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.len() > 1 {
            let d = rest.len() - 1;
            out.push((rest, d));
        }
        out
    }

    fn equal_degree(&self, g: &PolyP, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.clone());
            return;
        }
        let exp: BigInt = (num_traits::pow(self.p.clone(), d) - 1) / 2;
        loop {
            let a: PolyP = self.trim(
                (0..n)
                    .map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p))
                    .collect(),
            );
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &exp, g), &vec![BigInt::one()]);
            let c = self.gcd(g, &b);
            if c.len() > 1 && c.len() < g.len() {
                let other = self.div_rem(g, &c).0;
                self.equal_degree(&c, d, rng, out);
                self.equal_degree(&self.monic(&other), d, rng, out);
                return;
            }
        }
    }
}

/// Symmetric representative in `(-p/2, p/2]`.
fn symmetric(c: &BigInt, p: &BigInt) -> BigInt {
    let r = c.mod_floor(p);
    if &r * 2 > *p {
        r - p
    } else {
        r
    }
}

fn int_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dd].div_rem(&d[dd]);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (i, dc) in d.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn primitive_positive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim(v);
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if v.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let g = g * sign;
    v.into_iter().map(|c| c / &g).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn recombine(f: &[BigInt], modular: &[PolyP], fp: &Fp) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<PolyP> = modular.to_vec();
    let mut g = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let lc = g.last().expect("nonzero").clone();
            let mut prod = vec![fp.norm(&lc)];
            for &i in &subset {
                prod = fp.mul(&prod, &remaining[i]);
            }
            let cand = primitive_positive(prod.iter().map(|c| symmetric(c, &fp.p)).collect());
            if let Some(q) = int_div_exact(&g, &cand) {
                found.push(cand);
                g = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(primitive_positive(g));
    found
}
