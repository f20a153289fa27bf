//! Modular multivariate gcd: images over `F_p` by evaluation and
//! interpolation, lifted to `Q` by CRT and rational reconstruction.
//!
//! Nothing here is trusted: the caller gets a candidate only after exact
//! division of both inputs and a certified coprimality test of the cofactors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{free_of, SplitMix};
use super::mpoly::{MPoly, Monomial};
use super::scalar::{is_prime_u64, PrimeField, Rational};

/// Sparse polynomial over `F_p`, keyed by full exponent vectors.
type Fpoly = BTreeMap<Vec<u32>, u64>;

const MAX_PRIMES: usize = 24;

pub(crate) fn modular_gcd(p: &MPoly, q: &MPoly) -> Option<MPoly> {
    let n = p.nvars();
    let up = p.vars_used();
    let uq = q.vars_used();
    let vars: Vec<usize> = (0..n).filter(|&v| up[v] || uq[v]).collect();
    let mut rng = SplitMix(0x5851_f42d_4c95_7f2d ^ p.num_terms() as u64);
    let mut prime = (1u64 << 62) - 1;
    let mut modulus = BigInt::one();
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    let mut lead: Option<Vec<u32>> = None;
    let mut last: Option<MPoly> = None;
    for _ in 0..MAX_PRIMES {
        prime = next_prime_below(prime);
        let field = PrimeField::new(prime).expect("prime");
        let (Some(a), Some(b)) = (reduce(&field, p), reduce(&field, q)) else {
            continue;
        };
        let Some(g) = gcd_fp(&field, &a, &b, &vars, &mut rng) else {
            continue;
        };
        let lm = lex_lead(&g, &vars);
        match &lead {
            Some(cur) if lex_key(&lm, &vars) > lex_key(cur, &vars) => continue,
            Some(cur) if lex_key(&lm, &vars) == lex_key(cur, &vars) => {}
            _ => {
                lead = Some(lm);
                modulus = BigInt::one();
                acc.clear();
                last = None;
            }
        }
        crt_merge(&mut acc, &modulus, &g, prime);
        modulus *= BigInt::from(prime);
        let Some(cand) = reconstruct(n, &acc, &modulus) else {
            continue;
        };
        if last.as_ref() == Some(&cand) {
            if let (Some(cp), Some(cq)) = (p.div_exact(&cand), q.div_exact(&cand)) {
                if free_of(&cp, &cq).iter().all(|&f| f) {
                    return Some(cand.monic());
                }
            }
        }
        last = Some(cand);
    }
    None
}

fn next_prime_below(mut p: u64) -> u64 {
    loop {
        p -= 2;
        if is_prime_u64(p) {
            return p;
        }
    }
}

fn reduce(field: &PrimeField, p: &MPoly) -> Option<Fpoly> {
    let mut out = Fpoly::new();
    for (e, c) in p.iter_terms() {
        let v = field.from_rational(c)?;
        if v != 0 {
            out.insert(e.to_vec(), v);
        }
    }
    Some(out)
}

fn lex_key(e: &[u32], vars: &[usize]) -> Vec<u32> {
    vars.iter().map(|&v| e[v]).collect()
}

fn lex_lead(a: &Fpoly, vars: &[usize]) -> Vec<u32> {
    a.keys()
        .max_by_key(|e| lex_key(e, vars))
        .cloned()
        .expect("nonzero polynomial")
}

fn make_monic(field: &PrimeField, a: &Fpoly, vars: &[usize]) -> Fpoly {
    let lc = a[&lex_lead(a, vars)];
    let inv = field.inv(lc).expect("nonzero lead");
    a.iter().map(|(e, &c)| (e.clone(), field.mul(c, inv))).collect()
}

// ---------- univariate helpers over F_p (coefficient vectors, low first) ----------

fn strip(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn ueval(field: &PrimeField, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

fn udivrem(field: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    strip(&mut r);
    let db = b.len() - 1;
    let inv = field.inv(b[db]).expect("nonzero divisor");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let c = field.mul(*r.last().unwrap(), inv);
        let shift = r.len() - b.len();
        quo[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = field.sub(r[i + shift], field.mul(c, bc));
        }
        strip(&mut r);
    }
    (quo, r)
}

fn ugcd(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        let (_, r) = udivrem(field, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(&lc) = a.last() {
        let inv = field.inv(lc).unwrap();
        for c in a.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    a
}

fn umul(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

// ---------- recursive gcd over F_p ----------

/// View `a` as a polynomial in the variables other than `z` with
/// coefficients in `F_p[z]`.
fn split_on(a: &Fpoly, z: usize) -> BTreeMap<Vec<u32>, Vec<u64>> {
    let mut out: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
    for (e, &c) in a {
        let mut k = e.clone();
        let d = k[z] as usize;
        k[z] = 0;
        let u = out.entry(k).or_default();
        if u.len() <= d {
            u.resize(d + 1, 0);
        }
        u[d] = c;
    }
    out
}

fn join_on(parts: &BTreeMap<Vec<u32>, Vec<u64>>, z: usize) -> Fpoly {
    let mut out = Fpoly::new();
    for (k, u) in parts {
        for (d, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut e = k.clone();
                e[z] = d as u32;
                out.insert(e, c);
            }
        }
    }
    out
}

fn content_on(field: &PrimeField, parts: &BTreeMap<Vec<u32>, Vec<u64>>) -> Vec<u64> {
    let mut g: Vec<u64> = Vec::new();
    for u in parts.values() {
        g = ugcd(field, &g, u);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn divide_parts(field: &PrimeField, parts: &mut BTreeMap<Vec<u32>, Vec<u64>>, c: &[u64]) {
    if c.len() == 1 && c[0] == 1 {
        return;
    }
    for u in parts.values_mut() {
        *u = udivrem(field, u, c).0;
    }
}

fn zdeg(parts: &BTreeMap<Vec<u32>, Vec<u64>>) -> usize {
    parts.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0)
}

fn gcd_fp(field: &PrimeField, a: &Fpoly, b: &Fpoly, vars: &[usize], rng: &mut SplitMix) -> Option<Fpoly> {
    if a.is_empty() {
        return Some(if b.is_empty() { Fpoly::new() } else { make_monic(field, b, vars) });
    }
    if b.is_empty() {
        return Some(make_monic(field, a, vars));
    }
    let (&z, rest) = vars.split_last().expect("at least one variable");
    let mut pa = split_on(a, z);
    let mut pb = split_on(b, z);
    let ca = content_on(field, &pa);
    let cb = content_on(field, &pb);
    let c = ugcd(field, &ca, &cb);
    if rest.is_empty() {
        let zero = vec![0u32; a.keys().next().unwrap().len()];
        return Some(join_on(&BTreeMap::from([(zero, c)]), z));
    }
    divide_parts(field, &mut pa, &ca);
    divide_parts(field, &mut pb, &cb);
    let key = |k: &Vec<u32>| lex_key(k, rest);
    let lead_a = pa.iter().max_by_key(|(k, _)| key(k)).unwrap().1.clone();
    let lead_b = pb.iter().max_by_key(|(k, _)| key(k)).unwrap().1.clone();
    let gamma = ugcd(field, &lead_a, &lead_b);
    let bound = gamma.len() - 1 + zdeg(&pa).min(zdeg(&pb)) + 1;
    let eval_at = |parts: &BTreeMap<Vec<u32>, Vec<u64>>, x: u64| -> Fpoly {
        parts
            .iter()
            .map(|(k, u)| (k.clone(), ueval(field, u, x)))
            .filter(|(_, v)| *v != 0)
            .collect()
    };
    // Newton interpolation in z: image coefficients per monomial of `rest`.
    let mut interp: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
    let mut nodes = vec![1u64];
    let mut count = 0usize;
    let mut lead: Option<Vec<u32>> = None;
    for _ in 0..(4 * bound + 16) {
        let x = rng.next() % field.modulus();
        if ueval(field, &lead_a, x) == 0 || ueval(field, &lead_b, x) == 0 {
            continue;
        }
        let ga = eval_at(&pa, x);
        let gb = eval_at(&pb, x);
        let g = gcd_fp(field, &ga, &gb, rest, rng)?;
        let lm = key(&lex_lead(&g, rest));
        if lm.iter().all(|&e| e == 0) {
            // coprime image with surviving leads: the primitive parts are coprime
            return Some(finish(field, c, BTreeMap::new(), z, vars, a));
        }
        match &lead {
            Some(cur) if lm > *cur => continue,
            Some(cur) if lm == *cur => {}
            _ => {
                lead = Some(lm);
                interp.clear();
                nodes = vec![1u64];
                count = 0;
            }
        }
        let s = ueval(field, &gamma, x);
        let qx = ueval(field, &nodes, x);
        let qinv = field.inv(qx)?;
        let mut keys: Vec<Vec<u32>> = interp.keys().cloned().collect();
        keys.extend(g.keys().cloned());
        keys.sort();
        keys.dedup();
        for k in keys {
            let target = field.mul(s, g.get(&k).copied().unwrap_or(0));
            let u = interp.entry(k).or_default();
            let cur = ueval(field, u, x);
            let coef = field.mul(field.sub(target, cur), qinv);
            if coef != 0 {
                let upd: Vec<u64> = nodes.iter().map(|&nc| field.mul(nc, coef)).collect();
                if u.len() < upd.len() {
                    u.resize(upd.len(), 0);
                }
                for (i, v) in upd.into_iter().enumerate() {
                    u[i] = field.add(u[i], v);
                }
            }
        }
        nodes = umul(field, &nodes, &[field.neg(x), 1]);
        count += 1;
        if count >= bound {
            let h = interp.clone();
            let hc = content_on(field, &h);
            let mut h = h;
            divide_parts(field, &mut h, &hc);
            return Some(finish(field, c, h, z, vars, a));
        }
    }
    None
}

/// `c(z) · h`, monic in lex order on `vars`; an empty `h` stands for 1.
fn finish(
    field: &PrimeField,
    c: Vec<u64>,
    mut h: BTreeMap<Vec<u32>, Vec<u64>>,
    z: usize,
    vars: &[usize],
    like: &Fpoly,
) -> Fpoly {
    if h.is_empty() {
        let zero = vec![0u32; like.keys().next().unwrap().len()];
        h.insert(zero, vec![1]);
    }
    for u in h.values_mut() {
        *u = umul(field, u, &c);
        strip(u);
    }
    h.retain(|_, u| !u.is_empty());
    make_monic(field, &join_on(&h, z), vars)
}

// ---------- lifting to Q ----------

fn crt_merge(acc: &mut BTreeMap<Vec<u32>, BigInt>, m: &BigInt, g: &Fpoly, p: u64) {
    let pb = BigInt::from(p);
    let field = PrimeField::new(p).unwrap();
    let minv = field.inv(field.from_bigint(m)).expect("coprime moduli");
    let mut keys: Vec<Vec<u32>> = acc.keys().cloned().collect();
    keys.extend(g.keys().cloned());
    keys.sort();
    keys.dedup();
    for k in keys {
        let r = g.get(&k).copied().unwrap_or(0);
        let cur = acc.entry(k).or_insert_with(BigInt::zero);
        // x = cur + m * ((r - cur) / m mod p)
        let delta = field.mul(field.sub(r, field.from_bigint(cur)), minv);
        *cur = &*cur + m * BigInt::from(delta);
        *cur = cur.mod_floor(&(m * &pb));
    }
}

/// Rational reconstruction of every coefficient with `|num|, den <= sqrt(M / 2)`.
fn reconstruct(n: usize, acc: &BTreeMap<Vec<u32>, BigInt>, m: &BigInt) -> Option<MPoly> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut terms = Vec::with_capacity(acc.len());
    for (e, a) in acc {
        if a.is_zero() {
            continue;
        }
        let (mut r0, mut r1) = (m.clone(), a.clone());
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let t2 = &t0 - &q * &t1;
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
            return None;
        }
        terms.push((Monomial::new(e.clone()), Rational::new(r1, t1)));
    }
    Some(MPoly::from_terms(n, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_frac};

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn recovers_planted_factor() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let one = MPoly::one(3);
        let g = &(&(&x * &y) + &z.scale(&rat_frac(3, 7))) + &one;
        let a = &g * &(&(&x * &x) - &y);
        let b = &g * &(&(&z * &y) + &x.scale(&rat(5)));
        assert_eq!(modular_gcd(&a, &b).unwrap(), g.monic());
    }

    #[test]
    fn coprime_and_content() {
        let (x, y) = (v(2, 0), v(2, 1));
        let one = MPoly::one(2);
        let a = &(&y + &one) * &(&x + &y);
        let b = &(&y + &one) * &(&x - &y);
        assert_eq!(modular_gcd(&a, &b).unwrap(), (&y + &one).monic());
        let c = &x + &one;
        assert!(modular_gcd(&c, &(&x - &one)).unwrap().is_one());
    }
}
