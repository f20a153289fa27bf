//! Multivariate gcd by recursive content / primitive-part reduction.
//!
//! Common factors are found by the modular algorithm; the subresultant
//! remainder sequence over `Q[other variables]` remains as a fallback. A modular image
//! test short-circuits the (overwhelmingly common) coprime case: if for every
//! variable `v` some evaluation of the other variables that keeps both leading
//! coefficients nonzero gives a constant gcd mod p, then the true gcd is free
//! of every variable.

use num_traits::One;

use super::modgcd::modular_gcd;
use super::mpoly::{MPoly, Monomial};
use super::scalar::{PrimeField, Rational};

/// Canonical gcd: monic with respect to the graded-lex leading term.
/// `gcd(p, 0) = monic(p)` and `gcd(0, 0) = 0`.
pub fn gcd(p: &MPoly, q: &MPoly) -> MPoly {
    assert_eq!(p.nvars(), q.nvars(), "gcd: variable count mismatch");
    let n = p.nvars();
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one(n);
    }
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let m: Vec<u32> = mp.iter().zip(&mq).map(|(a, b)| (*a).min(*b)).collect();
    let p1 = if mp.iter().any(|&e| e > 0) {
        p.div_monomial(&mp)
    } else {
        p.clone()
    };
    let q1 = if mq.iter().any(|&e| e > 0) {
        q.div_monomial(&mq)
    } else {
        q.clone()
    };
    let g = gcd_no_monomial_content(&p1, &q1);
    if m.iter().all(|&e| e == 0) {
        g
    } else {
        g.mul_monomial(&Monomial::new(m), &Rational::one())
            .monic()
    }
}

/// gcd of a list; `gcd_many([]) = 0`.
pub fn gcd_many(polys: &[MPoly]) -> MPoly {
    let mut order: Vec<&MPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if order.is_empty() {
        return polys
            .first()
            .map(|p| MPoly::zero(p.nvars()))
            .unwrap_or_else(|| MPoly::zero(0));
    }
    order.sort_by_key(|p| p.num_terms());
    let mut g = order[0].monic();
    for p in &order[1..] {
        if g.is_one() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

pub fn lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero(p.nvars());
    }
    let g = gcd(p, q);
    (&p.div_exact(&g).expect("gcd divides") * q).monic()
}

/// Content of `p` viewed as a polynomial in `v` (the gcd of its coefficients).
pub fn content_in(p: &MPoly, v: usize) -> MPoly {
    let coeffs: Vec<MPoly> = p.to_univariate(v);
    gcd_many(&coeffs)
}

/// `(content, primitive part)` with respect to `v`; `p = content * pp`.
pub fn primitive_split(p: &MPoly, v: usize) -> (MPoly, MPoly) {
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    (c, pp)
}

fn gcd_no_monomial_content(p: &MPoly, q: &MPoly) -> MPoly {
    let n = p.nvars();
    if p.is_constant() || q.is_constant() {
        return MPoly::one(n);
    }
    let pm = p.monic();
    let qm = q.monic();
    if pm == qm {
        return pm;
    }
    let up = p.vars_used();
    let uq = q.vars_used();
    for v in 0..n {
        if up[v] && !uq[v] {
            return gcd(&content_in(p, v), q);
        }
        if uq[v] && !up[v] {
            return gcd(p, &content_in(q, v));
        }
    }
    let free = free_of(p, q);
    if free.iter().all(|&f| f) {
        return MPoly::one(n);
    }
    // A gcd free of `v` divides every coefficient in `v`.
    if let Some(v) = (0..n).find(|&v| free[v] && up[v]) {
        return gcd(&content_in(p, v), &content_in(q, v));
    }
    if p.num_terms() <= q.num_terms() {
        if q.div_exact(p).is_some() {
            return pm;
        }
    } else if p.div_exact(q).is_some() {
        return qm;
    }
    if let Some(g) = modular_gcd(p, q) {
        return g;
    }
    let main = (0..n)
        .filter(|&v| up[v])
        .min_by_key(|&v| (p.degree_in(v).max(q.degree_in(v)), p.degree_in(v) + q.degree_in(v)))
        .expect("non-constant inputs use a variable");
    let (cp, pp) = primitive_split(p, main);
    let (cq, qq) = primitive_split(q, main);
    let c = gcd(&cp, &cq);
    let h = subresultant_gcd(&pp, &qq, main);
    (&c * &h).monic()
}

type Uni = Vec<MPoly>;

fn uni_deg(a: &Uni) -> usize {
    a.len() - 1
}

fn trim(a: &mut Uni) {
    while a.len() > 1 && a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
}

fn uni_is_zero(a: &Uni) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = uni_deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = uni_deg(a) as i64 - db as i64 + 1;
    while !uni_is_zero(&r) && uni_deg(&r) >= db {
        let dr = uni_deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(MPoly::zero(lb.nvars()));
        }
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// gcd of two primitive polynomials in `v`, returned primitive in `v`.
fn subresultant_gcd(p: &MPoly, q: &MPoly, v: usize) -> MPoly {
    let n = p.nvars();
    let mut a = p.to_univariate(v);
    let mut b = q.to_univariate(v);
    if uni_deg(&a) < uni_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if uni_deg(&b) == 0 {
        return MPoly::one(n);
    }
    let mut g = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = (uni_deg(&a) - uni_deg(&b)) as u32;
        let r = prem(&a, &b);
        if uni_is_zero(&r) {
            break;
        }
        if uni_deg(&r) == 0 {
            return MPoly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        a = std::mem::replace(
            &mut b,
            r.iter()
                .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
                .collect(),
        );
        g = a[uni_deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant h update is exact"),
        };
    }
    let res = MPoly::from_univariate(n, v, &b);
    let (_, pp) = primitive_split(&res, v);
    pp.monic()
}

/// Rigorous (never wrong when it answers `true`) coprimality test via
/// univariate images modulo a large prime.
#[cfg(test)]
pub(crate) fn certainly_coprime(p: &MPoly, q: &MPoly) -> bool {
    free_of(p, q).iter().all(|&f| f)
}

/// `out[v]` is true only if `gcd(p, q)` certainly does not involve `v`: some
/// image in `v`, with both leading coefficients surviving, has constant gcd.
pub(crate) fn free_of(p: &MPoly, q: &MPoly) -> Vec<bool> {
    let field = PrimeField::default_oracle();
    let n = p.nvars();
    let mut rng = SplitMix(0x9e37_79b9_7f4a_7c15 ^ (p.num_terms() as u64) << 20 ^ q.num_terms() as u64);
    let used = p.vars_used();
    let mut out = vec![true; n];
    for v in 0..n {
        if !used[v] {
            continue;
        }
        let pu = p.to_univariate(v);
        let qu = q.to_univariate(v);
        out[v] = false;
        for _attempt in 0..3 {
            let pt: Vec<u64> = (0..n).map(|_| rng.next() % field.modulus()).collect();
            let Some(pi) = image(&field, &pu, &pt) else {
                continue;
            };
            let Some(qi) = image(&field, &qu, &pt) else {
                continue;
            };
            if pi.last() == Some(&0) || qi.last() == Some(&0) {
                continue;
            }
            out[v] = uni_gcd_degree_fp(&field, pi, qi) == 0;
            break;
        }
    }
    out
}

fn image(field: &PrimeField, coeffs: &[MPoly], pt: &[u64]) -> Option<Vec<u64>> {
    coeffs.iter().map(|c| c.eval_fp(field, pt)).collect()
}

fn uni_gcd_degree_fp(field: &PrimeField, mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    fn strip(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb_inv = field.inv(*b.last().unwrap()).unwrap();
        while a.len() >= b.len() {
            let c = field.mul(*a.last().unwrap(), lb_inv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = field.sub(a[i + shift], field.mul(c, bc));
            }
            strip(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

pub(crate) struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// Is `p` squarefree? In characteristic zero this holds iff `p` and all of
/// its partial derivatives have constant joint gcd.
pub fn is_squarefree(p: &MPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut g = p.monic();
    for v in 0..p.nvars() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.derivative(v));
    }
    g.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (v(2, 0), v(2, 1));
        let p = &(&x * &x) - &(&y * &y);
        let q = &x - &y;
        assert_eq!(gcd(&p, &q), q);
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let p = (&v(2, 0) + &v(2, 1)).scale(&rat(3));
        assert_eq!(gcd(&p, &MPoly::zero(2)), &v(2, 0) + &v(2, 1));
        assert_eq!(gcd(&MPoly::zero(2), &p), &v(2, 0) + &v(2, 1));
    }

    #[test]
    fn coprime_shifted_variables() {
        let one = MPoly::one(2);
        let p = &v(2, 0) + &one;
        let q = &v(2, 1) + &one;
        assert!(gcd(&p, &q).is_one());
        assert!(certainly_coprime(&p, &(&p + &q)));
    }

    #[test]
    fn nontrivial_common_factor_three_vars() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let one = MPoly::one(3);
        let g = &(&(&x * &y) + &z) + &one;
        let a = &g * &(&(&x * &x) - &z);
        let b = &g * &(&(&y * &z) + &(&x * &x.pow(2)));
        assert_eq!(gcd(&a, &b), g.monic());
        let c = &g.pow(2) * &(&y - &one);
        assert_eq!(gcd(&a.pow(2), &c), g.pow(2).monic());
    }

    #[test]
    fn monomial_content_is_shared() {
        let (x, y) = (v(2, 0), v(2, 1));
        let a = &x.pow(3) * &(&y + &MPoly::one(2));
        let b = &x.pow(2) * &y;
        assert_eq!(gcd(&a, &b), x.pow(2));
    }

    #[test]
    fn squarefree_predicate() {
        let (x, y) = (v(2, 0), v(2, 1));
        assert!(is_squarefree(&(&x * &y)));
        assert!(!is_squarefree(&(&x * &(&x + &y).pow(2))));
    }
}
