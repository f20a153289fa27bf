//! Substitution of polynomials and rational functions into polynomials.

use super::mpoly::MPoly;
use super::ratfn::RatFn;
use super::scalar::Rational;
use crate::error::{Error, Result};

/// Lazily grown table of powers `base^0, base^1, ...`.
struct Powers {
    table: Vec<MPoly>,
}

impl Powers {
    fn new(base: MPoly) -> Self {
        let one = MPoly::one(base.nvars());
        Powers {
            table: vec![one, base],
        }
    }

    fn get(&mut self, e: u32) -> &MPoly {
        let e = e as usize;
        while self.table.len() <= e {
            let next = &self.table[self.table.len() - 1] * &self.table[1];
            self.table.push(next);
        }
        &self.table[e]
    }
}

/// `p(subs[0], ..., subs[k-1])` for polynomial substitutions.
pub fn compose_poly(p: &MPoly, subs: &[MPoly]) -> MPoly {
    assert_eq!(p.nvars(), subs.len(), "one substitution per variable");
    let m = subs.first().map(|s| s.nvars()).unwrap_or(0);
    if subs.iter().all(|s| s.is_monomial()) {
        let terms = p.terms().iter().map(|(mono, c)| {
            let mut exps = vec![0u32; m];
            let mut coeff = c.clone();
            for (s, &e) in subs.iter().zip(mono.exps()) {
                if e == 0 {
                    continue;
                }
                let (sm, sc) = &s.terms()[0];
                for (x, &se) in exps.iter_mut().zip(sm.exps()) {
                    *x += se * e;
                }
                coeff *= num_traits::pow(sc.clone(), e as usize);
            }
            (super::mpoly::Monomial::new(exps), coeff)
        });
        return MPoly::from_terms(m, terms);
    }
    let mut powers: Vec<Powers> = subs.iter().map(|s| Powers::new(s.clone())).collect();
    let mut acc = MPoly::zero(m);
    for (mono, c) in p.terms() {
        let mut t = MPoly::constant(m, c.clone());
        for (i, &e) in mono.exps().iter().enumerate() {
            if e > 0 {
                t = &t * powers[i].get(e);
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Substitute rational functions for the variables of `p`.
pub fn substitute(p: &MPoly, subs: &[RatFn]) -> Result<RatFn> {
    assert_eq!(p.nvars(), subs.len(), "one substitution per variable");
    let m = subs.first().map(|s| s.nvars()).unwrap_or(0);
    if subs.iter().all(|s| s.is_polynomial()) {
        let polys: Vec<MPoly> = subs.iter().map(|s| s.num().clone()).collect();
        return Ok(RatFn::from_poly(compose_poly(p, &polys)));
    }
    if p.is_zero() {
        return Ok(RatFn::zero(m));
    }
    let common = subs.iter().all(|s| s.den() == subs[0].den());
    let nums: Vec<MPoly> = subs.iter().map(|s| s.num().clone()).collect();
    if common {
        // p(N/D) = sum c N^e D^(deg p - |e|) / D^(deg p)
        let total = p.total_degree().unwrap_or(0);
        let mut npow: Vec<Powers> = nums.into_iter().map(Powers::new).collect();
        let mut dpow = Powers::new(subs[0].den().clone());
        let mut acc = MPoly::zero(m);
        for (mono, c) in p.terms() {
            let mut t = MPoly::constant(m, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * npow[i].get(e);
                }
            }
            t = &t * dpow.get(total - mono.degree());
            acc = &acc + &t;
        }
        let den = dpow.get(total).clone();
        return RatFn::new(acc, den).ok_or(Error::SubstitutionUndefined);
    }
    let maxdeg: Vec<u32> = (0..p.nvars()).map(|v| p.degree_in(v)).collect();
    let mut npow: Vec<Powers> = nums.into_iter().map(Powers::new).collect();
    let mut dpow: Vec<Powers> = subs.iter().map(|s| Powers::new(s.den().clone())).collect();
    let mut acc = MPoly::zero(m);
    for (mono, c) in p.terms() {
        let mut t = MPoly::constant(m, c.clone());
        for (i, &e) in mono.exps().iter().enumerate() {
            if e > 0 {
                t = &t * npow[i].get(e);
            }
            if maxdeg[i] > e {
                t = &t * dpow[i].get(maxdeg[i] - e);
            }
        }
        acc = &acc + &t;
    }
    let mut den = MPoly::one(m);
    for (i, d) in dpow.iter_mut().enumerate() {
        den = &den * d.get(maxdeg[i]);
    }
    RatFn::new(acc, den).ok_or(Error::SubstitutionUndefined)
}

/// Substitute into a rational function; fails if the new denominator vanishes identically.
pub fn substitute_ratfn(f: &RatFn, subs: &[RatFn]) -> Result<RatFn> {
    let n = substitute(f.num(), subs)?;
    let d = substitute(f.den(), subs)?;
    if d.is_zero() {
        return Err(Error::SubstitutionUndefined);
    }
    Ok(&n / &d)
}

/// Scalar substitution (evaluation); `Err` at a pole.
pub fn evaluate_ratfn(f: &RatFn, pt: &[Rational]) -> Result<Rational> {
    f.eval(pt).ok_or(Error::SubstitutionUndefined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use num_traits::Zero;

    #[test]
    fn scalar_substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = RatFn::from_poly(&x + &y);
        assert_eq!(evaluate_ratfn(&f, &[rat(1), rat(2)]).unwrap(), rat(3));
        let g = RatFn::new(x.clone(), y.clone()).unwrap();
        assert!(evaluate_ratfn(&g, &[rat(1), rat(0)]).is_err());
    }

    #[test]
    fn symbolic_substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &x.pow(2) - &y.pow(2);
        let r = substitute(&p, &[RatFn::from_poly(x.clone()), RatFn::from_poly(x.clone())]).unwrap();
        assert!(r.is_zero());
        // x/y with y <- 0 is undefined
        let f = RatFn::new(x.clone(), y.clone()).unwrap();
        let zero = RatFn::from_poly(MPoly::constant(2, rat(0)));
        assert_eq!(
            substitute_ratfn(&f, &[RatFn::from_poly(x.clone()), zero]),
            Err(Error::SubstitutionUndefined)
        );
        // (x + y) o (1/x, 1/y) = (x + y) / (x y)
        let inv = [RatFn::var(2, 0).recip().unwrap(), RatFn::var(2, 1).recip().unwrap()];
        let s = substitute(&(&x + &y), &inv).unwrap();
        assert_eq!(s, RatFn::new(&x + &y, &x * &y).unwrap());
        assert!(!s.is_zero() && !rat(1).is_zero());
    }
}
