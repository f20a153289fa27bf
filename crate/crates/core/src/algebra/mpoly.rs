//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use rustc_hash::FxHashMap as HashMap;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{format_rational, PrimeField, Rational};

/// Exponent vector, ordered graded-lexicographically (`x0 > x1 > ...` on ties).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Monomial { deg: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// A polynomial in `nvars` variables. Terms are stored sorted by decreasing
/// monomial, with no zero coefficients, so equal polynomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable index out of range");
        MPoly {
            nvars,
            terms: vec![(Monomial::var(nvars, v), Rational::one())],
        }
    }

    pub fn term(exps: Vec<u32>, c: Rational) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly {
            nvars,
            terms: vec![(Monomial::new(exps), c)],
        }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { nvars, terms }
    }

    /// Terms already sorted in decreasing order with nonzero coefficients.
    fn from_sorted(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.deg == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0 && self.terms[0].1.is_one()
    }

    /// Single term with coefficient (a "monomial" in the loose sense).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant term.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.deg == 0 => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.deg)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps[v]).min().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exps[v] > 0)
    }

    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(&m.exps) {
                *u |= e > 0;
            }
        }
        used
    }

    /// `Some(d)` when every term has total degree `d` (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.deg;
        self.terms.iter().all(|t| t.0.deg == d).then_some(d)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Rational {
        let m = Monomial::new(exps.to_vec());
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        )
    }

    /// Divide by the leading coefficient (canonical scalar normalization).
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(self.nvars);
        if e == 0 {
            return result;
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            let exps = m.exps.iter().map(|x| x * e).collect();
            return MPoly::term(exps, num_traits::pow(c.clone(), e as usize));
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.terms[0].clone();
        if d.is_monomial() {
            let inv = dc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                out.push((dm.quotient_of(m), c * &inv));
            }
            return Some(MPoly::from_sorted(self.nvars, out));
        }
        // Quick degree screens.
        for v in 0..self.nvars {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let inv = dc.recip();
        let mut rem: std::collections::BTreeMap<std::cmp::Reverse<Monomial>, Rational> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(m.clone()), c.clone()))
            .collect();
        let mut quot = Vec::new();
        while let Some((std::cmp::Reverse(lm), lc)) = rem.pop_first() {
            if !dm.divides(&lm) {
                return None;
            }
            let qm = dm.quotient_of(&lm);
            let qc = &lc * &inv;
            for (m, c) in d.terms.iter().skip(1) {
                let key = std::cmp::Reverse(m.mul(&qm));
                let delta = c * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MPoly::from_sorted(self.nvars, quot))
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn derivative(&self, v: usize) -> MPoly {
        let terms = self.terms.iter().filter(|t| t.0.exps[v] > 0).map(|(m, c)| {
            let e = m.exps[v];
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            (Monomial::new(exps), c * Rational::from_integer(e.into()))
        });
        MPoly::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, pt: &[Rational]) -> Rational {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in pt.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate mod p; `None` if some coefficient has a denominator divisible by p.
    pub fn eval_fp(&self, field: &PrimeField, pt: &[u64]) -> Option<u64> {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = field.from_rational(c)?;
            for (&x, &e) in pt.iter().zip(&m.exps) {
                if e > 0 {
                    t = field.mul(t, field.pow(x, e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        Some(acc)
    }

    /// Substitute a scalar for variable `v` (the variable stays, with degree 0).
    pub fn substitute_scalar(&self, v: usize, value: &Rational) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exps[v];
            let mut exps = m.exps.clone();
            exps[v] = 0;
            let f = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            (Monomial::new(exps), f)
        });
        MPoly::from_terms(self.nvars, terms)
    }

    /// `p(..., c*x_v, ...)`.
    pub fn scale_var(&self, v: usize, c: &Rational) -> MPoly {
        if c.is_zero() {
            return self.substitute_scalar(v, c);
        }
        MPoly::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), a * num_traits::pow(c.clone(), m.exps[v] as usize)))
                .collect(),
        )
    }

    /// Coefficients with respect to `v`: `self = sum_k coeffs[k] * x_v^k`.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[v] as usize;
            let mut exps = m.exps.clone();
            exps[v] = 0;
            buckets[k].push((Monomial::new(exps), c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| {
                let mut p = MPoly {
                    nvars: self.nvars,
                    terms: b,
                };
                p.terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                p
            })
            .collect()
    }

    pub fn from_univariate(nvars: usize, v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut exps = m.exps.clone();
                exps[v] += k as u32;
                terms.push((Monomial::new(exps), a.clone()));
            }
        }
        MPoly::from_terms(nvars, terms)
    }

    /// Componentwise minimum exponent (the largest monomial dividing `self`).
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut mins: Vec<u32> = match self.terms.first() {
            None => return vec![0; self.nvars],
            Some(t) => t.0.exps.clone(),
        };
        for (m, _) in &self.terms[1..] {
            for (a, &b) in mins.iter_mut().zip(&m.exps) {
                *a = (*a).min(b);
            }
        }
        mins
    }

    pub fn div_monomial(&self, exps: &[u32]) -> MPoly {
        let d = Monomial::new(exps.to_vec());
        MPoly::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (d.quotient_of(m), c.clone()))
                .collect(),
        )
    }

    /// Re-index variables: old variable `i` becomes new variable `map[i]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; new_nvars];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        });
        MPoly::from_terms(new_nvars, terms)
    }

    /// Append `extra` unused variables at the end.
    pub fn extend_vars(&self, extra: usize) -> MPoly {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(self.nvars + extra, &map)
    }

    /// Drop variables that the polynomial does not use; `keep[i]` says whether
    /// variable `i` survives. Panics if a dropped variable occurs.
    pub fn drop_vars(&self, keep: &[bool]) -> MPoly {
        let new_nvars = keep.iter().filter(|k| **k).count();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = Vec::with_capacity(new_nvars);
            for (i, &e) in m.exps.iter().enumerate() {
                if keep[i] {
                    exps.push(e);
                } else {
                    assert_eq!(e, 0, "dropping a variable that occurs");
                }
            }
            (Monomial::new(exps), c.clone())
        });
        MPoly::from_terms(new_nvars, terms)
    }

    /// Homogenize with respect to a new variable inserted at index `at`, to
    /// total degree `deg` (must be at least the total degree).
    pub fn homogenize(&self, at: usize, deg: u32) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            assert!(m.deg <= deg);
            let mut exps = m.exps.clone();
            exps.insert(at, deg - m.deg);
            (Monomial::new(exps), c.clone())
        });
        MPoly::from_terms(self.nvars + 1, terms)
    }

    /// Integer exponent vectors with coefficients, for serialization.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.exps.as_slice(), c))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, names }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, true)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        merge(&self, &rhs, false)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        merge(&self, &rhs, true)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero(self.nvars);
        }
        if rhs.is_monomial() {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.is_monomial() {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        // clear denominators so the inner loop runs over integers
        let scaled = |p: &MPoly| -> (BigInt, Vec<BigInt>) {
            let d = p.terms.iter().fold(BigInt::one(), |d, (_, c)| d.lcm(c.denom()));
            let v = p.terms.iter().map(|(_, c)| c.numer() * (&d / c.denom())).collect();
            (d, v)
        };
        let (da, va) = scaled(self);
        let (db, vb) = scaled(rhs);
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity_and_hasher(self.terms.len() * rhs.terms.len() / 2 + 1, Default::default());
        for ((ma, _), ca) in self.terms.iter().zip(&va) {
            for ((mb, _), cb) in rhs.terms.iter().zip(&vb) {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let d = da * db;
        let acc = if d.is_one() {
            acc.into_iter().map(|(m, c)| (m, Rational::from_integer(c))).collect()
        } else {
            acc.into_iter().map(|(m, c)| (m, Rational::new(c, d.clone()))).collect()
        };
        MPoly::from_map(self.nvars, acc)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

fn merge(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
    assert_eq!(a.nvars, b.nvars, "variable count mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp(&b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &b.terms[j];
                out.push((m.clone(), if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    for (m, c) in &b.terms[j..] {
        out.push((m.clone(), if negate_b { -c } else { c.clone() }));
    }
    MPoly::from_sorted(a.nvars, out)
}

pub struct DisplayPoly<'a> {
    poly: &'a MPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.deg == 0 {
                factors.push(format_rational(&a));
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(nvars: usize, first: usize) -> Vec<String> {
    (first..first + nvars).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x(2, 1) * &x(2, 1)) + &(&x(2, 0) + &MPoly::one(2));
        assert_eq!(p.leading().unwrap().0.exps(), &[0, 2]);
        let q = &(&x(2, 0) * &x(2, 1)) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(q.leading().unwrap().0.exps(), &[1, 1]);
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) - &x(2, 1);
        let b = &x(2, 0) + &x(2, 1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&(&a + &MPoly::one(2))), None);
        assert_eq!(MPoly::zero(2).div_exact(&a), Some(MPoly::zero(2)));
    }

    #[test]
    fn univariate_round_trip_and_derivative() {
        let p = &(&x(3, 0) * &x(3, 2)).pow(2) + &(&x(3, 1) * &MPoly::constant(3, rat(5)));
        let u = p.to_univariate(2);
        assert_eq!(u.len(), 3);
        assert_eq!(MPoly::from_univariate(3, 2, &u), p);
        let d = p.derivative(0);
        assert_eq!(d, (&x(3, 0) * &x(3, 2).pow(2)).scale(&rat(2)));
    }

    #[test]
    fn display() {
        let p = &x(2, 0).pow(2).scale(&rat(-3)) + &MPoly::constant(2, rat(1));
        assert_eq!(p.display_with(&default_names(2, 0)).to_string(), "-3*x0^2 + 1");
    }
}
