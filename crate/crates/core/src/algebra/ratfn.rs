use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::MPoly;
use super::scalar::{PrimeField, Rational};

/// A reduced rational function `num / den`: coprime, with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    /// Canonicalize `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        assert_eq!(num.nvars(), den.nvars());
        if num.is_zero() {
            return Some(RatFn::zero(num.nvars()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Some(Self::from_coprime(num, den))
    }

    /// Normalize scalars only; caller guarantees coprimality.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFn {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, v))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.constant_value()? / self.den.constant_value()?)
        } else {
            None
        }
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn recip(&self) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> RatFn {
        if e >= 0 {
            RatFn {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            }
        } else {
            self.recip()
                .expect("negative power of zero")
                .pow(-e)
        }
    }

    pub fn derivative(&self, v: usize) -> RatFn {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        RatFn::new(n, self.den.pow(2)).expect("nonzero denominator")
    }

    /// `None` at a pole (denominator vanishes).
    pub fn eval(&self, pt: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(pt) / d)
    }

    pub fn eval_fp(&self, field: &PrimeField, pt: &[u64]) -> Option<u64> {
        let d = self.den.eval_fp(field, pt)?;
        let n = self.num.eval_fp(field, pt)?;
        Some(field.mul(n, field.inv(d)?))
    }

    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> RatFn {
        RatFn {
            num: self.num.remap(new_nvars, map),
            den: self.den.remap(new_nvars, map),
        }
    }

    pub fn extend_vars(&self, extra: usize) -> RatFn {
        RatFn {
            num: self.num.extend_vars(extra),
            den: self.den.extend_vars(extra),
        }
    }

    pub fn drop_vars(&self, keep: &[bool]) -> RatFn {
        RatFn {
            num: self.num.drop_vars(keep),
            den: self.den.drop_vars(keep),
        }
    }

    /// `f(..., c*x_v, ...)`, re-reduced.
    pub fn scale_var(&self, v: usize, c: &Rational) -> Option<RatFn> {
        RatFn::new(self.num.scale_var(v, c), self.den.scale_var(v, c))
    }

    /// Substitute a scalar for `x_v`; `None` if the denominator vanishes identically.
    pub fn substitute_scalar(&self, v: usize, value: &Rational) -> Option<RatFn> {
        RatFn::new(
            self.num.substitute_scalar(v, value),
            self.den.substitute_scalar(v, value),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> DisplayRatFn<'a> {
        DisplayRatFn { f: self, names }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return RatFn::from_coprime(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFn::from_coprime(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        RatFn::new(num, den).unwrap()
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFn::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

pub struct DisplayRatFn<'a> {
    f: &'a RatFn,
    names: &'a [String],
}

impl fmt::Display for DisplayRatFn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MPoly, den: bool| {
            let s = p.display_with(self.names).to_string();
            if p.num_terms() > 1 || (den && s.contains(['*', '/'])) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.f.den.is_one() {
            write!(f, "{}", self.f.num.display_with(self.names))
        } else {
            write!(f, "{}/{}", wrap(&self.f.num, false), wrap(&self.f.den, true))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn reduction_and_normalization() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = RatFn::new(&x * &y, (&x * &y.scale(&rat(2))) + x.clone()).unwrap();
        assert_eq!(f.num(), &y.scale(&crate::algebra::scalar::rat_frac(1, 2)));
        assert_eq!(f.den().leading_coeff(), rat(1));
        assert!(RatFn::new(x.clone(), MPoly::zero(2)).is_none());
    }

    #[test]
    fn field_operations() {
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let a = &x / &y;
        let b = &y / &x;
        assert!((&a * &b).is_one());
        let s = &a + &b;
        let back = &(&s - &b) - &a;
        assert!(back.is_zero());
        let d = a.derivative(1);
        assert_eq!(d, -&(&x / &(&y * &y)));
    }
}
