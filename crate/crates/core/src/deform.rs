//! The normal derivative along `X = {y = 0}` and the family joining it to the map.

use num_traits::{One, Zero};

use crate::algebra::{MPoly, PrimeField, RatFn, Rational};
use crate::birmap::AffineMap;
use crate::error::{Error, Result};
use crate::paths::PathFamily;

/// `f = (fX, fY)` with `fY = y · gY`; the normal coordinate `y` is the last variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSplit {
    pub fx: Vec<RatFn>,
    pub fy: RatFn,
    pub gy: RatFn,
}

pub fn normal_split(f: &AffineMap) -> Result<NormalSplit> {
    let n = f.dim();
    if n < 2 {
        return Err(Error::Precondition("normal split needs dimension >= 2"));
    }
    let y = n - 1;
    let zero = Rational::zero();
    let comps = f.components();
    for c in &comps[..y] {
        if c.den().substitute_scalar(y, &zero).is_zero() {
            return Err(Error::BaseUndefinedOnX);
        }
    }
    let fy = comps[y].clone();
    if fy.den().substitute_scalar(y, &zero).is_zero() {
        return Err(Error::DoesNotPreserveX);
    }
    if !fy.num().substitute_scalar(y, &zero).is_zero() {
        return Err(Error::DoesNotPreserveX);
    }
    let mut e = vec![0u32; n];
    e[y] = 1;
    let reduced = fy.num().div_monomial(&e);
    if reduced.substitute_scalar(y, &zero).is_zero() {
        return Err(Error::ContractsNormalDirection);
    }
    let gy = RatFn::new(reduced, fy.den().clone()).expect("nonzero denominator");
    Ok(NormalSplit {
        fx: comps[..y].to_vec(),
        fy,
        gy,
    })
}

impl NormalSplit {
    pub fn dim(&self) -> usize {
        self.fx.len() + 1
    }

    /// `F(t0) = (fX(x, t0 y), y · gY(x, t0 y))`; at `t0 = 0` this is the normal derivative.
    pub fn specialize(&self, t0: &Rational) -> AffineMap {
        let n = self.dim();
        let y = n - 1;
        let at = |r: &RatFn| r.scale_var(y, t0).expect("denominator nonzero on X");
        let mut comps: Vec<RatFn> = self.fx.iter().map(at).collect();
        comps.push(&RatFn::var(n, y) * &at(&self.gy));
        AffineMap::new(comps).expect("valid dimensions")
    }

    /// The family as rational functions in `(x1..xn, t)`.
    pub fn symbolic(&self) -> Vec<RatFn> {
        let n = self.dim();
        let y = n - 1;
        let subs: Vec<MPoly> = (0..n)
            .map(|i| {
                let v = MPoly::var(n + 1, i);
                if i == y {
                    &v * &MPoly::var(n + 1, n)
                } else {
                    v
                }
            })
            .collect();
        let lift = |r: &RatFn| {
            let num = crate::algebra::compose_poly(r.num(), &subs);
            let den = crate::algebra::compose_poly(r.den(), &subs);
            RatFn::new(num, den).expect("denominator nonzero")
        };
        let mut out: Vec<RatFn> = self.fx.iter().map(lift).collect();
        out.push(&RatFn::var(n + 1, y) * &lift(&self.gy));
        out
    }

    /// Evaluate `F(t)` at an affine point mod p; `None` at a pole.
    pub fn eval_fp(&self, field: &PrimeField, t: u64, v: &[u64]) -> Option<Vec<u64>> {
        let n = self.dim();
        let y = n - 1;
        let mut w = v.to_vec();
        w[y] = field.mul(t, v[y]);
        let mut out: Vec<u64> = self
            .fx
            .iter()
            .map(|r| r.eval_fp(field, &w))
            .collect::<Option<_>>()?;
        out.push(field.mul(v[y], self.gy.eval_fp(field, &w)?));
        Some(out)
    }
}

/// `f0 = (fX(x, 0), y · gY(x, 0))`, carrying the normal derivative of the
/// inverse certificate when that splits too.
pub fn normal_derivative(f: &AffineMap) -> Result<AffineMap> {
    let s = normal_split(f)?;
    let f0 = s.specialize(&Rational::zero());
    match f.inverse().map(|r| normal_split(&r)) {
        Some(Ok(rs)) => Ok(f0.with_inverse_unchecked(rs.specialize(&Rational::zero()))),
        _ => Ok(f0),
    }
}

/// The family `F(t)` with `F(1) = f` and `F(0) = f0`; the inverse family
/// comes from the split of the inverse certificate.
pub fn deformation_family(f: &AffineMap) -> Result<PathFamily> {
    let fwd = normal_split(f)?;
    let inv = match f.inverse() {
        Some(r) => Some(normal_split(&r)?),
        None => None,
    };
    Ok(PathFamily::deformation(fwd, inv))
}

/// `s_t : (x, y) ↦ (x, t y)`.
pub fn normal_scaling(n: usize, t: &Rational) -> AffineMap {
    let mut comps: Vec<RatFn> = (0..n - 1).map(|i| RatFn::var(n, i)).collect();
    comps.push(RatFn::var(n, n - 1).scale(t));
    let f = AffineMap::new(comps).unwrap();
    if t.is_zero() {
        return f;
    }
    let mut inv: Vec<RatFn> = (0..n - 1).map(|i| RatFn::var(n, i)).collect();
    inv.push(RatFn::var(n, n - 1).scale(&(Rational::one() / t)));
    f.with_inverse_unchecked(AffineMap::new(inv).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::jonquieres::is_in_jn;

    fn xy() -> (RatFn, RatFn) {
        (RatFn::var(2, 0), RatFn::var(2, 1))
    }

    #[test]
    fn splits() {
        let (x, y) = xy();
        let f = AffineMap::new(vec![x.clone(), &y * &x]).unwrap();
        assert_eq!(normal_split(&f).unwrap().gy, x);
        let g = AffineMap::new(vec![&x + &(&y * &y), y.clone()]).unwrap();
        assert!(normal_split(&g).unwrap().gy.is_one());
        let h = AffineMap::new(vec![x.clone(), &y * &y]).unwrap();
        assert_eq!(normal_split(&h), Err(Error::ContractsNormalDirection));
        let k = AffineMap::new(vec![x.clone(), &y + &RatFn::one(2)]).unwrap();
        assert_eq!(normal_split(&k), Err(Error::DoesNotPreserveX));
        let b = AffineMap::new(vec![y.recip().unwrap(), y.clone()]).unwrap();
        assert_eq!(normal_split(&b), Err(Error::BaseUndefinedOnX));
    }

    #[test]
    fn normal_derivatives() {
        let (x, y) = xy();
        let g = AffineMap::new(vec![&x + &(&y * &y), y.clone()]).unwrap();
        assert!(normal_derivative(&g).unwrap().is_identity());
        let f = AffineMap::new(vec![&x.recip().unwrap() + &y, y.clone()]).unwrap();
        let f0 = normal_derivative(&f).unwrap();
        assert_eq!(f0, AffineMap::new(vec![x.recip().unwrap(), y.clone()]).unwrap());
        let h = &x + &RatFn::constant(2, rat(3));
        let k = AffineMap::new(vec![x.clone(), &(&y * &h) / &(&RatFn::one(2) + &y)]).unwrap();
        let k0 = normal_derivative(&k).unwrap();
        assert_eq!(k0, AffineMap::new(vec![x.clone(), &h * &y]).unwrap());
        assert!(is_in_jn(&k0));
        assert_eq!(normal_derivative(&k0).unwrap(), k0);
    }

    #[test]
    fn conjugation_identity() {
        let (x, y) = xy();
        let f = AffineMap::new(vec![&x + &(&y * &y), &y + &(&x * &y)]).unwrap();
        let s = normal_split(&f).unwrap();
        for t in [rat(2), rat(-3), crate::algebra::rat_frac(1, 5)] {
            let st = normal_scaling(2, &t);
            let conj = st.inverse().unwrap().compose(&f).unwrap().compose(&st).unwrap();
            assert_eq!(s.specialize(&t), conj);
        }
        assert_eq!(s.specialize(&rat(1)), f);
    }
}
