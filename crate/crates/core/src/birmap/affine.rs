use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ProjMap;
use crate::algebra::mpoly::default_names;
use crate::algebra::{lcm, substitute_ratfn, MPoly, PrimeField, RatFn, Rational};
use crate::error::{Error, Result};

/// A rational self-map of affine n-space, components in `x1..xn`; the last
/// coordinate plays the role of the normal coordinate `y`.
#[derive(Clone)]
pub struct AffineMap {
    comps: Arc<Vec<RatFn>>,
    inverse: Option<Arc<AffineMap>>,
}

impl PartialEq for AffineMap {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl Eq for AffineMap {}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap{}", self)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.comps.len(), 1);
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| c.display_with(&names).to_string())
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl AffineMap {
    pub fn new(comps: Vec<RatFn>) -> Result<Self> {
        let n = comps.len();
        if n == 0 {
            return Err(Error::Invalid("an affine map needs at least one component".into()));
        }
        if let Some(c) = comps.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch(c.nvars(), n));
        }
        Ok(AffineMap {
            comps: Arc::new(comps),
            inverse: None,
        })
    }

    pub fn identity(n: usize) -> Self {
        let f = AffineMap {
            comps: Arc::new((0..n).map(|i| RatFn::var(n, i)).collect()),
            inverse: None,
        };
        f.clone().with_inverse_unchecked(f)
    }

    pub(crate) fn with_inverse_unchecked(mut self, inv: AffineMap) -> Self {
        self.inverse = Some(Arc::new(inv.stripped()));
        self
    }

    /// Attach `inv` after checking `self ∘ inv = id` exactly.
    pub fn certify(self, inv: AffineMap) -> Result<Self> {
        if !self.stripped().compose(&inv.stripped())?.is_identity() {
            return Err(Error::Invalid("candidate inverse does not compose to the identity".into()));
        }
        Ok(self.with_inverse_unchecked(inv))
    }

    pub fn stripped(&self) -> AffineMap {
        AffineMap {
            comps: self.comps.clone(),
            inverse: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RatFn] {
        &self.comps
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = self.inverse.as_ref()?;
        Some(inv.as_ref().clone().with_inverse_unchecked(self.stripped()))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.comps.iter().enumerate().all(|(i, c)| *c == RatFn::var(n, i))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &AffineMap) -> Result<AffineMap> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch(self.dim(), g.dim()));
        }
        let comps = self
            .comps
            .iter()
            .map(|c| substitute_ratfn(c, &g.comps))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::CompositionDegenerate)?;
        let mut out = AffineMap {
            comps: Arc::new(comps),
            inverse: None,
        };
        if let (Some(fi), Some(gi)) = (&self.inverse, &g.inverse) {
            if let Ok(inv) = gi.compose(fi) {
                out.inverse = Some(Arc::new(inv));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch(p.len(), self.dim()));
        }
        self.comps
            .iter()
            .map(|c| c.eval(p).ok_or(Error::UndefinedAtPoint))
            .collect()
    }

    /// `None` at a pole or when a coefficient does not reduce mod p.
    pub fn eval_fp(&self, field: &PrimeField, p: &[u64]) -> Option<Vec<u64>> {
        self.comps.iter().map(|c| c.eval_fp(field, p)).collect()
    }

    /// Projective form `(R_n : R_1 : ... : R_{n-1} : 1)` with denominators cleared.
    pub fn to_proj(&self) -> Result<ProjMap> {
        let f = affine_to_proj(&self.comps)?;
        match &self.inverse {
            Some(inv) => Ok(f.with_inverse_unchecked(affine_to_proj(&inv.comps)?)),
            None => Ok(f),
        }
    }

    /// Invert by certificate, or via the projective inversion rules.
    pub fn invert(&self) -> Result<AffineMap> {
        if let Some(inv) = self.inverse() {
            return Ok(inv);
        }
        let g = self.to_proj()?.invert()?.to_affine()?;
        Ok(g.with_inverse_unchecked(self.stripped()))
    }

    pub fn jacobian_at(&self, p: &[Rational]) -> Result<super::TangentAction> {
        super::TangentAction::new(jacobian_matrix(self, p)?)
    }
}

/// Homogenize an affine polynomial in `n` variables into `x0..xn` (chart
/// `x_n = 1`, last affine variable `= x0`), to degree `deg`.
fn homogenize_affine(p: &MPoly, deg: u32) -> MPoly {
    let n = p.nvars();
    let h = p.homogenize(n, deg);
    let map: Vec<usize> = (0..=n)
        .map(|j| if j == n { n } else if j + 1 == n { 0 } else { j + 1 })
        .collect();
    h.remap(n + 1, &map)
}

pub(super) fn affine_to_proj(comps: &[RatFn]) -> Result<ProjMap> {
    let n = comps.len();
    // (num, den) pairs, homogeneous of a common degree per pair
    let parts: Vec<(MPoly, MPoly)> = comps
        .iter()
        .map(|r| {
            let dn = r.num().total_degree().unwrap_or(0);
            let dd = r.den().total_degree().unwrap_or(0);
            let d = dn.max(dd);
            if r.is_zero() {
                (MPoly::zero(n + 1), MPoly::one(n + 1))
            } else {
                (homogenize_affine(r.num(), d), homogenize_affine(r.den(), d))
            }
        })
        .collect();
    let mut l = MPoly::one(n + 1);
    for (_, d) in &parts {
        if !d.is_one() {
            l = lcm(&l, d);
        }
    }
    // num * (l / den) has degree deg(l) because each pair shares a degree
    let cleared = |i: usize| -> MPoly {
        let (num, den) = &parts[i];
        num * &l.div_exact(den).expect("lcm divisible by each denominator")
    };
    let mut out = vec![cleared(n - 1)];
    for i in 0..n - 1 {
        out.push(cleared(i));
    }
    out.push(l.clone());
    ProjMap::new(out)
}

pub(super) fn proj_to_affine(f: &ProjMap) -> Result<AffineMap> {
    let n = f.dim();
    let one = Rational::one();
    let mut keep = vec![true; n + 1];
    keep[n] = false;
    let map: Vec<usize> = (0..n).map(|i| if i == 0 { n - 1 } else { i - 1 }).collect();
    let dehom = |p: &MPoly| p.substitute_scalar(n, &one).drop_vars(&keep).remap(n, &map);
    let comps = f.components();
    let w = dehom(&comps[n]);
    if w.is_zero() {
        return Err(Error::NotInChart);
    }
    let mut out = Vec::with_capacity(n);
    for i in 1..n {
        out.push(RatFn::new(dehom(&comps[i]), w.clone()).unwrap());
    }
    out.push(RatFn::new(dehom(&comps[0]), w).unwrap());
    AffineMap::new(out)
}

pub(super) fn jacobian_matrix(f: &AffineMap, p: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let n = f.dim();
    if p.len() != n {
        return Err(Error::DimensionMismatch(p.len(), n));
    }
    f.components()
        .iter()
        .map(|r| {
            let d = r.den().eval(p);
            if d.is_zero() {
                return Err(Error::UndefinedAtPoint);
            }
            let nv = r.num().eval(p);
            let d2 = &d * &d;
            Ok((0..n)
                .map(|j| {
                    let dn = r.num().derivative(j).eval(p);
                    let dd = r.den().derivative(j).eval(p);
                    (&dn * &d - &nv * &dd) / &d2
                })
                .collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xy() -> (RatFn, RatFn) {
        (RatFn::var(2, 0), RatFn::var(2, 1))
    }

    #[test]
    fn projective_round_trip() {
        let (x, y) = xy();
        let f = AffineMap::new(vec![x.clone(), &y * &x]).unwrap();
        let p = f.to_proj().unwrap();
        assert_eq!(p.to_affine().unwrap(), f);
        let g = AffineMap::new(vec![&x / &y, &(&x + &y) / &(&x * &x)]).unwrap();
        assert_eq!(g.to_proj().unwrap().to_affine().unwrap(), g);
    }

    #[test]
    fn jacobians() {
        let (x, y) = xy();
        let a = rat(3);
        let b = rat(5);
        let o = [rat(0), rat(0)];
        let d = AffineMap::new(vec![x.scale(&a), y.scale(&b)]).unwrap();
        let j = d.jacobian_at(&o).unwrap();
        assert_eq!(j.matrix(), &[vec![rat(3), rat(0)], vec![rat(0), rat(5)]]);
        let s = AffineMap::new(vec![&x + &(&y * &y), y.clone()]).unwrap();
        assert!(s.jacobian_at(&o).unwrap().is_scalar());
        let q = AffineMap::new(vec![&x * &x, y.clone()]).unwrap();
        assert_eq!(q.jacobian_at(&o), Err(Error::NotLocalIsomorphism));
    }

    #[test]
    fn affine_compose_with_inverse() {
        let (x, y) = xy();
        let f = AffineMap::new(vec![x.clone(), &y * &x]).unwrap();
        let g = f.invert().unwrap();
        assert_eq!(g, AffineMap::new(vec![x.clone(), &y / &x]).unwrap());
        assert!(f.compose(&g).unwrap().is_identity());
    }
}
