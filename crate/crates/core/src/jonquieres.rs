//! The de Jonquières group: maps preserving the lines of the projection
//! that forgets the last affine coordinate, as pairs (fiber matrix, base map).
//!
//! A pair `(a, b)` acts by `(x', y) ↦ (b(x'), a(b(x')) · y)`. The matrix is
//! read at the image point, which makes the product law
//! `(a, b)(a', b') = (a · b(a'), b ∘ b')` with `b(a') = a' ∘ b⁻¹` hold exactly.

use std::fmt;

use crate::algebra::mpoly::default_names;
use crate::algebra::{square_class_of, substitute_ratfn, MPoly, RatFn, SquareClass};
use crate::birmap::{AffineMap, ProjMap};
use crate::error::{Error, Result};

/// A 2×2 matrix over `K = Q(x1..x_{n-1})` up to a nonzero scalar, stored
/// with its first nonzero entry (row-major) equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2K {
    e: [RatFn; 4],
}

impl Mat2K {
    pub fn new(entries: [RatFn; 4]) -> Result<Self> {
        let nv = entries[0].nvars();
        if entries.iter().any(|x| x.nvars() != nv) {
            return Err(Error::Invalid("matrix entries over different fields".into()));
        }
        let det = &(&entries[0] * &entries[3]) - &(&entries[1] * &entries[2]);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = entries.iter().find(|x| !x.is_zero()).unwrap().clone();
        if lead.is_one() {
            return Ok(Mat2K { e: entries });
        }
        let [a, b, c, d] = entries;
        Ok(Mat2K {
            e: [&a / &lead, &b / &lead, &c / &lead, &d / &lead],
        })
    }

    pub fn from_rows(rows: [[RatFn; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = rows;
        Self::new([a, b, c, d])
    }

    pub fn identity(nvars: usize) -> Self {
        Mat2K {
            e: [RatFn::one(nvars), RatFn::zero(nvars), RatFn::zero(nvars), RatFn::one(nvars)],
        }
    }

    pub fn diagonal(a: RatFn, d: RatFn) -> Result<Self> {
        let n = a.nvars();
        Self::new([a, RatFn::zero(n), RatFn::zero(n), d])
    }

    /// Number of base variables.
    pub fn nvars(&self) -> usize {
        self.e[0].nvars()
    }

    pub fn entries(&self) -> &[RatFn; 4] {
        &self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFn {
        &self.e[2 * i + j]
    }

    /// Determinant of the normalized representative.
    pub fn det(&self) -> RatFn {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2K::identity(self.nvars())
    }

    pub fn mul(&self, o: &Mat2K) -> Mat2K {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Mat2K::new([
            &(a * p) + &(b * r),
            &(a * q) + &(b * s),
            &(c * p) + &(d * r),
            &(c * q) + &(d * s),
        ])
        .expect("product of invertible matrices")
    }

    /// Inverse class (the adjugate).
    pub fn inverse(&self) -> Mat2K {
        let [a, b, c, d] = &self.e;
        Mat2K::new([d.clone(), -b, -c, a.clone()]).expect("adjugate of invertible matrix")
    }

    /// Entrywise substitution `x' ← subs(x')`.
    pub fn substitute(&self, subs: &[RatFn]) -> Result<Mat2K> {
        let [a, b, c, d] = &self.e;
        Mat2K::new([
            substitute_ratfn(a, subs)?,
            substitute_ratfn(b, subs)?,
            substitute_ratfn(c, subs)?,
            substitute_ratfn(d, subs)?,
        ])
    }

    /// The Möbius action on a fiber coordinate `y`: `(a y + b) / (c y + d)`.
    /// Entries and `y` must live in the same ring.
    pub fn mobius(&self, y: &RatFn) -> RatFn {
        let [a, b, c, d] = &self.e;
        let num = &(a * y) + b;
        let den = &(c * y) + d;
        &num / &den
    }
}

impl fmt::Display for Mat2K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars(), 1);
        let s: Vec<String> = self.e.iter().map(|x| x.display_with(&names).to_string()).collect();
        write!(f, "[[{}, {}], [{}, {}]]", s[0], s[1], s[2], s[3])
    }
}

/// An element of the de Jonquières group in dimension `n = base.dim() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonqElt {
    fiber: Mat2K,
    base: AffineMap,
}

impl JonqElt {
    /// The base must be certified birational; an inversion rule is tried if
    /// no certificate is attached.
    pub fn new(fiber: Mat2K, base: AffineMap) -> Result<Self> {
        if fiber.nvars() != base.dim() {
            return Err(Error::DimensionMismatch(fiber.nvars(), base.dim()));
        }
        let base = if base.has_inverse() {
            base
        } else {
            let inv = base.invert()?;
            base.with_inverse_unchecked(inv)
        };
        Ok(JonqElt { fiber, base })
    }

    pub fn identity(n: usize) -> Self {
        JonqElt {
            fiber: Mat2K::identity(n - 1),
            base: AffineMap::identity(n - 1),
        }
    }

    /// Dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    pub fn fiber(&self) -> &Mat2K {
        &self.fiber
    }

    pub fn base(&self) -> &AffineMap {
        &self.base
    }

    fn base_inverse(&self) -> AffineMap {
        self.base.inverse().expect("base carries an inverse")
    }

    pub fn is_identity(&self) -> bool {
        self.fiber.is_identity() && self.base.is_identity()
    }

    /// `(a, b)(a', b') = (a · b(a'), b ∘ b')`.
    pub fn compose(&self, o: &JonqElt) -> Result<JonqElt> {
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch(self.dim(), o.dim()));
        }
        let moved = act(&self.base_inverse(), &o.fiber)?;
        Ok(JonqElt {
            fiber: self.fiber.mul(&moved),
            base: self.base.compose(&o.base)?,
        })
    }

    /// `(a, b)⁻¹ = (b⁻¹(a⁻¹), b⁻¹)`; `b⁻¹` acts by substituting `b`.
    pub fn inverse(&self) -> Result<JonqElt> {
        let binv = self.base_inverse();
        let fiber = act(&self.base, &self.fiber.inverse())?;
        Ok(JonqElt { fiber, base: binv })
    }

    fn embed_raw(&self) -> Result<AffineMap> {
        let n = self.dim();
        let m = n - 1;
        let source = self.fiber.substitute(self.base.components())?;
        let lifted: [RatFn; 4] = source.e.clone().map(|x| x.extend_vars(1));
        let lifted = Mat2K { e: lifted };
        let y = RatFn::var(n, m);
        let mut comps: Vec<RatFn> = self.base.components().iter().map(|c| c.extend_vars(1)).collect();
        comps.push(lifted.mobius(&y));
        AffineMap::new(comps)
    }

    /// The map `(x', y) ↦ (b(x'), a(b(x')) · y)` with its inverse attached.
    pub fn embed(&self) -> Result<AffineMap> {
        let f = self.embed_raw()?;
        let g = self.inverse()?.embed_raw()?;
        Ok(f.with_inverse_unchecked(g))
    }
}

/// `b(a) = a ∘ b⁻¹`, given `b⁻¹`.
fn act(b_inverse: &AffineMap, a: &Mat2K) -> Result<Mat2K> {
    if a.entries().iter().all(|x| x.is_constant()) {
        return Ok(a.clone());
    }
    a.substitute(b_inverse.components())
}

pub fn embed(e: &JonqElt) -> Result<AffineMap> {
    e.embed()
}

pub fn compose_semidirect(e: &JonqElt, o: &JonqElt) -> Result<JonqElt> {
    e.compose(o)
}

/// Structural part of the membership test: base free of `y`, `y`-component
/// a Möbius transformation of `y` with nonzero determinant.
fn split_structure(f: &AffineMap) -> Result<(Vec<RatFn>, Mat2K)> {
    let n = f.dim();
    if n < 2 {
        return Err(Error::NotJonquieres("dimension must be at least 2"));
    }
    let m = n - 1;
    let mut keep = vec![true; n];
    keep[m] = false;
    let comps = f.components();
    let mut base = Vec::with_capacity(m);
    for c in &comps[..m] {
        if c.uses_var(m) {
            return Err(Error::NotJonquieres("base components depend on the fiber coordinate"));
        }
        base.push(c.drop_vars(&keep));
    }
    let r = &comps[m];
    let (num, den) = (r.num(), r.den());
    if num.degree_in(m) > 1 || den.degree_in(m) > 1 {
        return Err(Error::NotJonquieres("fiber component is not of degree one in y"));
    }
    let coeffs = |p: &MPoly| -> (RatFn, RatFn) {
        let mut u = p.to_univariate(m);
        u.resize(2, MPoly::zero(n));
        (
            RatFn::from_poly(u[1].drop_vars(&keep)),
            RatFn::from_poly(u[0].drop_vars(&keep)),
        )
    };
    let (n1, n0) = coeffs(num);
    let (d1, d0) = coeffs(den);
    let a = Mat2K::new([n1, n0, d1, d0])
        .map_err(|_| Error::NotJonquieres("fiber transformation is degenerate"))?;
    Ok((base, a))
}

pub fn is_in_jn(f: &AffineMap) -> bool {
    split_structure(f).is_ok()
}

/// Inverse of [`embed`] on its image. The base inverse comes from the
/// certificate of `f` when present, else from the inversion rules.
pub fn extract(f: &AffineMap) -> Result<JonqElt> {
    let (base_comps, source) = split_structure(f)?;
    let m = base_comps.len();
    let base = AffineMap::new(base_comps)?;
    let base_inv = match f.inverse() {
        Some(inv) => {
            let mut keep = vec![true; m + 1];
            keep[m] = false;
            let comps = &inv.components()[..m];
            if comps.iter().any(|c| c.uses_var(m)) {
                return Err(Error::NotJonquieres("inverse certificate does not preserve the fibration"));
            }
            AffineMap::new(comps.iter().map(|c| c.drop_vars(&keep)).collect())?
        }
        None => base.invert()?,
    };
    let fiber = act(&base_inv, &source)?;
    Ok(JonqElt {
        fiber,
        base: base.with_inverse_unchecked(base_inv),
    })
}

/// The involution `(x', y) ↦ (x', h(x') / y)`.
pub fn f_h(h: &RatFn) -> Result<JonqElt> {
    let m = h.nvars();
    let fiber = Mat2K::new([RatFn::zero(m), h.clone(), RatFn::one(m), RatFn::zero(m)])?;
    Ok(JonqElt {
        fiber,
        base: AffineMap::identity(m),
    })
}

pub fn det_class(a: &Mat2K) -> SquareClass {
    square_class_of(&a.det()).expect("invertible matrix has nonzero determinant")
}

pub fn in_j1(a: &Mat2K) -> bool {
    det_class(a).is_trivial()
}

/// Projective inversion rule for de Jonquières maps.
pub(crate) fn invert_projective(f: &ProjMap) -> Result<ProjMap> {
    let aff = f.to_affine().map_err(|_| Error::NoInversionRule)?;
    let e = extract(&aff).map_err(|e| match e {
        Error::NotJonquieres(_) => Error::NoInversionRule,
        other => other,
    })?;
    let g = e.inverse()?.embed_raw()?.to_proj()?;
    Ok(g.with_inverse_unchecked(f.stripped()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x1() -> RatFn {
        RatFn::var(1, 0)
    }

    #[test]
    fn identity_embeds_to_identity() {
        assert!(JonqElt::identity(2).embed().unwrap().is_identity());
        assert!(JonqElt::identity(3).embed().unwrap().is_identity());
    }

    #[test]
    fn involution_f_h() {
        let h = &x1() + &RatFn::one(1);
        let e = f_h(&h).unwrap();
        let f = e.embed().unwrap();
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let hh = &x + &RatFn::one(2);
        assert_eq!(f, AffineMap::new(vec![x.clone(), &hh / &y]).unwrap());
        assert!(f.compose(&f).unwrap().is_identity());
        assert_eq!(extract(&f).unwrap(), e);
        assert_eq!(det_class(e.fiber()), square_class_of(&(-&h)).unwrap());
        assert!(!in_j1(f_h(&x1()).unwrap().fiber()));
    }

    #[test]
    fn extract_sigma_affine() {
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let s = AffineMap::new(vec![x.recip().unwrap(), y.recip().unwrap()]).unwrap();
        let e = extract(&s).unwrap();
        assert_eq!(e.base(), &AffineMap::new(vec![x1().recip().unwrap()]).unwrap());
        let anti = Mat2K::new([RatFn::zero(1), RatFn::one(1), RatFn::one(1), RatFn::zero(1)]).unwrap();
        assert_eq!(e.fiber(), &anti);
        let sq = AffineMap::new(vec![x.clone(), &y * &y]).unwrap();
        assert!(matches!(extract(&sq), Err(Error::NotJonquieres(_))));
        let swap = AffineMap::new(vec![y.clone(), x.clone()]).unwrap();
        assert!(!is_in_jn(&swap));
    }

    #[test]
    fn semidirect_law_matches_composition() {
        let h = &x1() + &RatFn::constant(1, rat(2));
        let base = AffineMap::new(vec![x1().recip().unwrap()]).unwrap();
        let a = Mat2K::new([x1(), RatFn::one(1), RatFn::zero(1), RatFn::one(1)]).unwrap();
        let e1 = JonqElt::new(a, base).unwrap();
        let e2 = JonqElt::new(
            Mat2K::new([RatFn::one(1), h.clone(), RatFn::one(1), RatFn::zero(1)]).unwrap(),
            AffineMap::new(vec![&x1() + &RatFn::one(1)]).unwrap(),
        )
        .unwrap();
        let lhs = e1.compose(&e2).unwrap().embed().unwrap();
        let rhs = e1.embed().unwrap().compose(&e2.embed().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let inv = e1.inverse().unwrap();
        assert!(e1.compose(&inv).unwrap().is_identity());
        assert_eq!(extract(&e2.embed().unwrap()).unwrap(), e2);
    }

    #[test]
    fn jonquieres_projective_inverse() {
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let f = AffineMap::new(vec![x.clone(), &y * &x]).unwrap();
        let p = f.to_proj().unwrap().stripped();
        let g = p.invert().unwrap();
        assert_eq!(g.to_affine().unwrap(), AffineMap::new(vec![x.clone(), &y / &x]).unwrap());
        assert!(p.compose(&g).unwrap().is_identity());
    }
}
