//! Birational self-maps of projective and affine space.

mod affine;
mod compose;
mod point;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::linalg::{determinant, inverse as mat_inverse};
use crate::algebra::mpoly::default_names;
use crate::algebra::{gcd_many, rat, MPoly, Monomial, PrimeField, Rational};
use crate::error::{Error, Result};

pub use affine::AffineMap;
pub use compose::compose_chain;
pub use point::{Point, TangentAction};

/// Inverse certificate: the inverse is `chain[0] ∘ chain[1] ∘ ...`, composed on demand.
#[derive(Clone)]
struct InverseCert {
    chain: Arc<Vec<ProjMap>>,
    cache: Arc<OnceLock<ProjMap>>,
}

impl InverseCert {
    fn single(f: ProjMap) -> Self {
        let cache = OnceLock::new();
        let _ = cache.set(f.clone());
        InverseCert {
            chain: Arc::new(vec![f]),
            cache: Arc::new(cache),
        }
    }

    fn lazy(chain: Vec<ProjMap>) -> Self {
        InverseCert {
            chain: Arc::new(chain),
            cache: Arc::new(OnceLock::new()),
        }
    }

    /// Factors of the inverse, using the materialized form when available.
    fn factors(&self) -> Vec<ProjMap> {
        match self.cache.get() {
            Some(f) => vec![f.clone()],
            None => self.chain.as_ref().clone(),
        }
    }
}

/// A rational self-map of `P^n`, stored in canonical form: components
/// coprime, first nonzero component with leading coefficient 1.
#[derive(Clone)]
pub struct ProjMap {
    comps: Arc<Vec<MPoly>>,
    degree: u32,
    inverse: Option<InverseCert>,
}

impl PartialEq for ProjMap {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl Eq for ProjMap {}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMap{}", self)
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.comps.len(), 0);
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| c.display_with(&names).to_string())
            .collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl ProjMap {
    /// Validate and canonicalize `(n+1)` homogeneous components in `x0..xn`.
    pub fn new(comps: Vec<MPoly>) -> Result<Self> {
        let k = comps.len();
        if k < 2 {
            return Err(Error::Invalid("a projective map needs at least two components".into()));
        }
        if let Some(c) = comps.iter().find(|c| c.nvars() != k) {
            return Err(Error::DimensionMismatch(c.nvars(), k));
        }
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroMap);
        }
        let mut degree = None;
        for c in comps.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        let g = gcd_many(&comps);
        let comps = if g.is_one() {
            comps
        } else {
            comps
                .iter()
                .map(|c| c.div_exact(&g).expect("gcd divides every component"))
                .collect()
        };
        Ok(Self::from_coprime(comps))
    }

    /// Scalar normalization only; components must already be coprime.
    pub(crate) fn from_coprime(comps: Vec<MPoly>) -> Self {
        let first = comps.iter().find(|c| !c.is_zero()).expect("nonzero map");
        let lc = first.leading_coeff();
        let degree = first.total_degree().unwrap();
        let comps = if lc.is_one() {
            comps
        } else {
            let inv = lc.recip();
            comps.iter().map(|c| c.scale(&inv)).collect()
        };
        ProjMap {
            comps: Arc::new(comps),
            degree,
            inverse: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let comps: Vec<MPoly> = (0..=n).map(|i| MPoly::var(n + 1, i)).collect();
        let id = ProjMap {
            comps: Arc::new(comps),
            degree: 1,
            inverse: None,
        };
        id.clone().with_inverse_unchecked(id)
    }

    /// Linear map `x ↦ A x`; the inverse matrix is attached as certificate.
    pub fn linear(matrix: &[Vec<Rational>]) -> Result<Self> {
        let k = matrix.len();
        if k < 2 || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Invalid("linear map needs a square matrix of size >= 2".into()));
        }
        let inv = mat_inverse(&matrix.to_vec()).ok_or(Error::SingularMatrix)?;
        let f = Self::from_coprime(matrix_comps(matrix));
        let g = Self::from_coprime(matrix_comps(&inv));
        Ok(f.with_inverse_unchecked(g))
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let k = entries.len();
        let m: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { entries[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::linear(&m)
    }

    /// The standard involution: the i-th component is the product of all other coordinates.
    pub fn standard_involution(n: usize) -> Self {
        assert!(n >= 1, "standard involution needs n >= 1");
        let comps: Vec<MPoly> = (0..=n)
            .map(|i| {
                let exps = (0..=n).map(|j| u32::from(j != i)).collect();
                MPoly::term(exps, Rational::one())
            })
            .collect();
        let s = Self::from_coprime(comps);
        s.clone().with_inverse_unchecked(s)
    }

    /// Attach an inverse known to be correct by construction.
    pub(crate) fn with_inverse_unchecked(mut self, inv: ProjMap) -> Self {
        self.inverse = Some(InverseCert::single(inv.stripped()));
        self
    }

    pub(crate) fn with_inverse_chain(mut self, chain: Vec<ProjMap>) -> Self {
        self.inverse = Some(InverseCert::lazy(chain.into_iter().map(|f| f.stripped()).collect()));
        self
    }

    /// Attach `inv` as inverse after checking `self ∘ inv = id` exactly.
    pub fn certify(self, inv: ProjMap) -> Result<Self> {
        let c = self.stripped().compose(&inv.stripped())?;
        if !c.is_identity() {
            return Err(Error::Invalid("candidate inverse does not compose to the identity".into()));
        }
        Ok(self.with_inverse_unchecked(inv))
    }

    /// Copy without the inverse certificate.
    pub fn stripped(&self) -> ProjMap {
        ProjMap {
            comps: self.comps.clone(),
            degree: self.degree,
            inverse: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[MPoly] {
        &self.comps
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// Materialized inverse certificate (carrying `self` as its own certificate).
    pub fn inverse(&self) -> Option<ProjMap> {
        let cert = self.inverse.as_ref()?;
        let inv = cert
            .cache
            .get_or_init(|| {
                compose_chain(&cert.chain)
                    .expect("certified inverse chain composes")
                    .stripped()
            })
            .clone();
        Some(inv.with_inverse_unchecked(self.stripped()))
    }

    /// Factor list of the inverse, without composing it.
    pub(crate) fn inverse_factors(&self) -> Option<Vec<ProjMap>> {
        self.inverse.as_ref().map(|c| c.factors())
    }

    pub fn is_identity(&self) -> bool {
        self.degree == 1
            && self
                .comps
                .iter()
                .enumerate()
                .all(|(i, c)| *c == MPoly::var(self.comps.len(), i))
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.comps.iter().all(|c| c.is_monomial())
    }

    /// Coefficient matrix of a linear map.
    pub fn linear_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        if !self.is_linear() {
            return None;
        }
        let k = self.comps.len();
        Some(
            self.comps
                .iter()
                .map(|c| {
                    (0..k)
                        .map(|j| c.coeff_of(Monomial::var(k, j).exps()))
                        .collect()
                })
                .collect(),
        )
    }

    pub(crate) fn is_invertible_linear(&self) -> bool {
        self.linear_matrix()
            .map(|m| !determinant(&m).is_zero())
            .unwrap_or(false)
    }

    /// `self ∘ g`, canonicalized; inverse certificates compose when both are present.
    pub fn compose(&self, g: &ProjMap) -> Result<ProjMap> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch(self.dim(), g.dim()));
        }
        if self.is_identity() {
            return Ok(g.clone());
        }
        if g.is_identity() {
            return Ok(self.clone());
        }
        let comps = compose::compose_components(self, g)?;
        let mut out = ProjMap::from_coprime(comps);
        if let (Some(fi), Some(gi)) = (self.inverse_factors(), g.inverse_factors()) {
            let mut chain = gi;
            chain.extend(fi);
            out = out.with_inverse_chain(chain);
        }
        Ok(out)
    }

    pub fn equal(&self, g: &ProjMap) -> bool {
        self == g
    }

    pub fn evaluate(&self, p: &Point) -> Result<Point> {
        if p.coords().len() != self.comps.len() {
            return Err(Error::DimensionMismatch(p.dim(), self.dim()));
        }
        let v: Vec<Rational> = self.comps.iter().map(|c| c.eval(p.coords())).collect();
        Point::new(v).map_err(|_| Error::UndefinedAtPoint)
    }

    /// Evaluation mod p. `None` when a coefficient does not reduce; an
    /// all-zero result means the point is in the base locus.
    pub fn eval_fp(&self, field: &PrimeField, pt: &[u64]) -> Option<Vec<u64>> {
        self.comps.iter().map(|c| c.eval_fp(field, pt)).collect()
    }

    /// Action on the projectivized tangent space at a fixed point `p`.
    pub fn tangent_action(&self, p: &Point) -> Result<TangentAction> {
        let image = self.evaluate(p)?;
        if !image.projectively_eq(p) {
            return Err(Error::PointNotFixed);
        }
        let k = p.coords().iter().position(|c| !c.is_zero()).unwrap();
        let pn = p.normalized();
        let x = pn.coords();
        // in the chart x_k = 1, the local map is u_j ↦ G_j / G_k (j ≠ k)
        let gk = self.comps[k].eval(x);
        let others: Vec<usize> = (0..self.comps.len()).filter(|&j| j != k).collect();
        let dgk: Vec<Rational> = others.iter().map(|&m| self.comps[k].derivative(m).eval(x)).collect();
        let gk2 = &gk * &gk;
        let mut mat = Vec::with_capacity(others.len());
        for &j in &others {
            let gj = self.comps[j].eval(x);
            let row = others
                .iter()
                .enumerate()
                .map(|(col, &m)| {
                    let dgj = self.comps[j].derivative(m).eval(x);
                    (&dgj * &gk - &gj * &dgk[col]) / &gk2
                })
                .collect();
            mat.push(row);
        }
        TangentAction::new(mat)
    }

    /// Restriction to the hyperplane `x0 = 0`, in coordinates `(x1 : ... : xn)`.
    /// When an inverse certificate restricts compatibly, the result carries it.
    pub fn restrict_to_h0(&self) -> Result<Restriction> {
        let map = self.restrict_raw()?;
        if let Some(inv) = self.inverse() {
            if let Ok(rinv) = inv.restrict_raw() {
                if let Ok(map) = map.clone().certify(rinv) {
                    return Ok(Restriction {
                        map,
                        certified: true,
                    });
                }
            }
        }
        Ok(Restriction {
            map,
            certified: false,
        })
    }

    fn restrict_raw(&self) -> Result<ProjMap> {
        if self.dim() < 2 {
            return Err(Error::Precondition("restriction needs n >= 2"));
        }
        if !self.comps[0].substitute_scalar(0, &Rational::zero()).is_zero() {
            return Err(Error::DoesNotPreserveH0);
        }
        let mut keep = vec![true; self.comps.len()];
        keep[0] = false;
        let zero = Rational::zero();
        let comps: Vec<MPoly> = self.comps[1..]
            .iter()
            .map(|c| c.substitute_scalar(0, &zero).drop_vars(&keep))
            .collect();
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::RestrictionDegenerate);
        }
        ProjMap::new(comps)
    }

    /// Invert by certificate, or the linear, monomial or de Jonquières rule.
    pub fn invert(&self) -> Result<ProjMap> {
        if let Some(inv) = self.inverse() {
            return Ok(inv);
        }
        if self.is_linear() {
            let m = self.linear_matrix().unwrap();
            let inv = mat_inverse(&m).ok_or(Error::SingularMatrix)?;
            let g = ProjMap::from_coprime(matrix_comps(&inv));
            return Ok(g.with_inverse_unchecked(self.stripped()));
        }
        if self.is_monomial() {
            return self.invert_monomial();
        }
        crate::jonquieres::invert_projective(self)
    }

    /// Monomial rule: in the chart `x0 = 1` the map is `u ↦ a·u^M`; invertible when `det M = ±1`.
    fn invert_monomial(&self) -> Result<ProjMap> {
        let k = self.comps.len();
        let n = k - 1;
        let lead = |c: &MPoly| c.terms()[0].clone();
        let (e0, c0) = lead(&self.comps[0]);
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut scal = Vec::with_capacity(n);
        for j in 1..k {
            let (ej, cj) = lead(&self.comps[j]);
            for i in 1..k {
                m[j - 1][i - 1] = rat(i64::from(ej.exps()[i]) - i64::from(e0.exps()[i]));
            }
            scal.push(&cj / &c0);
        }
        let det = determinant(&m);
        if det.abs() != Rational::one() {
            return Err(Error::NoInversionRule);
        }
        let inv = mat_inverse(&m).unwrap();
        // u_i = prod_j (v_j / a_j)^{N_ij},  v_j = x_j / x_0
        let mut exps: Vec<Vec<i64>> = Vec::with_capacity(k);
        let mut coeffs: Vec<Rational> = Vec::with_capacity(k);
        exps.push(vec![0; k]);
        coeffs.push(Rational::one());
        for row in &inv {
            let mut e = vec![0i64; k];
            let mut c = Rational::one();
            for (j, nij) in row.iter().enumerate() {
                let nij = nij.to_integer().to_i64().ok_or(Error::NoInversionRule)?;
                e[j + 1] += nij;
                e[0] -= nij;
                c *= pow_signed(&scal[j], -nij);
            }
            exps.push(e);
            coeffs.push(c);
        }
        let shift: Vec<i64> = (0..k).map(|v| exps.iter().map(|e| e[v]).min().unwrap().min(0)).collect();
        let comps: Vec<MPoly> = exps
            .iter()
            .zip(coeffs)
            .map(|(e, c)| {
                let ex = e.iter().zip(&shift).map(|(a, s)| (a - s) as u32).collect();
                MPoly::term(ex, c)
            })
            .collect();
        let g = ProjMap::new(comps)?;
        Ok(g.with_inverse_unchecked(self.stripped()))
    }

    /// Affine form in the chart `x_n = 1` (distinguished coordinate `x0` written last).
    pub fn to_affine(&self) -> Result<AffineMap> {
        affine::proj_to_affine(self)
    }

    /// Affine form carrying the materialized inverse, when certified.
    pub fn to_affine_certified(&self) -> Result<AffineMap> {
        let f = self.to_affine()?;
        match self.inverse() {
            Some(inv) => Ok(f.with_inverse_unchecked(inv.to_affine()?)),
            None => Ok(f),
        }
    }
}

/// Result of restricting to `H0`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub map: ProjMap,
    /// The inverse certificate restricted compatibly.
    pub certified: bool,
}

pub fn canonicalize(comps: Vec<MPoly>) -> Result<ProjMap> {
    ProjMap::new(comps)
}

pub fn standard_involution(n: usize) -> ProjMap {
    ProjMap::standard_involution(n)
}

fn matrix_comps(m: &[Vec<Rational>]) -> Vec<MPoly> {
    let k = m.len();
    m.iter()
        .map(|row| {
            MPoly::from_terms(
                k,
                row.iter()
                    .enumerate()
                    .map(|(j, a)| (Monomial::var(k, j), a.clone())),
            )
        })
        .collect()
}

fn pow_signed(a: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(a.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Jacobian matrix of an affine map at a point (no invertibility requirement).
pub fn jacobian_matrix(f: &AffineMap, p: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    affine::jacobian_matrix(f, p)
}

pub fn jacobian_at(f: &AffineMap, p: &[Rational]) -> Result<TangentAction> {
    TangentAction::new(jacobian_matrix(f, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn canonicalize_common_factor_and_scalar() {
        let f = ProjMap::new(vec![&v(3, 0) * &v(3, 0), &v(3, 0) * &v(3, 1), &v(3, 0) * &v(3, 2)]).unwrap();
        assert!(f.is_identity());
        let two = rat(2);
        let g = ProjMap::new(vec![
            (&v(3, 1) * &v(3, 2)).scale(&two),
            (&v(3, 0) * &v(3, 2)).scale(&two),
            (&v(3, 0) * &v(3, 1)).scale(&two),
        ])
        .unwrap();
        assert_eq!(g, standard_involution(2));
        assert_eq!(ProjMap::new(vec![MPoly::zero(2), MPoly::zero(2)]).unwrap_err(), Error::ZeroMap);
    }

    #[test]
    fn sigma_is_an_involution() {
        for n in 2..=4 {
            let s = standard_involution(n);
            assert_eq!(s.degree(), n as u32);
            assert!(s.compose(&s).unwrap().is_identity());
            assert_eq!(s.invert().unwrap(), s);
        }
    }

    #[test]
    fn evaluation_and_base_locus() {
        let s = standard_involution(2);
        let p = Point::from_ints(&[1, 2, 1]).unwrap();
        assert_eq!(s.evaluate(&p).unwrap(), Point::from_ints(&[2, 1, 2]).unwrap());
        let q = Point::from_ints(&[1, 0, 0]).unwrap();
        assert_eq!(s.evaluate(&q), Err(Error::UndefinedAtPoint));
    }

    #[test]
    fn restriction() {
        let s = standard_involution(2);
        assert_eq!(s.restrict_to_h0().unwrap_err(), Error::DoesNotPreserveH0);
        let m = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(3), rat(2), rat(1)],
            vec![rat(5), rat(1), rat(1)],
        ];
        let f = ProjMap::linear(&m).unwrap();
        let r = f.restrict_to_h0().unwrap();
        assert!(r.certified);
        let expect = ProjMap::linear(&[vec![rat(2), rat(1)], vec![rat(1), rat(1)]]).unwrap();
        assert_eq!(r.map, expect);
    }

    #[test]
    fn monomial_inverse() {
        // (x0^2 : x1 x2 ... ) style map: [x0 x1 : x1^2 : x0 x2] has affine form
        // u1 = x1/x0, u2 = x2/x0 -> (x1/x0, x2/x1) ... check round trip
        let f = ProjMap::new(vec![&v(3, 0) * &v(3, 1), &v(3, 1) * &v(3, 1), (&v(3, 0) * &v(3, 2)).scale(&rat(3))]).unwrap();
        let g = f.stripped().invert().unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn tangent_actions() {
        let p = Point::from_ints(&[1, 0, 0]).unwrap();
        let d = ProjMap::diagonal(&[rat(2), rat(1), rat(1)]).unwrap();
        // at (1:0:0) this acts by the scalar 1/2
        assert!(d.tangent_action(&p).unwrap().is_scalar());
        let d1 = ProjMap::diagonal(&[rat(1), rat(2), rat(1)]).unwrap();
        assert!(!d1.tangent_action(&p).unwrap().is_scalar());
        let p1 = Point::from_ints(&[0, 1, 0]).unwrap();
        assert!(!d.tangent_action(&p1).unwrap().is_scalar());
        let e = ProjMap::diagonal(&[rat(1), rat(1), rat(1)]).unwrap();
        assert!(e.tangent_action(&p).unwrap().is_scalar());
        let q = Point::from_ints(&[1, 1, 0]).unwrap();
        assert_eq!(d.tangent_action(&q), Err(Error::PointNotFixed));
    }
}
