//! One-parameter families of birational maps over an open subset of the
//! affine line, and the construction joining a certified map to the identity.
//!
//! A family is a composition tree of primitive families (constant maps,
//! matrices over `Q[t]`, fiber matrices over `K[t]`, normal deformations and
//! lifts of lower-dimensional families). Specialization composes the
//! primitive pieces exactly; randomized checks evaluate them mod p.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{mat_mul, transvection_decomposition, FieldElem};
use crate::algebra::scalar::ORACLE_PRIMES;
use crate::algebra::{compose_poly, gcd_many, rat, MPoly, PrimeField, RatFn, Rational};
use crate::birmap::{compose_chain, AffineMap, Point, ProjMap};
use crate::deform::{deformation_family, normal_derivative, NormalSplit};
use crate::error::{Error, Result};
use crate::jonquieres::{extract, is_in_jn, JonqElt, Mat2K};

#[derive(Clone, Debug)]
pub(crate) enum Node {
    Constant(ProjMap),
    /// `(n+1)×(n+1)` matrix with entries in `Q[t]`.
    Linear(Vec<Vec<MPoly>>),
    /// Fiber matrix with entries in `Q(x1..x_{n-1}, t)`, `t` last; trivial base.
    Fiber([RatFn; 4]),
    Deformation {
        fwd: NormalSplit,
        inv: Option<NormalSplit>,
    },
    /// A family of dimension `n-1` acting on the base of the fibration.
    Lift(PathFamily),
    /// `t ↦ P(1 - t)`.
    Reverse(PathFamily),
    /// `t ↦ P(t) ∘ Q(t)`.
    Compose(PathFamily, PathFamily),
}

/// A family `t ↦ θ(t)` of self-maps of `P^n`, defined where `exclusion(t) ≠ 0`.
#[derive(Clone, Debug)]
pub struct PathFamily {
    dim: usize,
    node: Arc<Node>,
    exclusion: MPoly,
}

fn t_poly_one() -> MPoly {
    MPoly::one(1)
}

fn t_var() -> MPoly {
    MPoly::var(1, 0)
}

/// gcd over the monomials in the other variables of the coefficients in `t = x_tv`.
fn t_content(p: &MPoly, tv: usize) -> MPoly {
    if p.is_zero() {
        return MPoly::zero(1);
    }
    let mut groups: std::collections::HashMap<Vec<u32>, Vec<(crate::algebra::Monomial, Rational)>> =
        std::collections::HashMap::new();
    for (e, c) in p.iter_terms() {
        let mut key = e.to_vec();
        let k = key[tv];
        key[tv] = 0;
        groups
            .entry(key)
            .or_default()
            .push((crate::algebra::Monomial::new(vec![k]), c.clone()));
    }
    let polys: Vec<MPoly> = groups.into_values().map(|ts| MPoly::from_terms(1, ts)).collect();
    gcd_many(&polys).monic()
}

fn poly_det(m: &[Vec<MPoly>]) -> MPoly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut acc = MPoly::zero(nv);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn poly_adjugate(m: &[Vec<MPoly>]) -> Vec<Vec<MPoly>> {
    let k = m.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    // adj[i][j] = (-1)^{i+j} det(minor without row j, column i)
                    let minor: Vec<Vec<MPoly>> = m
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, row)| {
                            row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect()
                        })
                        .collect();
                    let d = poly_det(&minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -&d
                    }
                })
                .collect()
        })
        .collect()
}

fn fp_to_affine(field: &PrimeField, x: &[u64]) -> Option<Vec<u64>> {
    let n = x.len() - 1;
    let w = field.inv(x[n])?;
    let mut out: Vec<u64> = (1..n).map(|i| field.mul(x[i], w)).collect();
    out.push(field.mul(x[0], w));
    Some(out)
}

fn fp_from_affine(v: &[u64]) -> Vec<u64> {
    let n = v.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(v[n - 1]);
    out.extend_from_slice(&v[..n - 1]);
    out.push(1);
    out
}

fn fp_proportional(field: &PrimeField, a: &[u64], b: &[u64]) -> bool {
    (0..a.len()).all(|i| (i..a.len()).all(|j| field.mul(a[i], b[j]) == field.mul(a[j], b[i])))
}

/// Lift a base map of dimension `n-1` to `(x', y) ↦ (b(x'), y)` in dimension `n`.
fn lift_map(b: &ProjMap) -> Result<ProjMap> {
    let base = b.to_affine_certified()?;
    let e = JonqElt::new(Mat2K::identity(base.dim()), base)?;
    e.embed()?.to_proj()
}

impl PathFamily {
    fn from_node(dim: usize, node: Node, exclusion: MPoly) -> Self {
        let exclusion = exclusion.monic();
        debug_assert!(!exclusion.eval(&[rat(0)]).is_zero() && !exclusion.eval(&[rat(1)]).is_zero());
        PathFamily {
            dim,
            node: Arc::new(node),
            exclusion,
        }
    }

    pub(crate) fn node(&self) -> &Node {
        &self.node
    }

    /// Rebuild from a node, recomputing the exclusion polynomial.
    pub(crate) fn rebuild(dim: usize, node: Node) -> Result<Self> {
        let exclusion = match &node {
            Node::Constant(_) | Node::Deformation { .. } => t_poly_one(),
            Node::Linear(m) => poly_det(m),
            Node::Fiber(e) => fiber_exclusion(e),
            Node::Lift(p) => p.exclusion.clone(),
            Node::Reverse(p) => reverse_poly(&p.exclusion),
            Node::Compose(p, q) => &p.exclusion * &q.exclusion,
        };
        if exclusion.is_zero() {
            return Err(Error::DegenerateFamily);
        }
        if exclusion.eval(&[rat(0)]).is_zero() || exclusion.eval(&[rat(1)]).is_zero() {
            return Err(Error::Invalid("the parameter domain must contain 0 and 1".into()));
        }
        Ok(Self::from_node(dim, node, exclusion))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The polynomial whose roots are excluded from the parameter domain.
    pub fn exclusion(&self) -> &MPoly {
        &self.exclusion
    }

    pub fn is_excluded(&self, t0: &Rational) -> bool {
        self.exclusion.eval(std::slice::from_ref(t0)).is_zero()
    }

    pub fn constant(f: ProjMap) -> Self {
        let n = f.dim();
        Self::from_node(n, Node::Constant(f), t_poly_one())
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(ProjMap::identity(n))
    }

    /// `t ↦ M(t)` for a square matrix over `Q[t]`.
    pub fn linear_family(m: Vec<Vec<MPoly>>) -> Result<Self> {
        let k = m.len();
        if k < 2 || m.iter().any(|r| r.len() != k || r.iter().any(|x| x.nvars() != 1)) {
            return Err(Error::Invalid("linear family needs a square matrix over Q[t]".into()));
        }
        Self::rebuild(k - 1, Node::Linear(m))
    }

    /// `t ↦ embed(A(t), id)` for a fiber matrix with entries in `(x1..x_{n-1}, t)`.
    pub fn fiber_family(entries: [RatFn; 4]) -> Result<Self> {
        let n = entries[0].nvars();
        if entries.iter().any(|e| e.nvars() != n) {
            return Err(Error::Invalid("fiber entries over different rings".into()));
        }
        Self::rebuild(n, Node::Fiber(entries))
    }

    pub(crate) fn deformation(fwd: NormalSplit, inv: Option<NormalSplit>) -> Self {
        let n = fwd.dim();
        Self::from_node(n, Node::Deformation { fwd, inv }, t_poly_one())
    }

    pub fn lift(base: PathFamily) -> Self {
        let n = base.dim + 1;
        let e = base.exclusion.clone();
        Self::from_node(n, Node::Lift(base), e)
    }

    pub fn reverse(&self) -> Self {
        if let Node::Reverse(p) = self.node.as_ref() {
            return p.clone();
        }
        let e = reverse_poly(&self.exclusion);
        Self::from_node(self.dim, Node::Reverse(self.clone()), e)
    }

    /// `t ↦ self(t) ∘ q(t)`.
    pub fn pointwise_product(&self, q: &PathFamily) -> Result<Self> {
        if self.dim != q.dim {
            return Err(Error::DimensionMismatch(self.dim, q.dim));
        }
        let e = &self.exclusion * &q.exclusion;
        let p = Self::from_node(self.dim, Node::Compose(self.clone(), q.clone()), e);
        p.check_nondegenerate()?;
        Ok(p)
    }

    /// Structural pointwise inverse.
    pub fn pointwise_invert(&self) -> Result<Self> {
        let node = match self.node.as_ref() {
            Node::Constant(f) => Node::Constant(f.invert().map_err(|_| Error::NoPointwiseInverse)?),
            Node::Linear(m) => Node::Linear(poly_adjugate(m)),
            Node::Fiber([a, b, c, d]) => Node::Fiber([d.clone(), -b, -c, a.clone()]),
            Node::Deformation { fwd, inv } => match inv {
                Some(inv) => Node::Deformation {
                    fwd: inv.clone(),
                    inv: Some(fwd.clone()),
                },
                None => return Err(Error::NoPointwiseInverse),
            },
            Node::Lift(p) => Node::Lift(p.pointwise_invert()?),
            Node::Reverse(p) => Node::Reverse(p.pointwise_invert()?),
            Node::Compose(p, q) => Node::Compose(q.pointwise_invert()?, p.pointwise_invert()?),
        };
        Ok(Self::from_node(self.dim, node, self.exclusion.clone()))
    }

    /// The composition factors of `θ(t0)`, outermost first.
    fn factors(&self, t0: &Rational, out: &mut Vec<ProjMap>) -> Result<()> {
        match self.node.as_ref() {
            Node::Constant(f) => out.push(f.clone()),
            Node::Linear(m) => {
                let a: Vec<Vec<Rational>> = m
                    .iter()
                    .map(|r| r.iter().map(|x| x.eval(std::slice::from_ref(t0))).collect())
                    .collect();
                out.push(ProjMap::linear(&a).map_err(|_| Error::ExcludedParameter)?);
            }
            Node::Fiber(e) => {
                let m = self.dim - 1;
                let mut keep = vec![true; m + 1];
                keep[m] = false;
                let at = |r: &RatFn| -> Result<RatFn> {
                    Ok(r
                        .substitute_scalar(m, t0)
                        .ok_or(Error::ExcludedParameter)?
                        .drop_vars(&keep))
                };
                let a = Mat2K::new([at(&e[0])?, at(&e[1])?, at(&e[2])?, at(&e[3])?])
                    .map_err(|_| Error::ExcludedParameter)?;
                let j = JonqElt::new(a, AffineMap::identity(m))?;
                out.push(j.embed()?.to_proj()?);
            }
            Node::Deformation { fwd, inv } => {
                let f = fwd.specialize(t0);
                let f = match inv {
                    Some(r) => f.with_inverse_unchecked(r.specialize(t0)),
                    None => f,
                };
                out.push(f.to_proj()?);
            }
            Node::Lift(p) => out.push(lift_map(&p.specialize_unchecked(t0)?)?),
            Node::Reverse(p) => p.factors(&(Rational::one() - t0), out)?,
            Node::Compose(p, q) => {
                p.factors(t0, out)?;
                q.factors(t0, out)?;
            }
        }
        Ok(())
    }

    fn specialize_unchecked(&self, t0: &Rational) -> Result<ProjMap> {
        let mut fs = Vec::new();
        self.factors(t0, &mut fs)?;
        compose_chain(&fs)
    }

    /// The canonical map `θ(t0)`.
    pub fn specialize(&self, t0: &Rational) -> Result<ProjMap> {
        if self.is_excluded(t0) {
            return Err(Error::ExcludedParameter);
        }
        self.specialize_unchecked(t0)
    }

    /// `θ(t)` at a projective point mod p. `None` when undefined there (or
    /// when the image leaves a chart used internally).
    pub fn eval_fp(&self, field: &PrimeField, t: u64, x: &[u64]) -> Option<Vec<u64>> {
        let out = match self.node.as_ref() {
            Node::Constant(f) => f.eval_fp(field, x)?,
            Node::Linear(m) => m
                .iter()
                .map(|row| {
                    let mut acc = 0;
                    for (e, &xi) in row.iter().zip(x) {
                        acc = field.add(acc, field.mul(e.eval_fp(field, &[t])?, xi));
                    }
                    Some(acc)
                })
                .collect::<Option<Vec<u64>>>()?,
            Node::Fiber(e) => {
                let v = fp_to_affine(field, x)?;
                let m = self.dim - 1;
                let mut pt = v[..m].to_vec();
                pt.push(t);
                let ev: Vec<u64> = e.iter().map(|r| r.eval_fp(field, &pt)).collect::<Option<_>>()?;
                let y = v[m];
                let num = field.add(field.mul(ev[0], y), ev[1]);
                let den = field.add(field.mul(ev[2], y), ev[3]);
                let mut w = v[..m].to_vec();
                w.push(field.mul(num, field.inv(den)?));
                fp_from_affine(&w)
            }
            Node::Deformation { fwd, .. } => {
                let v = fp_to_affine(field, x)?;
                fp_from_affine(&fwd.eval_fp(field, t, &v)?)
            }
            Node::Lift(p) => {
                let v = fp_to_affine(field, x)?;
                let m = self.dim - 1;
                let bx = fp_from_affine(&v[..m]);
                let by = p.eval_fp(field, t, &bx)?;
                let mut w = fp_to_affine(field, &by)?;
                w.push(v[m]);
                fp_from_affine(&w)
            }
            Node::Reverse(p) => p.eval_fp(field, field.sub(1, t), x)?,
            Node::Compose(p, q) => {
                let y = q.eval_fp(field, t, x)?;
                p.eval_fp(field, t, &y)?
            }
        };
        if out.iter().all(|&c| c == 0) {
            None
        } else {
            Some(out)
        }
    }

    /// Reject families whose composite is undefined at every sampled point.
    fn check_nondegenerate(&self) -> Result<()> {
        let field = PrimeField::default_oracle();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..16 {
            let t = rng.gen_range(2..field.modulus());
            if self.exclusion.eval_fp(&field, &[t]) == Some(0) {
                continue;
            }
            let x: Vec<u64> = (0..=self.dim).map(|_| rng.gen_range(1..field.modulus())).collect();
            if self.eval_fp(&field, t, &x).is_some() {
                return Ok(());
            }
        }
        Err(Error::DegenerateFamily)
    }

    /// Number of nodes in the composition tree.
    pub fn size(&self) -> usize {
        match self.node.as_ref() {
            Node::Lift(p) | Node::Reverse(p) => 1 + p.size(),
            Node::Compose(p, q) => 1 + p.size() + q.size(),
            _ => 1,
        }
    }
}

fn reverse_poly(e: &MPoly) -> MPoly {
    let s = &t_poly_one() - &t_var();
    compose_poly(e, &[s])
}

fn fiber_exclusion(e: &[RatFn; 4]) -> MPoly {
    let tv = e[0].nvars() - 1;
    let det = &(&e[0] * &e[3]) - &(&e[1] * &e[2]);
    let mut acc = t_content(det.num(), tv);
    for x in e {
        if !x.den().is_constant() {
            acc = &acc * &t_content(x.den(), tv);
        }
    }
    acc
}

pub fn specialize(p: &PathFamily, t0: &Rational) -> Result<ProjMap> {
    p.specialize(t0)
}

pub fn reverse(p: &PathFamily) -> PathFamily {
    p.reverse()
}

pub fn pointwise_product(p: &PathFamily, q: &PathFamily) -> Result<PathFamily> {
    p.pointwise_product(q)
}

pub fn pointwise_invert(p: &PathFamily) -> Result<PathFamily> {
    p.pointwise_invert()
}

/// Given `P: f → g` and `Q: g → h`, the family `t ↦ P(t) ∘ g⁻¹ ∘ Q(t)` joining `f` to `h`.
pub fn join_chain(p: &PathFamily, q: &PathFamily, g_inv: &ProjMap) -> Result<PathFamily> {
    let mid = p.pointwise_product(&PathFamily::constant(g_inv.clone()))?;
    mid.pointwise_product(q)
}

/// `t ↦ c ∘ P(t) ∘ c⁻¹`.
pub fn conjugate_path(p: &PathFamily, c: &ProjMap, c_inv: &ProjMap) -> Result<PathFamily> {
    conjugate_by_factors(p, std::slice::from_ref(c), std::slice::from_ref(c_inv))
}

/// Conjugation with `c = c[0] ∘ c[1] ∘ ...` kept as separate constant factors.
fn conjugate_by_factors(p: &PathFamily, c: &[ProjMap], c_inv: &[ProjMap]) -> Result<PathFamily> {
    let mut acc: Option<PathFamily> = None;
    let push = |acc: Option<PathFamily>, q: PathFamily| -> Result<Option<PathFamily>> {
        Ok(Some(match acc {
            None => q,
            Some(a) => a.pointwise_product(&q)?,
        }))
    };
    for f in c {
        acc = push(acc, PathFamily::constant(f.clone()))?;
    }
    acc = push(acc, p.clone())?;
    for f in c_inv {
        acc = push(acc, PathFamily::constant(f.clone()))?;
    }
    Ok(acc.unwrap())
}

/// Generic elimination path: each transvection `E(λ)` becomes `E(tλ)`, the
/// diagonal `diag(d)` becomes `diag((d_i - 1) t + 1)`; the product is one matrix.
fn elimination_path<S: FieldElem + Clone, T: FieldElem>(
    a: &[Vec<S>],
    lift: impl Fn(&S) -> T,
    t: &T,
) -> Result<Vec<Vec<T>>> {
    let k = a.len();
    let (ts, diag) = transvection_decomposition(&a.to_vec()).ok_or(Error::SingularMatrix)?;
    let proto = lift(&a[0][0]);
    let one = proto.one_like();
    let zero = proto.zero_like();
    let ident = |k: usize| -> Vec<Vec<T>> {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
            .collect()
    };
    let mut acc = ident(k);
    for tr in &ts {
        let mut m = ident(k);
        m[tr.row][tr.col] = lift(&tr.lambda).mul_e(t);
        acc = mat_mul(&acc, &m);
    }
    let mut d = ident(k);
    for (i, di) in diag.iter().enumerate() {
        d[i][i] = lift(di).sub_e(&one).mul_e(t).add_e(&one);
    }
    Ok(mat_mul(&acc, &d))
}

/// Path from the identity to the linear map `A` in `PGL(m+1)`.
pub fn pgl_path(a: &[Vec<Rational>]) -> Result<PathFamily> {
    let t = RatFn::var(1, 0);
    let m = elimination_path(a, |x| RatFn::constant(1, x.clone()), &t)?;
    let polys = m
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.num().clone()).collect())
        .collect();
    PathFamily::linear_family(polys)
}

/// Path from the identity to `embed(a, id)` through fiber matrices over `K[t]`.
pub fn pgl2k_path(a: &Mat2K) -> Result<PathFamily> {
    let m = a.nvars();
    let rows = vec![
        vec![a.entry(0, 0).clone(), a.entry(0, 1).clone()],
        vec![a.entry(1, 0).clone(), a.entry(1, 1).clone()],
    ];
    let t = RatFn::var(m + 1, m);
    let r = elimination_path(&rows, |x| x.extend_vars(1), &t)?;
    let [r0, r1]: [Vec<RatFn>; 2] = r.try_into().unwrap();
    let [a0, a1]: [RatFn; 2] = r0.try_into().unwrap();
    let [a2, a3]: [RatFn; 2] = r1.try_into().unwrap();
    PathFamily::fiber_family([a0, a1, a2, a3])
}

/// Options for [`connect_to_identity`].
#[derive(Clone, Debug)]
pub struct ConnectOptions {
    pub seed: u64,
    pub max_samples: usize,
    /// Sampled coordinates lie in `[-sample_box, sample_box]`.
    pub sample_box: i64,
}

impl Default for ConnectOptions {
    fn default() -> Self {
        ConnectOptions {
            seed: 0,
            max_samples: 64,
            sample_box: 5,
        }
    }
}

/// Path from the identity to a de Jonquières element: the fiber path
/// composed with the lifted path of the base.
pub fn jonq_path(e: &JonqElt, opts: &ConnectOptions) -> Result<PathFamily> {
    let n = e.dim();
    let fiber = if e.fiber().is_identity() {
        None
    } else {
        Some(pgl2k_path(e.fiber())?)
    };
    let base = if e.base().is_identity() {
        None
    } else {
        let b = e.base().to_proj()?;
        let sub = ConnectOptions {
            seed: opts.seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407),
            ..opts.clone()
        };
        Some(PathFamily::lift(connect_to_identity(&b, &sub)?))
    };
    match (fiber, base) {
        (None, None) => Ok(PathFamily::identity(n)),
        (Some(f), None) => Ok(f),
        (None, Some(b)) => Ok(b),
        (Some(f), Some(b)) => f.pointwise_product(&b),
    }
}

/// Translation in the chart `x0 = 1` by `shift`.
fn translation(shift: &[Rational]) -> ProjMap {
    let k = shift.len() + 1;
    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else if j == 0 {
                        shift[i - 1].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    ProjMap::linear(&m).expect("translations are invertible")
}

/// A family `θ` with `θ(0) = id` and `θ(1) = g`, for a certified birational `g`.
pub fn connect_to_identity(g: &ProjMap, opts: &ConnectOptions) -> Result<PathFamily> {
    let n = g.dim();
    if g.is_identity() {
        return Ok(PathFamily::identity(n));
    }
    if g.is_linear() {
        return pgl_path(&g.linear_matrix().unwrap());
    }
    if n == 1 {
        return Err(Error::Precondition("maps of the projective line are linear"));
    }
    if !g.has_inverse() {
        return Err(Error::Precondition("connect_to_identity needs an inverse certificate"));
    }
    if let Ok(aff) = g.to_affine() {
        if is_in_jn(&aff) {
            if let Ok(e) = extract(&g.to_affine_certified()?) {
                return jonq_path(&e, opts);
            }
        }
    }
    general_case(g, opts)
}

fn general_case(g: &ProjMap, opts: &ConnectOptions) -> Result<PathFamily> {
    let n = g.dim();
    let g_inv = g.inverse().expect("certified");
    let sigma = ProjMap::standard_involution(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.sample_box;
    for _ in 0..opts.max_samples {
        let q: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-b..=b))).collect();
        let mut qc = vec![Rational::one()];
        qc.extend(q.iter().cloned());
        let qp = Point::new(qc).unwrap();
        let Ok(gq) = g.evaluate(&qp) else { continue };
        if gq.coords()[0].is_zero() {
            continue;
        }
        match g_inv.evaluate(&gq) {
            Ok(back) if back.projectively_eq(&qp) => {}
            _ => continue,
        }
        let gqn = gq.normalized();
        // β(g(q)) = q and ρ(q) = (1:0:...:0), as translations in the chart x0 = 1
        let beta_shift: Vec<Rational> = (0..n).map(|i| &q[i] - &gqn.coords()[i + 1]).collect();
        let rho_shift: Vec<Rational> = q.iter().map(|c| -c).collect();
        let beta = translation(&beta_shift);
        let rho = translation(&rho_shift);
        let rho_inv = rho.inverse().unwrap();
        let inner = compose_chain(&[rho.clone(), beta.clone(), g.clone(), rho_inv.clone()])?;
        let origin = Point::from_ints(&{
            let mut v = vec![0i64; n + 1];
            v[0] = 1;
            v
        })
        .unwrap();
        if inner.tangent_action(&origin).is_err() {
            continue;
        }
        return build_general(g, &sigma, &beta, &rho, &inner, opts);
    }
    Err(Error::SamplingExhausted(opts.max_samples))
}

fn build_general(
    g: &ProjMap,
    sigma: &ProjMap,
    beta: &ProjMap,
    rho: &ProjMap,
    inner: &ProjMap,
    opts: &ConnectOptions,
) -> Result<PathFamily> {
    let n = g.dim();
    let inner_inv = inner.inverse().expect("composite of certified maps");
    let f = compose_chain(&[sigma.clone(), inner.stripped(), sigma.clone()])?;
    let f_inv = compose_chain(&[sigma.clone(), inner_inv.stripped(), sigma.clone()])?;
    let f = f.stripped().with_inverse_unchecked(f_inv);
    f.restrict_to_h0().map_err(|_| Error::RestrictionCheckFailed)?;
    let f_aff = f.to_affine_certified()?;
    let deform = deformation_family(&f_aff)?;
    let f0 = normal_derivative(&f_aff)?;
    let e0 = extract(&f0)?;
    let theta0 = jonq_path(&e0, opts)?;
    let f0_proj = f0.to_proj()?;
    let f0_inv = f0_proj.invert()?;
    let theta_f = join_chain(&theta0, &deform, &f0_inv)?;
    // conjugate by (σρ)⁻¹ = ρ⁻¹σ
    let rho_inv = rho.inverse().unwrap();
    let conj = conjugate_by_factors(&theta_f, &[rho_inv, sigma.clone()], &[sigma.clone(), rho.clone()])?;
    if beta.is_identity() {
        return Ok(conj);
    }
    let bpath = pgl_path(&beta.linear_matrix().unwrap())?;
    let _ = n;
    bpath.pointwise_invert()?.pointwise_product(&conj)
}

/// Outcome of [`verify_path`].
#[derive(Clone, Debug, Default)]
pub struct PathReport {
    pub endpoint0: bool,
    pub endpoint1: bool,
    pub trials_requested: usize,
    pub trials_passed: usize,
    pub failures: Vec<String>,
}

impl PathReport {
    pub fn passed(&self) -> bool {
        self.endpoint0 && self.endpoint1 && self.trials_passed == self.trials_requested && self.failures.is_empty()
    }
}

/// Exact endpoint checks, then `trials` random parameters mod p where the
/// specialization composed with the inverse family's is the identity at a random point.
pub fn verify_path(
    p: &PathFamily,
    expected0: &ProjMap,
    expected1: &ProjMap,
    trials: usize,
    seed: u64,
) -> PathReport {
    let mut rep = PathReport {
        trials_requested: trials,
        ..Default::default()
    };
    for (t, expected, slot) in [(0, expected0, &mut rep.endpoint0), (1, expected1, &mut rep.endpoint1)] {
        match p.specialize(&rat(t)) {
            Ok(f) if f == *expected => *slot = true,
            Ok(f) => rep.failures.push(format!("endpoint at t={t} is {f}")),
            Err(e) => rep.failures.push(format!("endpoint at t={t}: {e}")),
        }
    }
    if trials == 0 {
        return rep;
    }
    let inv = match p.pointwise_invert() {
        Ok(q) => q,
        Err(e) => {
            rep.failures.push(format!("inverse family: {e}"));
            return rep;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prime_idx = 0;
    let mut budget = 40 * trials + 40;
    while rep.trials_passed < trials && budget > 0 {
        budget -= 1;
        let field = PrimeField::new(ORACLE_PRIMES[prime_idx]).unwrap();
        let t = rng.gen_range(2..field.modulus());
        match p.exclusion.eval_fp(&field, &[t]) {
            Some(0) => continue,
            None => {
                prime_idx = (prime_idx + 1) % ORACLE_PRIMES.len();
                continue;
            }
            _ => {}
        }
        let x: Vec<u64> = (0..=p.dim).map(|_| rng.gen_range(1..field.modulus())).collect();
        let forward = inv.eval_fp(&field, t, &x).and_then(|y| p.eval_fp(&field, t, &y));
        let backward = p.eval_fp(&field, t, &x).and_then(|y| inv.eval_fp(&field, t, &y));
        match (forward, backward) {
            (Some(a), Some(b)) => {
                if fp_proportional(&field, &a, &x) && fp_proportional(&field, &b, &x) {
                    rep.trials_passed += 1;
                } else {
                    rep.failures.push(format!("t={t}: family and inverse family do not compose to the identity"));
                    return rep;
                }
            }
            _ => continue,
        }
    }
    if rep.trials_passed < trials {
        rep.failures.push("could not sample enough points off the degeneracy locus".into());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn diagonal_path() {
        let a = q(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]]);
        let p = pgl_path(&a).unwrap();
        assert!(p.specialize(&rat(0)).unwrap().is_identity());
        assert_eq!(p.specialize(&rat(1)).unwrap(), ProjMap::linear(&a).unwrap());
        // e(t) = (t + 1)(2t + 1), monic
        let t = t_var();
        let e = (&(&t + &t_poly_one()) * &(&t.scale(&rat(2)) + &t_poly_one())).monic();
        assert_eq!(p.exclusion(), &e);
        assert_eq!(p.specialize(&rat(-1)).unwrap_err(), Error::ExcludedParameter);
        assert_eq!(p.specialize(&rat_frac(-1, 2)).unwrap_err(), Error::ExcludedParameter);
    }

    #[test]
    fn shear_and_general_paths() {
        let u = q(&[&[1, 2, 3], &[0, 1, 4], &[0, 0, 1]]);
        let p = pgl_path(&u).unwrap();
        assert!(p.exclusion().is_one());
        assert_eq!(p.specialize(&rat(1)).unwrap(), ProjMap::linear(&u).unwrap());
        let a = q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let p = pgl_path(&a).unwrap();
        let f = ProjMap::linear(&a).unwrap();
        assert!(verify_path(&p, &ProjMap::identity(2), &f, 5, 1).passed());
    }

    #[test]
    fn fiber_paths() {
        let x1 = RatFn::var(1, 0);
        let a = Mat2K::diagonal(x1.clone(), RatFn::one(1)).unwrap();
        let p = pgl2k_path(&a).unwrap();
        let expected = JonqElt::new(a, AffineMap::identity(1)).unwrap().embed().unwrap().to_proj().unwrap();
        assert!(verify_path(&p, &ProjMap::identity(2), &expected, 5, 2).passed());
        let fh = crate::jonquieres::f_h(&x1).unwrap();
        let p = jonq_path(&fh, &ConnectOptions::default()).unwrap();
        let expected = fh.embed().unwrap().to_proj().unwrap();
        assert!(verify_path(&p, &ProjMap::identity(2), &expected, 5, 3).passed());
    }

    #[test]
    fn deformation_path_and_negative_control() {
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let f = AffineMap::new(vec![&x + &(&y * &y), y.clone()]).unwrap();
        let inv = AffineMap::new(vec![&x - &(&y * &y), y.clone()]).unwrap();
        let f = f.certify(inv).unwrap();
        let p = deformation_family(&f).unwrap();
        let fp = f.to_proj().unwrap();
        let rep = verify_path(&p, &ProjMap::identity(2), &fp, 5, 4);
        assert!(rep.passed(), "{rep:?}");
        let bad_inv = normal_split_for_test(&AffineMap::new(vec![&x - &(&y * &y).scale(&rat(2)), y.clone()]).unwrap());
        let bad = PathFamily::deformation(crate::deform::normal_split(&f).unwrap(), Some(bad_inv));
        assert!(!verify_path(&bad, &ProjMap::identity(2), &fp, 5, 4).passed());
    }

    fn normal_split_for_test(f: &AffineMap) -> NormalSplit {
        crate::deform::normal_split(f).unwrap()
    }

    #[test]
    fn reverse_and_chain() {
        let a = q(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]]);
        let p = pgl_path(&a).unwrap();
        let r = p.reverse();
        assert!(r.specialize(&rat(1)).unwrap().is_identity());
        assert!(r.reverse().specialize(&rat(0)).unwrap().is_identity());
        let f = ProjMap::linear(&a).unwrap();
        let looped = join_chain(&p, &r, &f.invert().unwrap()).unwrap();
        assert!(looped.specialize(&rat(0)).unwrap().is_identity());
        assert!(looped.specialize(&rat(1)).unwrap().is_identity());
    }

    #[test]
    fn connect_sigma_plane() {
        let s = ProjMap::standard_involution(2);
        let p = connect_to_identity(&s, &ConnectOptions::default()).unwrap();
        let rep = verify_path(&p, &ProjMap::identity(2), &s, 5, 7);
        assert!(rep.passed(), "{rep:?}");
    }
}
