//! Normal-closure constructions: from a nontrivial `h`, an explicit nontrivial
//! element of `N ∩ J⁰ₙ` where `N` is the normal closure, with word certificates.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::determinant;
use crate::algebra::{rat, MPoly, RatFn, Rational};
use crate::birmap::{compose_chain, AffineMap, Point, ProjMap, TangentAction};
use crate::deform::normal_derivative;
use crate::error::{Error, Result};
use crate::jonquieres::{extract, in_j1, is_in_jn, JonqElt, Mat2K};

/// One factor `c ∘ h^ε ∘ c⁻¹` of a word.
#[derive(Clone, Debug)]
pub struct Letter {
    pub conj: ProjMap,
    pub conj_inv: ProjMap,
    pub exp: i8,
}

/// A product of conjugates of a fixed generator and its inverse.
#[derive(Clone, Debug)]
pub struct WordExpr {
    generator: ProjMap,
    generator_inv: ProjMap,
    letters: Vec<Letter>,
}

impl WordExpr {
    pub fn new(generator: &ProjMap) -> Result<Self> {
        let generator_inv = generator.invert()?;
        Ok(WordExpr {
            generator: generator.clone(),
            generator_inv,
            letters: Vec::new(),
        })
    }

    /// Append `c ∘ h^exp ∘ c⁻¹` on the right.
    pub fn push(&mut self, conj: &ProjMap, exp: i8) -> Result<()> {
        if exp != 1 && exp != -1 {
            return Err(Error::Invalid("word exponents are +1 or -1".into()));
        }
        let conj_inv = conj.invert()?;
        self.letters.push(Letter {
            conj: conj.clone(),
            conj_inv,
            exp,
        });
        Ok(())
    }

    /// `c ∘ w ∘ c⁻¹`, letter by letter.
    pub fn conjugated(&self, c: &ProjMap, c_inv: &ProjMap) -> Result<Self> {
        let letters = self
            .letters
            .iter()
            .map(|l| {
                Ok(Letter {
                    conj: c.compose(&l.conj)?,
                    conj_inv: l.conj_inv.compose(c_inv)?,
                    exp: l.exp,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WordExpr {
            letters,
            ..self.clone()
        })
    }

    pub fn generator(&self) -> &ProjMap {
        &self.generator
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn evaluate(&self) -> Result<ProjMap> {
        let mut fs = Vec::with_capacity(3 * self.letters.len());
        for l in &self.letters {
            fs.push(l.conj.clone());
            fs.push(if l.exp > 0 {
                self.generator.clone()
            } else {
                self.generator_inv.clone()
            });
            fs.push(l.conj_inv.clone());
        }
        if fs.is_empty() {
            return Ok(ProjMap::identity(self.generator.dim()));
        }
        compose_chain(&fs)
    }

    /// Whether the word evaluates exactly to `value`.
    pub fn verify(&self, value: &ProjMap) -> bool {
        self.evaluate().map(|w| w == *value).unwrap_or(false)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            if l.conj.is_identity() {
                write!(f, "h^{}", l.exp)?;
            } else {
                write!(f, "c{i} h^{} c{i}^-1", l.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SimplicityOptions {
    pub seed: u64,
    pub max_samples: usize,
    pub sample_box: i64,
    pub lambdas: Vec<i64>,
}

impl Default for SimplicityOptions {
    fn default() -> Self {
        SimplicityOptions {
            seed: 0,
            max_samples: 64,
            sample_box: 4,
            lambdas: vec![2, 3, 5, 7, 11, 13],
        }
    }
}

/// `h' = γ h γ⁻¹` with `γ(p) = (1:0:...:0)` and `γ(q) = (0:1:0:...:0)`, `q = h(p)`.
#[derive(Clone, Debug)]
pub struct Standardized {
    pub h: ProjMap,
    pub h_std: ProjMap,
    pub gamma: ProjMap,
    pub gamma_inv: ProjMap,
    pub p: Point,
    pub q: Point,
}

fn basis_point(n: usize, i: usize) -> Point {
    let mut v = vec![0i64; n + 1];
    v[i] = 1;
    Point::from_ints(&v).unwrap()
}

/// Nonzero Jacobian determinant of the homogeneous components at `p`.
fn locally_isomorphic(f: &ProjMap, p: &Point) -> bool {
    let x = p.coords();
    let jac: Vec<Vec<Rational>> = f
        .components()
        .iter()
        .map(|c| (0..x.len()).map(|j| c.derivative(j).eval(x)).collect())
        .collect();
    !determinant(&jac).is_zero()
}

fn regular_iso_at(f: &ProjMap, p: &Point) -> Option<Point> {
    let q = f.evaluate(p).ok()?;
    locally_isomorphic(f, p).then_some(q)
}

/// Standardize at a given point `p`.
pub fn standardize_pair_at(h: &ProjMap, p: &Point) -> Result<Standardized> {
    let n = h.dim();
    if h.is_identity() {
        return Err(Error::Precondition("h must be nontrivial"));
    }
    let h_inv = h.invert()?;
    let q = regular_iso_at(h, p).ok_or(Error::UndefinedAtPoint)?;
    if q.projectively_eq(p) {
        return Err(Error::Precondition("p must not be fixed by h"));
    }
    match regular_iso_at(&h_inv, &q) {
        Some(back) if back.projectively_eq(p) => {}
        _ => return Err(Error::UndefinedAtPoint),
    }
    // columns p, q, then standard vectors completing a basis
    let mut cols: Vec<Vec<Rational>> = vec![p.coords().to_vec(), q.coords().to_vec()];
    for i in 0..=n {
        if cols.len() == n + 1 {
            break;
        }
        let mut trial = cols.clone();
        trial.push(basis_point(n, i).coords().to_vec());
        if independent(&trial) {
            cols = trial;
        }
    }
    if cols.len() != n + 1 {
        return Err(Error::Precondition("p and q must be distinct"));
    }
    let m = transpose(&cols);
    let gamma_inv = ProjMap::linear(&m)?;
    let gamma = gamma_inv.invert()?;
    let h_std = compose_chain(&[gamma.clone(), h.clone(), gamma_inv.clone()])?;
    Ok(Standardized {
        h: h.clone(),
        h_std,
        gamma,
        gamma_inv,
        p: p.clone(),
        q,
    })
}

fn transpose(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = cols[0].len();
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Linear independence of a list of vectors by elimination.
fn independent(vs: &[Vec<Rational>]) -> bool {
    let mut rows: Vec<Vec<Rational>> = vs.to_vec();
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                for c in 0..width {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank == vs.len()
}

/// Sample `p` from a small integer box until the standardization applies.
pub fn standardize_pair(h: &ProjMap, opts: &SimplicityOptions) -> Result<Standardized> {
    if h.is_identity() {
        return Err(Error::Precondition("h must be nontrivial"));
    }
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.sample_box;
    for _ in 0..opts.max_samples {
        let v: Vec<i64> = (0..=n).map(|_| rng.gen_range(-b..=b)).collect();
        let Ok(p) = Point::from_ints(&v) else { continue };
        if let Ok(s) = standardize_pair_at(h, &p) {
            return Ok(s);
        }
    }
    Err(Error::SamplingExhausted(opts.max_samples))
}

/// `g = (α h'⁻¹ α⁻¹) h'` fixing `(1:0:...:0)` with non-scalar tangent action.
#[derive(Clone, Debug)]
pub struct FixingElement {
    pub g: ProjMap,
    /// `g` as a word in conjugates of the original `h`.
    pub word: WordExpr,
    pub lambda: i64,
    pub tangent: TangentAction,
}

/// `α = diag(λ, 1, ..., 1)`.
pub fn alpha(n: usize, lambda: i64) -> ProjMap {
    let mut d = vec![Rational::one(); n + 1];
    d[0] = rat(lambda);
    ProjMap::diagonal(&d).expect("nonzero entries")
}

pub fn fixing_element(s: &Standardized, opts: &SimplicityOptions) -> Result<FixingElement> {
    let n = s.h.dim();
    let p = basis_point(n, 0);
    let h_std_inv = s.h_std.invert()?;
    for &lambda in &opts.lambdas {
        if lambda == 0 {
            continue;
        }
        let a = alpha(n, lambda);
        let a_inv = a.invert()?;
        let g = compose_chain(&[a.clone(), h_std_inv.clone(), a_inv, s.h_std.clone()])?;
        let Ok(tangent) = g.tangent_action(&p) else { continue };
        if tangent.is_scalar() {
            continue;
        }
        // (αγ) h⁻¹ (αγ)⁻¹ · γ h γ⁻¹
        let mut word = WordExpr::new(&s.h)?;
        word.push(&a.compose(&s.gamma)?, -1)?;
        word.push(&s.gamma, 1)?;
        return Ok(FixingElement { g, word, lambda, tangent });
    }
    Err(Error::NoSuitableLambda)
}

/// Result of conjugating by the standard involution and linearizing along `H0`.
#[derive(Clone, Debug)]
pub struct Descent {
    /// `σ g σ`.
    pub f: ProjMap,
    pub word: WordExpr,
    /// Restriction of `f` to `H0 ≅ P^{n-1}`.
    pub restriction: ProjMap,
    /// `σ' ∘ T ∘ σ'`, with `T` the tangent action of `g` and `σ'` the
    /// standard involution of `P^{n-1}`; the restriction must equal it.
    pub expected_restriction: ProjMap,
    pub f0: JonqElt,
}

/// The restriction's components read in the affine chart of the base:
/// `z_i / z_{n-1}` in the variables `z_0 .. z_{n-2}`.
fn base_chart(r: &ProjMap) -> Result<AffineMap> {
    let m = r.dim();
    let mut keep = vec![true; m + 1];
    keep[m] = false;
    let one = Rational::one();
    let dehom = |p: &MPoly| p.substitute_scalar(m, &one).drop_vars(&keep);
    let w = dehom(&r.components()[m]);
    if w.is_zero() {
        return Err(Error::NotInChart);
    }
    let comps = (0..m)
        .map(|i| RatFn::new(dehom(&r.components()[i]), w.clone()).unwrap())
        .collect();
    AffineMap::new(comps)
}

pub fn sigma_descent(g: &ProjMap, g_word: &WordExpr) -> Result<Descent> {
    let n = g.dim();
    if n < 2 {
        return Err(Error::Precondition("descent needs n >= 2"));
    }
    let p = basis_point(n, 0);
    let tangent = g.tangent_action(&p)?;
    let sigma = ProjMap::standard_involution(n);
    let f = compose_chain(&[sigma.clone(), g.clone(), sigma.clone()])?;
    let word = g_word.conjugated(&sigma, &sigma)?;
    let restriction = f.restrict_to_h0()?.map;
    let t = ProjMap::linear(tangent.matrix())?;
    let sigma_base = ProjMap::standard_involution(n - 1);
    let expected_restriction = compose_chain(&[sigma_base.clone(), t, sigma_base])?;
    let f0_aff = normal_derivative(&f.to_affine_certified()?)?;
    let f0 = extract(&f0_aff)?;
    Ok(Descent {
        f,
        word,
        restriction,
        expected_restriction,
        f0,
    })
}

impl Descent {
    /// The base action of `f0` equals the restriction of `f` to `H0`.
    pub fn base_matches_restriction(&self) -> bool {
        base_chart(&self.restriction)
            .map(|r| r == *self.f0.base())
            .unwrap_or(false)
    }
}

/// `r = β⁻¹ f0 β f0⁻¹`, an element with trivial base.
#[derive(Clone, Debug)]
pub struct Commutator {
    pub beta: Mat2K,
    pub r: JonqElt,
    /// `(β⁻¹ · a · b(β) · a⁻¹, 1)`.
    pub formula: JonqElt,
    /// `r` as a word in conjugates of `f0` (embedded projectively).
    pub word: WordExpr,
}

fn beta_candidates(f0: &JonqElt) -> Vec<Mat2K> {
    let m = f0.dim() - 1;
    let one = RatFn::one(m);
    if f0.fiber().is_identity() {
        let mut out = Vec::new();
        for i in 0..m {
            let x = RatFn::var(m, i);
            out.extend(Mat2K::diagonal(x.clone(), one.clone()));
            out.extend(Mat2K::diagonal(&x + &one, one.clone()));
        }
        if m >= 2 {
            out.extend(Mat2K::diagonal(&RatFn::var(m, 0) * &RatFn::var(m, 1), one.clone()));
        }
        out
    } else {
        let c = |v: [i64; 4]| Mat2K::new(v.map(|x| RatFn::constant(m, rat(x)))).unwrap();
        vec![c([1, 1, 0, 1]), c([0, -1, 1, 0]), c([2, 0, 0, 1])]
    }
}

pub fn commutator_to_j0(f0: &JonqElt) -> Result<Commutator> {
    if f0.base().is_identity() {
        return Err(Error::Precondition("f0 must act nontrivially on the base"));
    }
    let n = f0.dim();
    let m = n - 1;
    let f0_inv = f0.inverse()?;
    let b_inv = f0.base().inverse().expect("certified base");
    for beta in beta_candidates(f0) {
        let be = JonqElt::new(beta.clone(), AffineMap::identity(m))?;
        let be_inv = be.inverse()?;
        let r = be_inv.compose(f0)?.compose(&be)?.compose(&f0_inv)?;
        if r.is_identity() {
            continue;
        }
        let a = f0.fiber();
        let moved = beta.substitute(b_inv.components())?;
        let fiber = beta.inverse().mul(a).mul(&moved).mul(&a.inverse());
        let formula = JonqElt::new(fiber, AffineMap::identity(m))?;
        let gen = f0.embed()?.to_proj()?;
        let mut word = WordExpr::new(&gen)?;
        word.push(&be_inv.embed()?.to_proj()?, 1)?;
        word.push(&ProjMap::identity(n), -1)?;
        return Ok(Commutator { beta, r, formula, word });
    }
    Err(Error::BetaSearchExhausted)
}

/// Named boolean checks of a pipeline run.
#[derive(Clone, Debug, Default)]
pub struct Checks(pub Vec<(String, bool)>);

impl Checks {
    fn add(&mut self, name: &str, ok: bool) {
        self.0.push((name.to_string(), ok));
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub standardized: Standardized,
    pub fixing: FixingElement,
    pub descent: Descent,
    pub commutator: Commutator,
    pub checks: Checks,
}

/// The whole construction from `h` to `r ∈ N ∩ J⁰ₙ`, with every check recorded.
pub fn simplicity_pipeline(h: &ProjMap, opts: &SimplicityOptions) -> Result<PipelineRun> {
    let n = h.dim();
    let standardized = standardize_pair(h, opts)?;
    let fixing = fixing_element(&standardized, opts)?;
    let descent = sigma_descent(&fixing.g, &fixing.word)?;
    let commutator = commutator_to_j0(&descent.f0)?;
    let mut checks = Checks::default();
    let p = basis_point(n, 0);
    checks.add("h' sends (1:0:..:0) to (0:1:0:..:0)", {
        standardized
            .h_std
            .evaluate(&p)
            .map(|q| q.projectively_eq(&basis_point(n, 1)))
            .unwrap_or(false)
    });
    checks.add("g fixes p", fixing.g.evaluate(&p).map(|x| x.projectively_eq(&p)).unwrap_or(false));
    checks.add("tangent action of g is non-scalar", !fixing.tangent.is_scalar());
    checks.add("word for g evaluates to g", fixing.word.verify(&fixing.g));
    checks.add("word for f evaluates to f", descent.word.verify(&descent.f));
    checks.add("restriction to H0 is nontrivial", !descent.restriction.is_identity());
    checks.add(
        "restriction equals the tangent action conjugated by the base involution",
        descent.restriction == descent.expected_restriction,
    );
    checks.add("base of f0 equals the restriction", descent.base_matches_restriction());
    let f0_aff = descent.f0.embed()?;
    checks.add("f0 is de Jonquieres", is_in_jn(&f0_aff));
    checks.add("f0 has nontrivial base", !descent.f0.base().is_identity());
    let r = &commutator.r;
    checks.add("r is nontrivial", !r.is_identity());
    checks.add("r has trivial base", r.base().is_identity());
    let er = r.embed()?;
    let m = n - 1;
    let phi_ok = (0..m).all(|i| er.components()[i] == RatFn::var(n, i));
    checks.add("projection to the base is preserved by embed(r)", phi_ok);
    checks.add("embed(r) is de Jonquieres", is_in_jn(&er));
    checks.add("semidirect formula matches direct composition", commutator.formula == *r);
    checks.add(
        "word for r evaluates to r",
        commutator.word.verify(&er.to_proj()?),
    );
    Ok(PipelineRun {
        standardized,
        fixing,
        descent,
        commutator,
        checks,
    })
}

/// The two generator identities in the plane, checked exactly in the affine chart.
pub fn noether_check() -> Checks {
    let x1 = RatFn::var(2, 0);
    let x2 = RatFn::var(2, 1);
    let m = |a: RatFn, b: RatFn| AffineMap::new(vec![a, b]).unwrap();
    let neg_recip = |x: &RatFn| -&x.recip().unwrap();
    let alpha1 = m(x1.clone(), neg_recip(&x2));
    let alpha2 = m(neg_recip(&x1), x2.clone());
    let beta1 = m(x2.clone(), x1.clone());
    let beta2 = m(-&x1, -&x2);
    let quad = m(x1.recip().unwrap(), x2.recip().unwrap());
    let mut c = Checks::default();
    let lhs = beta1.compose(&alpha1).and_then(|x| x.compose(&beta1));
    c.add("alpha2 = beta1 alpha1 beta1", lhs.map(|x| x == alpha2).unwrap_or(false));
    let prod = alpha1.compose(&alpha2).and_then(|x| x.compose(&beta2));
    c.add("alpha1 alpha2 beta2 is the standard quadratic map", prod.map(|x| x == quad).unwrap_or(false));
    let j1 = extract(&alpha1).map(|e| in_j1(e.fiber())).unwrap_or(false);
    c.add("alpha1 lies in J1", j1);
    // the affine standard quadratic map is the projective standard involution
    let sigma = quad.to_proj().map(|s| s == ProjMap::standard_involution(2)).unwrap_or(false);
    c.add("standard quadratic map is the standard involution", sigma);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardize_sigma_at_given_point() {
        let s = ProjMap::standard_involution(2);
        let p = Point::from_ints(&[1, 2, 1]).unwrap();
        let st = standardize_pair_at(&s, &p).unwrap();
        assert!(st.q.projectively_eq(&Point::from_ints(&[2, 1, 2]).unwrap()));
        assert!(st.gamma.evaluate(&p).unwrap().projectively_eq(&basis_point(2, 0)));
        assert!(st.gamma.evaluate(&st.q).unwrap().projectively_eq(&basis_point(2, 1)));
        assert_eq!(
            standardize_pair_at(&ProjMap::identity(2), &p).unwrap_err(),
            Error::Precondition("h must be nontrivial")
        );
    }

    #[test]
    fn lambda_one_is_trivial() {
        assert!(alpha(3, 1).is_identity());
    }

    #[test]
    fn fixing_element_for_sigma() {
        let s = ProjMap::standard_involution(2);
        let opts = SimplicityOptions::default();
        let st = standardize_pair(&s, &opts).unwrap();
        let fx = fixing_element(&st, &opts).unwrap();
        assert!([2, 3, 5].contains(&fx.lambda));
        assert!(fx.word.verify(&fx.g));
    }

    #[test]
    fn commutator_translation_base() {
        // a = id, b = x + 1, β = diag(x, 1): r = diag((x - 1)/x, 1)
        let x = RatFn::var(1, 0);
        let b = AffineMap::new(vec![&x + &RatFn::one(1)]).unwrap();
        let f0 = JonqElt::new(Mat2K::identity(1), b).unwrap();
        let c = commutator_to_j0(&f0).unwrap();
        assert_eq!(c.beta, Mat2K::diagonal(x.clone(), RatFn::one(1)).unwrap());
        assert_eq!(c.r, c.formula);
        let ratio = &c.r.fiber().entry(0, 0).clone() / c.r.fiber().entry(1, 1);
        assert_eq!(ratio, &(&x - &RatFn::one(1)) / &x);
    }

    #[test]
    fn noether() {
        assert!(noether_check().all_passed());
    }

    #[test]
    fn pipeline_sigma_plane() {
        let run = simplicity_pipeline(&ProjMap::standard_involution(2), &SimplicityOptions::default()).unwrap();
        for (name, ok) in &run.checks.0 {
            assert!(ok, "{name}");
        }
    }
}
