//! Text syntax for maps and structured (serde) forms for maps and path artifacts.
//!
//! ```text
//! [x1*x2 : x0*x2 : x0*x1]          projective, variables x0..xn
//! (x1, x2 + x1^2)                  affine, variables x1..xn
//! J([[x1, 1], [1, 0]], (x1 + 1))   de Jonquières (fiber matrix, base map)
//! sigma(3), id(2)                  standard involution, identity
//! ```
//! Components accept `+ - * /`, integer powers and parentheses.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::mpoly::default_names;
use crate::algebra::scalar::{format_rational, parse_rational};
use crate::algebra::{MPoly, Monomial, RatFn, Rational};
use crate::birmap::{compose_chain, AffineMap, ProjMap};
use crate::deform::NormalSplit;
use crate::error::{Error, Result};
use crate::jonquieres::{JonqElt, Mat2K};
use crate::paths::{Node, PathFamily};

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Proj(ProjMap),
    Affine(AffineMap),
    Jonq(JonqElt),
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Var(usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

impl Expr {
    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Num(_) => None,
            Expr::Var(v, _) => Some(*v),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.max_var().max(b.max_var())
            }
            Expr::Neg(a) | Expr::Pow(a, _, _) => a.max_var(),
        }
    }

    /// Evaluate with variable `x_i` mapped to ring variable `i - offset`.
    fn eval(&self, nvars: usize, offset: usize) -> Result<RatFn> {
        Ok(match self {
            Expr::Num(c) => RatFn::constant(nvars, c.clone()),
            Expr::Var(v, pos) => {
                if *v < offset || v - offset >= nvars {
                    let hi = nvars + offset - 1;
                    return Err(parse_err(*pos, &format!("a variable among x{offset}..x{hi}")));
                }
                RatFn::var(nvars, v - offset)
            }
            Expr::Add(a, b) => &a.eval(nvars, offset)? + &b.eval(nvars, offset)?,
            Expr::Sub(a, b) => &a.eval(nvars, offset)? - &b.eval(nvars, offset)?,
            Expr::Mul(a, b) => &a.eval(nvars, offset)? * &b.eval(nvars, offset)?,
            Expr::Div(a, b, pos) => {
                let d = b.eval(nvars, offset)?;
                if d.is_zero() {
                    return Err(parse_err(*pos, "a nonzero divisor"));
                }
                &a.eval(nvars, offset)? / &d
            }
            Expr::Neg(a) => -&a.eval(nvars, offset)?,
            Expr::Pow(a, e, pos) => {
                let b = a.eval(nvars, offset)?;
                if *e < 0 && b.is_zero() {
                    return Err(parse_err(*pos, "a nonzero base for a negative power"));
                }
                b.pow(*e as i32)
            }
        })
    }
}

fn parse_err(pos: usize, expected: &str) -> Error {
    Error::Parse {
        pos,
        expected: expected.to_string(),
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_err(self.pos, &format!("'{}'", c as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let at = self.pos;
        let d = self.digits().ok_or_else(|| parse_err(at, "an integer"))?;
        let v: i64 = d.parse().map_err(|_| parse_err(at, "a small integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn done(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(parse_err(self.pos, "end of input"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        if self.eat(b'+') {
            return self.term();
        }
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.peek() == Some(b'/') {
                let pos = self.pos;
                self.pos += 1;
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?), pos);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.pos;
        if self.eat(b'^') {
            let e = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), e, pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let pos = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let d = self.digits().ok_or_else(|| parse_err(at, "a variable index"))?;
                Ok(Expr::Var(d.parse().map_err(|_| parse_err(at, "a variable index"))?, pos))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Expr::Num(parse_rational(d).unwrap()))
            }
            _ => Err(parse_err(self.pos, "a number, a variable or '('")),
        }
    }

    fn list(&mut self, open: u8, sep: u8, close: u8) -> Result<Vec<Expr>> {
        self.expect(open)?;
        let mut out = vec![self.expr()?];
        while self.eat(sep) {
            out.push(self.expr()?);
        }
        self.expect(close)?;
        Ok(out)
    }
}

fn to_poly(r: RatFn, pos: usize) -> Result<MPoly> {
    let c = r.den().constant_value().ok_or_else(|| parse_err(pos, "a polynomial component"))?;
    Ok(r.num().scale(&(Rational::one() / c)))
}

fn size_arg(p: &mut Parser) -> Result<usize> {
    p.expect(b'(')?;
    let at = p.pos;
    let n = p.integer()?;
    p.expect(b')')?;
    usize::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| parse_err(at, "a dimension >= 1"))
}

fn affine_from(exprs: &[Expr]) -> Result<AffineMap> {
    let n = exprs.len();
    let comps = exprs.iter().map(|e| e.eval(n, 1)).collect::<Result<Vec<_>>>()?;
    AffineMap::new(comps)
}

fn proj_from(exprs: &[Expr], start: usize) -> Result<ProjMap> {
    if exprs.len() < 2 {
        return Err(parse_err(start, "at least two projective components"));
    }
    let k = exprs.len();
    let comps = exprs
        .iter()
        .map(|e| to_poly(e.eval(k, 0)?, start))
        .collect::<Result<Vec<_>>>()?;
    ProjMap::new(comps)
}

/// Parse a projective map, an affine map or a de Jonquières element.
pub fn parse_map(text: &str) -> Result<Parsed> {
    let mut p = Parser::new(text);
    let out = parse_one(&mut p)?;
    p.done()?;
    Ok(out)
}

fn parse_one(p: &mut Parser) -> Result<Parsed> {
    p.skip_ws();
    let start = p.pos;
    Ok(match p.peek() {
        Some(b'[') => Parsed::Proj(proj_from(&p.list(b'[', b':', b']')?, start)?),
        Some(b'(') => Parsed::Affine(affine_from(&p.list(b'(', b',', b')')?)?),
        Some(b'J') => {
            p.pos += 1;
            p.expect(b'(')?;
            p.expect(b'[')?;
            let r0 = p.list(b'[', b',', b']')?;
            p.expect(b',')?;
            let r1 = p.list(b'[', b',', b']')?;
            p.expect(b']')?;
            if r0.len() != 2 || r1.len() != 2 {
                return Err(parse_err(start, "a 2x2 fiber matrix"));
            }
            let base = if p.eat(b',') {
                Some(p.list(b'(', b',', b')')?)
            } else {
                None
            };
            p.expect(b')')?;
            let entries = [&r0[0], &r0[1], &r1[0], &r1[1]];
            let m = match &base {
                Some(b) => b.len(),
                None => entries.iter().filter_map(|e| e.max_var()).max().unwrap_or(1).max(1),
            };
            let ev = |e: &Expr| e.eval(m, 1);
            let fiber = Mat2K::new([ev(entries[0])?, ev(entries[1])?, ev(entries[2])?, ev(entries[3])?])?;
            let base = match base {
                Some(b) => affine_from(&b)?,
                None => AffineMap::identity(m),
            };
            Parsed::Jonq(JonqElt::new(fiber, base)?)
        }
        _ if p.keyword("sigma") => Parsed::Proj(ProjMap::standard_involution(size_arg(p)?)),
        _ if p.keyword("id") => Parsed::Proj(ProjMap::identity(size_arg(p)?)),
        _ => return Err(parse_err(p.pos, "'[', '(', 'J', 'sigma' or 'id'")),
    })
}

fn into_proj(m: Parsed) -> Result<ProjMap> {
    match m {
        Parsed::Proj(f) => Ok(f),
        Parsed::Affine(f) => f.to_proj(),
        Parsed::Jonq(e) => e.embed()?.to_proj(),
    }
}

/// Attach an inverse from the inversion rules unless one is present.
pub fn certified(f: ProjMap) -> Result<ProjMap> {
    if f.has_inverse() {
        return Ok(f);
    }
    Ok(f.invert()?.inverse().expect("inversion attaches the original map"))
}

/// A product `f1 * f2 * ...` of maps, each certified by an inversion rule;
/// the composite `f1 ∘ f2 ∘ ...` carries the composed certificate.
pub fn parse_certified(text: &str) -> Result<ProjMap> {
    let mut p = Parser::new(text);
    let mut factors = vec![certified(into_proj(parse_one(&mut p)?)?)?];
    while p.eat(b'*') {
        factors.push(certified(into_proj(parse_one(&mut p)?)?)?);
    }
    p.done()?;
    compose_chain(&factors)
}

/// A projective map from any accepted form (affine and de Jonquières ones are homogenized).
pub fn parse_proj(text: &str) -> Result<ProjMap> {
    into_proj(parse_map(text)?)
}

pub fn parse_affine(text: &str) -> Result<AffineMap> {
    match parse_map(text)? {
        Parsed::Proj(f) => f.to_affine(),
        Parsed::Affine(f) => Ok(f),
        Parsed::Jonq(e) => e.embed(),
    }
}

/// A point `(a0 : ... : an)` or `(a1, ..., an)` with rational coordinates.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_err(0, "a parenthesized point"))?;
    let sep = if inner.contains(':') { ':' } else { ',' };
    inner
        .split(sep)
        .map(|c| parse_rational(c.trim()).ok_or_else(|| parse_err(0, "a rational coordinate")))
        .collect()
}

pub fn parse_rational_arg(text: &str) -> Result<Rational> {
    parse_rational(text.trim()).ok_or_else(|| parse_err(0, "a rational number"))
}

pub fn format_jonq(e: &JonqElt) -> String {
    let names = default_names(e.dim() - 1, 1);
    let f: Vec<String> = e
        .fiber()
        .entries()
        .iter()
        .map(|x| x.display_with(&names).to_string())
        .collect();
    format!("J([[{}, {}], [{}, {}]], {})", f[0], f[1], f[2], f[3], e.base())
}

// ---- structured forms ----

/// Polynomial as `nvars` and a map from exponent vectors (comma-joined) to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub dim: usize,
    pub components: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<PolyJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitJson {
    pub fx: Vec<RatFnJson>,
    pub fy: RatFnJson,
    pub gy: RatFnJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeJson {
    Constant { map: MapJson },
    Linear { matrix: Vec<Vec<PolyJson>> },
    Fiber { entries: Vec<RatFnJson> },
    Deformation { fwd: SplitJson, inv: Option<SplitJson> },
    Lift { base: Box<PathJson> },
    Reverse { path: Box<PathJson> },
    Compose { outer: Box<PathJson>, inner: Box<PathJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub dim: usize,
    pub exclusion: PolyJson,
    pub node: NodeJson,
}

/// A path together with its claimed endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathArtifact {
    pub start: MapJson,
    pub end: MapJson,
    pub start_text: String,
    pub end_text: String,
    pub path: PathJson,
}

pub fn poly_to_json(p: &MPoly) -> PolyJson {
    let terms = p
        .iter_terms()
        .map(|(e, c)| {
            let key: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            (key.join(","), format_rational(c))
        })
        .collect();
    PolyJson {
        nvars: p.nvars(),
        terms,
    }
}

pub fn poly_from_json(j: &PolyJson) -> Result<MPoly> {
    let bad = |what: &str| Error::Invalid(format!("malformed polynomial: {what}"));
    let mut terms = Vec::with_capacity(j.terms.len());
    for (k, c) in &j.terms {
        let exps: Vec<u32> = if k.is_empty() {
            Vec::new()
        } else {
            k.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad("exponent")))
                .collect::<Result<_>>()?
        };
        if exps.len() != j.nvars {
            return Err(bad("exponent vector length"));
        }
        let c = parse_rational(c).ok_or_else(|| bad("coefficient"))?;
        terms.push((Monomial::new(exps), c));
    }
    Ok(MPoly::from_terms(j.nvars, terms))
}

pub fn ratfn_to_json(r: &RatFn) -> RatFnJson {
    RatFnJson {
        num: poly_to_json(r.num()),
        den: poly_to_json(r.den()),
    }
}

pub fn ratfn_from_json(j: &RatFnJson) -> Result<RatFn> {
    RatFn::new(poly_from_json(&j.num)?, poly_from_json(&j.den)?)
        .ok_or_else(|| Error::Invalid("zero denominator".into()))
}

/// Includes the materialized inverse when certified.
pub fn map_to_json(f: &ProjMap) -> MapJson {
    MapJson {
        dim: f.dim(),
        components: f.components().iter().map(poly_to_json).collect(),
        inverse: f.inverse().map(|g| g.components().iter().map(poly_to_json).collect()),
    }
}

/// An inverse read from JSON is certified by exact composition.
pub fn map_from_json(j: &MapJson) -> Result<ProjMap> {
    let comps = j.components.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?;
    if comps.len() != j.dim + 1 {
        return Err(Error::Invalid("component count does not match dimension".into()));
    }
    let f = ProjMap::new(comps)?;
    match &j.inverse {
        Some(inv) => {
            let g = ProjMap::new(inv.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?)?;
            f.certify(g)
        }
        None => Ok(f),
    }
}

fn split_to_json(s: &NormalSplit) -> SplitJson {
    SplitJson {
        fx: s.fx.iter().map(ratfn_to_json).collect(),
        fy: ratfn_to_json(&s.fy),
        gy: ratfn_to_json(&s.gy),
    }
}

fn split_from_json(j: &SplitJson) -> Result<NormalSplit> {
    Ok(NormalSplit {
        fx: j.fx.iter().map(ratfn_from_json).collect::<Result<_>>()?,
        fy: ratfn_from_json(&j.fy)?,
        gy: ratfn_from_json(&j.gy)?,
    })
}

pub fn path_to_json(p: &PathFamily) -> PathJson {
    let node = match p.node() {
        Node::Constant(f) => NodeJson::Constant { map: map_to_json(f) },
        Node::Linear(m) => NodeJson::Linear {
            matrix: m.iter().map(|r| r.iter().map(poly_to_json).collect()).collect(),
        },
        Node::Fiber(e) => NodeJson::Fiber {
            entries: e.iter().map(ratfn_to_json).collect(),
        },
        Node::Deformation { fwd, inv } => NodeJson::Deformation {
            fwd: split_to_json(fwd),
            inv: inv.as_ref().map(split_to_json),
        },
        Node::Lift(b) => NodeJson::Lift {
            base: Box::new(path_to_json(b)),
        },
        Node::Reverse(q) => NodeJson::Reverse {
            path: Box::new(path_to_json(q)),
        },
        Node::Compose(a, b) => NodeJson::Compose {
            outer: Box::new(path_to_json(a)),
            inner: Box::new(path_to_json(b)),
        },
    };
    PathJson {
        dim: p.dim(),
        exclusion: poly_to_json(p.exclusion()),
        node,
    }
}

/// Rebuild a path; the exclusion polynomial is recomputed and must match the recorded one.
pub fn path_from_json(j: &PathJson) -> Result<PathFamily> {
    let node = match &j.node {
        NodeJson::Constant { map } => Node::Constant(map_from_json(map)?),
        NodeJson::Linear { matrix } => Node::Linear(
            matrix
                .iter()
                .map(|r| r.iter().map(poly_from_json).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
        ),
        NodeJson::Fiber { entries } => {
            let e: Vec<RatFn> = entries.iter().map(ratfn_from_json).collect::<Result<_>>()?;
            let e: [RatFn; 4] = e
                .try_into()
                .map_err(|_| Error::Invalid("fiber nodes have four entries".into()))?;
            Node::Fiber(e)
        }
        NodeJson::Deformation { fwd, inv } => Node::Deformation {
            fwd: split_from_json(fwd)?,
            inv: inv.as_ref().map(split_from_json).transpose()?,
        },
        NodeJson::Lift { base } => Node::Lift(path_from_json(base)?),
        NodeJson::Reverse { path } => Node::Reverse(path_from_json(path)?),
        NodeJson::Compose { outer, inner } => Node::Compose(path_from_json(outer)?, path_from_json(inner)?),
    };
    let p = PathFamily::rebuild(j.dim, node)?;
    if *p.exclusion() != poly_from_json(&j.exclusion)? {
        return Err(Error::Invalid("recorded exclusion polynomial does not match the family".into()));
    }
    Ok(p)
}

pub fn artifact(p: &PathFamily, start: &ProjMap, end: &ProjMap) -> PathArtifact {
    PathArtifact {
        start: map_to_json(start),
        end: map_to_json(end),
        start_text: start.to_string(),
        end_text: end.to_string(),
        path: path_to_json(p),
    }
}

/// `(path, start, end)` from an artifact.
pub fn from_artifact(a: &PathArtifact) -> Result<(PathFamily, ProjMap, ProjMap)> {
    Ok((path_from_json(&a.path)?, map_from_json(&a.start)?, map_from_json(&a.end)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn parse_sigma() {
        let f = parse_proj("[x1*x2 : x0*x2 : x0*x1]").unwrap();
        assert_eq!(f, ProjMap::standard_involution(2));
        assert_eq!(parse_proj("sigma(2)").unwrap(), f);
    }

    #[test]
    fn parse_affine_and_errors() {
        let Parsed::Affine(f) = parse_map("(x1, x2 + x1^2)").unwrap() else { panic!() };
        assert_eq!(f.dim(), 2);
        assert_eq!(parse_map("[x0 : x1^2]").unwrap_err(), Error::Inhomogeneous);
        assert!(matches!(parse_map("[x0 : x1 +]"), Err(Error::Parse { pos: 10, .. })));
        assert!(matches!(parse_map("[x0 : x3]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("(x0, x1)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_jonquieres() {
        let Parsed::Jonq(e) = parse_map("J([[0, x1], [1, 0]])").unwrap() else { panic!() };
        assert_eq!(e, crate::jonquieres::f_h(&RatFn::var(1, 0)).unwrap());
        let Parsed::Jonq(e) = parse_map("J([[x1, 1], [0, 1]], (x1 + 1))").unwrap() else { panic!() };
        assert_eq!(parse_map(&format_jonq(&e)).unwrap(), Parsed::Jonq(e));
    }

    #[test]
    fn print_parse_round_trip() {
        let maps = [
            "[x1*x2 : x0*x2 : x0*x1]",
            "[2*x0^2 - 1/3*x1*x2 : x1^2 : x2^2 + x0*x1]",
            "[x0 + x1 : 5*x1 : -x2 + 7/2*x0]",
        ];
        for m in maps {
            let f = parse_proj(m).unwrap();
            assert_eq!(parse_proj(&f.to_string()).unwrap(), f);
        }
        let g = parse_affine("(x1/(x2 + 1), -x2/x1 + 1/2)").unwrap();
        assert_eq!(parse_affine(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn certified_products() {
        let f = parse_certified("sigma(2) * [x0 + x1 + x2 : x1 - x2 : x2 + 2*x0] * sigma(2)").unwrap();
        assert!(f.has_inverse());
        assert!(f.compose(&f.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("(1 : 2 : -1/2)").unwrap(), vec![rat(1), rat(2), crate::algebra::rat_frac(-1, 2)]);
    }

    #[test]
    fn path_json_round_trip() {
        let s = ProjMap::standard_involution(2);
        let p = crate::paths::connect_to_identity(&s, &Default::default()).unwrap();
        let j = path_to_json(&p);
        let q = path_from_json(&j).unwrap();
        assert_eq!(q.specialize(&rat(1)).unwrap(), s);
        assert_eq!(path_to_json(&q), j);
    }
}
