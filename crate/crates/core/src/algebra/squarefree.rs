//! Squarefree decomposition and square classes in `K* / (K*)^2`.

use std::collections::BTreeMap;

use super::gcd::{gcd, primitive_split};
use super::mpoly::MPoly;
use super::ratfn::RatFn;
use super::scalar::Rational;
use crate::error::{Error, Result};

/// `p = unit * prod factor_i ^ multiplicity_i`, factors squarefree, monic,
/// pairwise coprime, multiplicities distinct and increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<(MPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self, nvars: usize) -> MPoly {
        let mut acc = MPoly::constant(nvars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn squarefree_decompose(p: &MPoly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition"));
    }
    let unit = p.leading_coeff();
    let mut by_mult: BTreeMap<u32, MPoly> = BTreeMap::new();
    collect_factors(&p.monic(), &mut by_mult);
    let factors = by_mult
        .into_iter()
        .filter(|(_, f)| !f.is_constant())
        .map(|(m, f)| (f.monic(), m))
        .collect();
    Ok(SquarefreeDecomposition { unit, factors })
}

fn push_factor(acc: &mut BTreeMap<u32, MPoly>, f: MPoly, m: u32) {
    if f.is_constant() {
        return;
    }
    let entry = acc.entry(m).or_insert_with(|| MPoly::one(f.nvars()));
    *entry = &*entry * &f;
}

fn collect_factors(p: &MPoly, acc: &mut BTreeMap<u32, MPoly>) {
    if p.is_constant() {
        return;
    }
    // Monomial content first: x_v^e contributes (x_v, e).
    let mc = p.monomial_content();
    let p = if mc.iter().any(|&e| e > 0) {
        for (v, &e) in mc.iter().enumerate() {
            if e > 0 {
                push_factor(acc, MPoly::var(p.nvars(), v), e);
            }
        }
        p.div_monomial(&mc)
    } else {
        p.clone()
    };
    if p.is_constant() {
        return;
    }
    let used = p.vars_used();
    let main = (0..p.nvars())
        .filter(|&v| used[v])
        .min_by_key(|&v| p.degree_in(v))
        .unwrap();
    let (content, pp) = primitive_split(&p, main);
    collect_factors(&content, acc);
    yun(&pp, main, acc);
}

/// Yun's algorithm for a polynomial primitive in `v` (characteristic zero).
fn yun(f: &MPoly, v: usize, acc: &mut BTreeMap<u32, MPoly>) {
    if !f.uses_var(v) {
        return;
    }
    let df = f.derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while b.uses_var(v) {
        let a = gcd(&b, &d);
        let b_next = b.div_exact(&a).expect("gcd divides b");
        let c_next = d.div_exact(&a).expect("gcd divides d");
        d = &c_next - &b_next.derivative(v);
        push_factor(acc, a, i);
        b = b_next;
        i += 1;
    }
}

/// Odd-multiplicity part of `p` (product of squarefree factors with odd multiplicity), monic.
pub fn odd_part(p: &MPoly) -> Result<MPoly> {
    let dec = squarefree_decompose(p)?;
    let mut acc = MPoly::one(p.nvars());
    for (f, m) in &dec.factors {
        if m % 2 == 1 {
            acc = &acc * f;
        }
    }
    Ok(acc.monic())
}

/// Element of `K* / (K*)^2`. Constants are squares (the base field is treated
/// as algebraically closed), so the class is carried by a monic squarefree
/// polynomial; the trivial class has representative `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    rep: MPoly,
}

impl SquareClass {
    pub fn trivial(nvars: usize) -> Self {
        SquareClass {
            rep: MPoly::one(nvars),
        }
    }

    pub fn of_poly(p: &MPoly) -> Result<Self> {
        Ok(SquareClass { rep: odd_part(p)? })
    }

    pub fn representative(&self) -> &MPoly {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_constant()
    }

    /// Group law: multiply representatives and re-extract the odd part.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = gcd(&self.rep, &other.rep);
        // rep*rep' = g^2 * (rep/g)(rep'/g); the cofactors are coprime and squarefree.
        let a = self.rep.div_exact(&g).unwrap();
        let b = other.rep.div_exact(&g).unwrap();
        SquareClass {
            rep: (&a * &b).monic(),
        }
    }
}

/// The square class of a nonzero rational function: class of `num * den`.
pub fn square_class_of(h: &RatFn) -> Result<SquareClass> {
    if h.is_zero() {
        return Err(Error::ZeroInput("square class"));
    }
    // num and den are coprime, so odd parts multiply without interaction.
    let a = odd_part(h.num())?;
    let b = odd_part(h.den())?;
    Ok(SquareClass {
        rep: (&a * &b).monic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gcd::is_squarefree;
    use crate::algebra::scalar::rat;

    fn xy() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    #[test]
    fn decompose_mixed_multiplicities() {
        let (x, y) = xy();
        let p = &(&x - &y).pow(2) * &(&x + &y);
        let dec = squarefree_decompose(&p).unwrap();
        assert_eq!(dec.factors, vec![(&x + &y, 1), (&x - &y, 2)]);
        assert_eq!(dec.reassemble(2), p);
    }

    #[test]
    fn decompose_squarefree_and_power() {
        let (x, _) = xy();
        let dec = squarefree_decompose(&x).unwrap();
        assert_eq!(dec.factors, vec![(x.clone(), 1)]);
        let q = &x.pow(2) + &MPoly::one(2);
        let p = q.pow(3).scale(&rat(-5));
        let dec = squarefree_decompose(&p).unwrap();
        assert_eq!(dec.factors, vec![(q, 3)]);
        assert_eq!(dec.unit, rat(-5));
        assert_eq!(dec.reassemble(2), p);
    }

    #[test]
    fn zero_rejected() {
        assert!(squarefree_decompose(&MPoly::zero(1)).is_err());
        assert!(square_class_of(&RatFn::zero(1)).is_err());
    }

    #[test]
    fn content_factors_merge() {
        // (x+1)^2 * y^3 * (y+x)  over two variables
        let (x, y) = xy();
        let one = MPoly::one(2);
        let p = &(&(&x + &one).pow(2) * &y.pow(3)) * &(&y + &x);
        let dec = squarefree_decompose(&p).unwrap();
        assert_eq!(dec.reassemble(2), p);
        for (f, _) in &dec.factors {
            assert!(is_squarefree(f));
        }
    }

    #[test]
    fn square_classes() {
        let x = MPoly::var(1, 0);
        let one = MPoly::one(1);
        let c = square_class_of(&RatFn::from_poly(x.clone())).unwrap();
        assert_eq!(c.representative(), &x);
        let sq = square_class_of(&RatFn::from_poly((&x + &one).pow(2))).unwrap();
        assert!(sq.is_trivial());
        let h = RatFn::from_poly(&x + &one);
        let hx2 = &h * &RatFn::from_poly(x.pow(2));
        assert_eq!(square_class_of(&h).unwrap(), square_class_of(&hx2).unwrap());
        // constants are squares
        let neg = RatFn::constant(1, rat(-7));
        assert!(square_class_of(&neg).unwrap().is_trivial());
        // x / (x+1) has class x(x+1)
        let q = RatFn::new(x.clone(), &x + &one).unwrap();
        assert_eq!(square_class_of(&q).unwrap().representative(), &(&x * &(&x + &one)));
    }
}
