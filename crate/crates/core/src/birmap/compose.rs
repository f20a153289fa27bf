//! Composition of projective maps, with shortcuts for linear and monomial factors.

use num_traits::Zero;

use super::ProjMap;
use crate::algebra::{compose_poly, gcd, gcd_many, MPoly, Rational};
use crate::error::{Error, Result};

/// Canonical (coprime, not yet scalar-normalized) components of `f ∘ g`.
pub(super) fn compose_components(f: &ProjMap, g: &ProjMap) -> Result<Vec<MPoly>> {
    let gc = g.components();
    if f.is_linear() {
        let k = gc.len();
        let m = f.linear_matrix().unwrap();
        let comps: Vec<MPoly> = m
            .iter()
            .map(|row| {
                let mut acc = MPoly::zero(k);
                for (a, c) in row.iter().zip(gc) {
                    if !a.is_zero() {
                        acc = &acc + &c.scale(a);
                    }
                }
                acc
            })
            .collect();
        // an invertible linear change of the components keeps them coprime
        return finish(comps, !f.is_invertible_linear());
    }
    if g.is_invertible_linear() {
        // substitution by a linear automorphism is a ring automorphism
        let comps = f.components().iter().map(|c| compose_poly(c, gc)).collect();
        return finish(comps, false);
    }
    if f.is_monomial() {
        return monomial_outer(f, g);
    }
    let comps = f.components().iter().map(|c| compose_poly(c, gc)).collect();
    finish(comps, true)
}

fn finish(comps: Vec<MPoly>, need_gcd: bool) -> Result<Vec<MPoly>> {
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::CompositionDegenerate);
    }
    if !need_gcd {
        return Ok(comps);
    }
    let g = gcd_many(&comps);
    if g.is_one() {
        return Ok(comps);
    }
    Ok(comps
        .iter()
        .map(|c| c.div_exact(&g).expect("gcd divides"))
        .collect())
}

/// Pairwise coprime monic basis of the nonconstant parts of `polys`, with
/// each input written as `unit * prod basis[k]^e[k]`. Zero inputs map to `None`.
fn coprime_basis(polys: &[MPoly]) -> (Vec<MPoly>, Vec<Option<(Rational, Vec<u32>)>>) {
    let mut basis: Vec<MPoly> = Vec::new();
    // exponent of each input on each basis element
    let mut exps: Vec<Vec<u32>> = vec![Vec::new(); polys.len()];
    for (i, p) in polys.iter().enumerate() {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        basis.push(p.monic());
        for (j, e) in exps.iter_mut().enumerate() {
            e.push(u32::from(j == i));
        }
    }
    loop {
        let mut found = None;
        'outer: for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let g = gcd(&basis[a], &basis[b]);
                if !g.is_constant() {
                    found = Some((a, b, g));
                    break 'outer;
                }
            }
        }
        let Some((a, b, g)) = found else { break };
        let ba = basis[a].div_exact(&g).unwrap();
        let bb = basis[b].div_exact(&g).unwrap();
        basis[a] = ba;
        basis[b] = bb;
        basis.push(g);
        for e in exps.iter_mut() {
            let add = e[a] + e[b];
            e.push(add);
        }
        // drop constants
        let keep: Vec<bool> = basis.iter().map(|p| !p.is_constant()).collect();
        basis = basis.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| p).collect();
        for e in exps.iter_mut() {
            *e = e.iter().zip(&keep).filter(|(_, k)| **k).map(|(x, _)| *x).collect();
        }
    }
    let out = polys
        .iter()
        .zip(exps)
        .map(|(p, e)| {
            if p.is_zero() {
                None
            } else {
                Some((p.leading_coeff(), e))
            }
        })
        .collect();
    (basis, out)
}

/// `f ∘ g` for monomial `f`: products of powers of a coprime basis of `g`,
/// so the common factor is read off from exponents.
fn monomial_outer(f: &ProjMap, g: &ProjMap) -> Result<Vec<MPoly>> {
    let k = g.components().len();
    let (basis, facts) = coprime_basis(g.components());
    let nb = basis.len();
    let mut rows: Vec<Option<(Rational, Vec<u32>)>> = Vec::with_capacity(k);
    for c in f.components() {
        let (mono, coeff) = &c.terms()[0];
        let mut unit = coeff.clone();
        let mut e = vec![0u32; nb];
        let mut zero = false;
        for (j, &ej) in mono.exps().iter().enumerate() {
            if ej == 0 {
                continue;
            }
            match &facts[j] {
                None => {
                    zero = true;
                    break;
                }
                Some((u, fe)) => {
                    unit *= num_traits::pow(u.clone(), ej as usize);
                    for (acc, x) in e.iter_mut().zip(fe) {
                        *acc += x * ej;
                    }
                }
            }
        }
        rows.push(if zero { None } else { Some((unit, e)) });
    }
    if rows.iter().all(|r| r.is_none()) {
        return Err(Error::CompositionDegenerate);
    }
    let mins: Vec<u32> = (0..nb)
        .map(|b| rows.iter().flatten().map(|(_, e)| e[b]).min().unwrap())
        .collect();
    let mut powers: Vec<Vec<MPoly>> = basis.iter().map(|b| vec![MPoly::one(k), b.clone()]).collect();
    let comps = rows
        .iter()
        .map(|r| match r {
            None => MPoly::zero(k),
            Some((u, e)) => {
                let mut acc = MPoly::constant(k, u.clone());
                for b in 0..nb {
                    let d = (e[b] - mins[b]) as usize;
                    while powers[b].len() <= d {
                        let next = &powers[b][powers[b].len() - 1] * &powers[b][1];
                        powers[b].push(next);
                    }
                    if d > 0 {
                        acc = &acc * &powers[b][d];
                    }
                }
                acc
            }
        })
        .collect();
    Ok(comps)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Identity,
    Linear,
    Monomial,
    General,
}

fn kind(f: &ProjMap) -> Kind {
    if f.is_identity() {
        Kind::Identity
    } else if f.is_linear() {
        Kind::Linear
    } else if f.is_monomial() {
        Kind::Monomial
    } else {
        Kind::General
    }
}

/// Heuristic cost of composing `outer ∘ inner` next.
fn pair_cost(outer: &ProjMap, inner: &ProjMap) -> u64 {
    use Kind::*;
    let d = u64::from(outer.degree()) * u64::from(inner.degree());
    match (kind(outer), kind(inner)) {
        (Identity, _) | (_, Identity) => 0,
        (Linear, Linear) | (Monomial, Monomial) => 0,
        (General, Monomial) => 1,
        (General, Linear) | (Linear, General) => 2,
        (Monomial, General) => 3 + d,
        (Linear, Monomial) | (Monomial, Linear) => 1000 + d,
        (General, General) => 10 + d * d,
    }
}

/// `maps[0] ∘ maps[1] ∘ ...`, choosing the order of pairwise compositions
/// to keep intermediate components small.
pub fn compose_chain(maps: &[ProjMap]) -> Result<ProjMap> {
    let Some(first) = maps.first() else {
        return Err(Error::Invalid("empty composition".into()));
    };
    let mut list: Vec<ProjMap> = maps.to_vec();
    if let Some(f) = list.iter().find(|f| f.dim() != first.dim()) {
        return Err(Error::DimensionMismatch(first.dim(), f.dim()));
    }
    while list.len() > 1 {
        let mut best = 0;
        let mut best_cost = u64::MAX;
        for i in 0..list.len() - 1 {
            let c = pair_cost(&list[i], &list[i + 1]);
            if c < best_cost {
                best = i;
                best_cost = c;
            }
        }
        let c = list[best].compose(&list[best + 1])?;
        list.splice(best..best + 2, [c]);
    }
    Ok(list.pop().unwrap())
}
