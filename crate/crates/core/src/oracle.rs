//! Randomized identity tests by evaluation over large prime fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{determinant, Fp};
use crate::algebra::scalar::ORACLE_PRIMES;
use crate::algebra::PrimeField;
use crate::birmap::ProjMap;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub field: PrimeField,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            field: PrimeField::default_oracle(),
            trials: 10,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn new(field: PrimeField, trials: usize, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Invalid("trials must be at least 1".into()));
        }
        Ok(OracleConfig { field, trials, seed })
    }

    /// The configured field, then the fixed fallback primes.
    fn fields(&self) -> impl Iterator<Item = PrimeField> + '_ {
        std::iter::once(self.field).chain(
            ORACLE_PRIMES
                .iter()
                .filter(move |&&p| p != self.field.modulus())
                .map(|&p| PrimeField::new(p).unwrap()),
        )
    }
}

enum Sample {
    Agree,
    Disagree,
    /// The point hit a degeneracy locus; draw another.
    Skip,
    /// Some coefficient does not reduce mod p.
    BadPrime,
}

/// Run `trials` successful samples of `test`, redrawing points on `Skip`
/// and the prime on `BadPrime`.
fn run_trials(
    cfg: &OracleConfig,
    npoints: usize,
    mut test: impl FnMut(&PrimeField, &[u64]) -> Sample,
) -> Result<bool> {
    let budget = 20 * cfg.trials + 20;
    'fields: for field in cfg.fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut done = 0;
        for _ in 0..budget {
            let x: Vec<u64> = (0..npoints).map(|_| rng.gen_range(1..field.modulus())).collect();
            match test(&field, &x) {
                Sample::Agree => done += 1,
                Sample::Disagree => return Ok(false),
                Sample::Skip => {}
                Sample::BadPrime => continue 'fields,
            }
            if done == cfg.trials {
                return Ok(true);
            }
        }
        return Err(Error::CouldNotSample);
    }
    Err(Error::CouldNotSample)
}

fn proportional(field: &PrimeField, a: &[u64], b: &[u64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| field.mul(a[i], b[j]) == field.mul(a[j], b[i])))
}

fn nonzero(v: &[u64]) -> bool {
    v.iter().any(|&c| c != 0)
}

/// Evaluation-based equality as projective maps; can only err towards "equal".
pub fn probably_equal(f: &ProjMap, g: &ProjMap, cfg: &OracleConfig) -> Result<bool> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    run_trials(cfg, f.dim() + 1, |field, x| {
        match (f.eval_fp(field, x), g.eval_fp(field, x)) {
            (Some(a), Some(b)) => {
                if !nonzero(&a) || !nonzero(&b) {
                    Sample::Skip
                } else if proportional(field, &a, &b) {
                    Sample::Agree
                } else {
                    Sample::Disagree
                }
            }
            _ => Sample::BadPrime,
        }
    })
}

/// Nonvanishing Jacobian determinant of the homogeneous components at a sampled point.
pub fn dominance_check(f: &ProjMap, cfg: &OracleConfig) -> Result<bool> {
    let k = f.dim() + 1;
    let partials: Vec<Vec<_>> = f
        .components()
        .iter()
        .map(|c| (0..k).map(|j| c.derivative(j)).collect())
        .collect();
    'fields: for field in cfg.fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.trials {
            let x: Vec<u64> = (0..k).map(|_| rng.gen_range(1..field.modulus())).collect();
            let mut m = Vec::with_capacity(k);
            for row in &partials {
                let mut r = Vec::with_capacity(k);
                for d in row {
                    match d.eval_fp(&field, &x) {
                        Some(v) => r.push(Fp { v, field }),
                        None => continue 'fields,
                    }
                }
                m.push(r);
            }
            if determinant(&m).v != 0 {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    Err(Error::CouldNotSample)
}

/// Both composites act as the identity at sampled points.
pub fn inverse_check(f: &ProjMap, f_inv: &ProjMap, cfg: &OracleConfig) -> Result<bool> {
    if f.dim() != f_inv.dim() {
        return Err(Error::DimensionMismatch(f.dim(), f_inv.dim()));
    }
    let one_way = |a: &ProjMap, b: &ProjMap| {
        run_trials(cfg, f.dim() + 1, |field, x| {
            let Some(y) = b.eval_fp(field, x) else { return Sample::BadPrime };
            if !nonzero(&y) {
                return Sample::Skip;
            }
            let Some(z) = a.eval_fp(field, &y) else { return Sample::BadPrime };
            if !nonzero(&z) {
                return Sample::Skip;
            }
            if proportional(field, &z, x) {
                Sample::Agree
            } else {
                Sample::Disagree
            }
        })
    };
    Ok(one_way(f, f_inv)? && one_way(f_inv, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, MPoly};

    #[test]
    fn equality() {
        let cfg = OracleConfig::default();
        let s = ProjMap::standard_involution(2);
        assert!(probably_equal(&s, &s, &cfg).unwrap());
        assert!(!probably_equal(&s, &ProjMap::identity(2), &cfg).unwrap());
    }

    #[test]
    fn dominance() {
        let cfg = OracleConfig::default();
        assert!(dominance_check(&ProjMap::standard_involution(2), &cfg).unwrap());
        assert!(dominance_check(&ProjMap::identity(3), &cfg).unwrap());
        let x0 = MPoly::var(3, 0);
        let x1 = MPoly::var(3, 1);
        let collapse = ProjMap::new(vec![x0.clone(), x1.clone(), x1]).unwrap();
        assert!(!dominance_check(&collapse, &cfg).unwrap());
    }

    #[test]
    fn inverses() {
        let cfg = OracleConfig::default();
        let s = ProjMap::standard_involution(2);
        assert!(inverse_check(&s, &s, &cfg).unwrap());
        let id = ProjMap::identity(2);
        assert!(inverse_check(&id, &id, &cfg).unwrap());
        let d = ProjMap::diagonal(&[rat(1), rat(2), rat(3)]).unwrap();
        assert!(!inverse_check(&d, &d, &cfg).unwrap());
    }

    #[test]
    fn reduction_failure_switches_prime() {
        let p = ORACLE_PRIMES[3];
        let c = crate::algebra::Rational::new(1.into(), p.into());
        let f = ProjMap::diagonal(&[rat(1), c]).unwrap();
        let cfg = OracleConfig::new(PrimeField::new(p).unwrap(), 5, 1).unwrap();
        assert!(probably_equal(&f, &f, &cfg).unwrap());
    }
}
