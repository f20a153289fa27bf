//! Scalars: exact rationals and residues modulo a word-sized prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Arithmetic in the prime field `Z/pZ` for a prime `p < 2^63`.
///
/// Elements are plain `u64` residues in `0..p`; the field carries only the
/// modulus so that any number of residues can share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Primes above 2^31 used by the randomized checks. The first entry is the
/// default; later entries are fallbacks when a denominator vanishes mod p.
pub const ORACLE_PRIMES: [u64; 4] = [
    2_305_843_009_213_693_951, // 2^61 - 1
    1_000_000_000_000_000_003,
    4_611_686_018_427_387_847,
    4_294_967_291,
];

impl PrimeField {
    pub fn new(p: u64) -> Option<Self> {
        if p < 3 || p >= (1 << 63) || !is_prime_u64(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn default_oracle() -> Self {
        PrimeField { p: ORACLE_PRIMES[0] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let m = self.p as i128;
        ((v as i128).rem_euclid(m)) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Reduce a rational mod p; `None` when the denominator vanishes.
    pub fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        let n = self.from_bigint(q.numer());
        Some(self.mul(n, self.inv(d)?))
    }

    /// Centered lift of a residue, used only for display.
    pub fn lift(&self, a: u64) -> Rational {
        if a > self.p / 2 {
            -Rational::from_integer(BigInt::from(self.p - a))
        } else {
            Rational::from_integer(BigInt::from(a))
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_primes_are_prime_and_large() {
        for p in ORACLE_PRIMES {
            assert!(is_prime_u64(p), "{p}");
            assert!(p > 1 << 31);
        }
        assert!(!is_prime_u64(2_305_843_009_213_693_953));
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = PrimeField::default_oracle();
        let a = 123_456_789_012_345u64;
        let ia = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ia), 1);
        assert_eq!(f.add(a, f.neg(a)), 0);
        assert_eq!(f.from_rational(&rat_frac(1, 2)).map(|h| f.mul(h, 2)), Some(1));
        assert_eq!(f.from_i64(-1), f.modulus() - 1);
    }

    #[test]
    fn rationals_are_reduced() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert!(parse_rational("1/0").is_none());
    }
}
