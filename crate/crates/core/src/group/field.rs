//! Arithmetic in prime fields `F_p` with `p < 2^63`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::series::{BivariatePolynomial, Coefficient};

/// `2^61 − 1` and the next two primes below it.
pub const DEFAULT_PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    2_305_843_009_213_693_921,
    2_305_843_009_213_693_907,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `None` unless `p` is a prime in `[3, 2^63)`.
    pub fn new(p: u64) -> Option<Self> {
        ((3..1 << 63).contains(&p) && is_prime(p)).then_some(PrimeField { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn from_bigint(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    /// Reduction of a rational; `None` if the denominator vanishes mod `p`.
    pub fn from_coefficient(self, c: &Coefficient) -> Option<u64> {
        let num = self.from_bigint(c.numer());
        let den = self.inv(self.from_bigint(c.denom()))?;
        Some(self.mul(num, den))
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

/// A bivariate polynomial with coefficients reduced mod `p`, ready for
/// repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) struct ModPoly {
    terms: Vec<(u32, u32, u64)>,
    deg_x: u32,
    deg_y: u32,
}

impl ModPoly {
    pub fn reduce(poly: &BivariatePolynomial, field: PrimeField) -> Self {
        let terms: Vec<_> = poly
            .terms()
            .filter_map(|(m, c)| {
                let v = field
                    .from_coefficient(c)
                    .expect("integer polynomial coefficients");
                (v != 0).then_some((m.i, m.j, v))
            })
            .collect();
        let deg_x = poly.terms().map(|(m, _)| m.i).max().unwrap_or(0);
        let deg_y = poly.terms().map(|(m, _)| m.j).max().unwrap_or(0);
        ModPoly {
            terms,
            deg_x,
            deg_y,
        }
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    /// Value at the affine point `(x, y)`.
    pub fn eval(&self, field: PrimeField, x: u64, y: u64) -> u64 {
        self.terms.iter().fold(0, |acc, &(i, j, c)| {
            let t = field.mul(c, field.mul(field.pow(x, i as u64), field.pow(y, j as u64)));
            field.add(acc, t)
        })
    }

    /// Value of the bihomogenisation of bidegree `(dx, dy)` at
    /// `x = xn/xd, y = yn/yd`, i.e. `xd^dx · yd^dy · P(xn/xd, yn/yd)`.
    pub fn eval_homogeneous(
        &self,
        field: PrimeField,
        (xn, xd): (u64, u64),
        (yn, yd): (u64, u64),
        dx: u32,
        dy: u32,
    ) -> u64 {
        self.terms.iter().fold(0, |acc, &(i, j, c)| {
            let xs = field.mul(field.pow(xn, i as u64), field.pow(xd, (dx - i) as u64));
            let ys = field.mul(field.pow(yn, j as u64), field.pow(yd, (dy - j) as u64));
            field.add(acc, field.mul(c, field.mul(xs, ys)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_primes_are_prime_and_large() {
        for p in DEFAULT_PRIMES {
            assert!(is_prime(p));
            assert!(p > 1 << 60);
        }
        let distinct: std::collections::BTreeSet<_> = DEFAULT_PRIMES.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn primality_small_cases() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        // Carmichael number and a strong pseudoprime to base 2
        assert!(!is_prime(561));
        assert!(!is_prime(2047));
        assert!(!is_prime(DEFAULT_PRIMES[0] - 2));
    }

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(DEFAULT_PRIMES[1]).unwrap();
        for a in [1u64, 2, 12345, DEFAULT_PRIMES[1] - 1] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert!(PrimeField::new(1 << 61).is_none());
    }

    #[test]
    fn reduces_negative_and_fractional_coefficients() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_coefficient(&Coefficient::from(-1)), Some(6));
        assert_eq!(
            f.from_coefficient(&Coefficient::new(1, 2).unwrap()),
            Some(4)
        );
        assert_eq!(f.from_coefficient(&Coefficient::new(1, 7).unwrap()), None);
    }
}
