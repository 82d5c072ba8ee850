use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SeriesError;

/// Exact rational coefficient, always in lowest terms with a positive denominator.
///
/// Integer operands (denominator 1) take a fast path that skips the gcd
/// normalisation of the general rational routines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coefficient(BigRational);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient(BigRational::one())
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Coefficient(BigRational::from_integer(value.into()))
    }

    /// Builds `num / den`, reduced.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, SeriesError> {
        let den = den.into();
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        Ok(Coefficient(BigRational::new(num.into(), den)))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Coefficient(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn half(&self) -> Self {
        Coefficient(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        Ok(Coefficient(self.0.recip()))
    }
}

impl From<i64> for Coefficient {
    fn from(value: i64) -> Self {
        Coefficient::from_integer(value)
    }
}

impl From<BigInt> for Coefficient {
    fn from(value: BigInt) -> Self {
        Coefficient::from_integer(value)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Serialized as its display string so numerators of any size survive JSON.
impl serde::Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Coefficient {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |part: &str| {
            BigInt::from_str(part.trim()).map_err(|_| SeriesError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((num, den)) => Coefficient::new(parse(num)?, parse(den)?),
            None => Ok(Coefficient::from_integer(parse(s)?)),
        }
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: &'a Coefficient) -> Coefficient {
        if self.is_integer() && rhs.is_integer() {
            return Coefficient(BigRational::from_integer(self.0.numer() + rhs.0.numer()));
        }
        Coefficient(&self.0 + &rhs.0)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl<'a> AddAssign<&'a Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &'a Coefficient) {
        if self.is_integer() && rhs.is_integer() {
            let sum = self.0.numer() + rhs.0.numer();
            self.0 = BigRational::from_integer(sum);
        } else {
            self.0 += &rhs.0;
        }
    }
}

impl<'a> SubAssign<&'a Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &'a Coefficient) {
        if self.is_integer() && rhs.is_integer() {
            let diff = self.0.numer() - rhs.0.numer();
            self.0 = BigRational::from_integer(diff);
        } else {
            self.0 -= &rhs.0;
        }
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: &'a Coefficient) -> Coefficient {
        if self.is_integer() && rhs.is_integer() {
            return Coefficient(BigRational::from_integer(self.0.numer() - rhs.0.numer()));
        }
        Coefficient(&self.0 - &rhs.0)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: &'a Coefficient) -> Coefficient {
        if self.is_integer() && rhs.is_integer() {
            return Coefficient(BigRational::from_integer(self.0.numer() * rhs.0.numer()));
        }
        Coefficient(&self.0 * &rhs.0)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient(-self.0)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient(-self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_positive_denominator() {
        let c = Coefficient::new(6, -4).unwrap();
        assert_eq!(c.numer(), &BigInt::from(-3));
        assert_eq!(c.denom(), &BigInt::from(2));
        assert_eq!(c.to_string(), "-3/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Coefficient::new(1, 0), Err(SeriesError::ZeroDenominator));
    }

    #[test]
    fn integer_fast_path_matches_general_path() {
        let a = Coefficient::from(7);
        let b = Coefficient::from(-12);
        assert_eq!(&a + &b, Coefficient::from(-5));
        assert_eq!(&a * &b, Coefficient::from(-84));
        let half = Coefficient::new(1, 2).unwrap();
        assert_eq!(&half + &half, Coefficient::one());
        assert_eq!(Coefficient::from(3).half(), Coefficient::new(3, 2).unwrap());
    }

    #[test]
    fn parses_display_form() {
        for text in ["0", "-17", "5/3", "-1/2", "123456789012345678901234567890"] {
            let c: Coefficient = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
        assert!("1/0".parse::<Coefficient>().is_err());
        assert!("x".parse::<Coefficient>().is_err());
    }
}
