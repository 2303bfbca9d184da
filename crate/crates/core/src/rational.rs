//! Exact rationals with unbounded components.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational, always in lowest terms with a positive denominator.
///
/// Renders as `"num/den"`, including integers (`"1/1"`, `"0/1"`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den` reduced to lowest terms. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: usize) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// `u / 2^64`, the value of a 64-bit uniform draw.
    pub fn from_u64_fraction(u: u64) -> Self {
        Rational(BigRational::new(BigInt::from(u), BigInt::one() << 64usize))
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// `1 - self`.
    pub fn complement(&self) -> Rational {
        Rational(BigRational::one() - &self.0)
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    /// True iff `0 <= self <= 1`.
    pub fn is_probability(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    /// Decimal rendering rounded half-away-from-zero to `digits` significant
    /// digits, in scientific notation when the exponent is outside `[-5, digits)`.
    pub fn to_decimal(&self, digits: usize) -> String {
        use alloc::format;
        use alloc::string::ToString;

        let digits = digits.max(1);
        if self.is_zero() {
            return "0".into();
        }
        let negative = self.is_negative();
        let num: BigUint = self.numer().magnitude().clone();
        let den: BigUint = self.denom().magnitude().clone();

        // Find the decimal exponent e with 10^e <= |x| < 10^(e+1).
        let ten = BigUint::from(10u32);
        let mut exp: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        let leq = |e: i64| -> bool {
            // 10^e <= num/den
            if e >= 0 {
                ten.pow(e as u32) * &den <= num
            } else {
                den.clone() <= &num * ten.pow((-e) as u32)
            }
        };
        while !leq(exp) {
            exp -= 1;
        }
        while leq(exp + 1) {
            exp += 1;
        }

        // Scale so that the integer part carries `digits` significant digits.
        let shift = digits as i64 - 1 - exp;
        let (sn, sd) = if shift >= 0 {
            (num * ten.pow(shift as u32), den)
        } else {
            (num, den * ten.pow((-shift) as u32))
        };
        let (mut q, r) = sn.div_rem(&sd);
        if r * 2u32 >= sd {
            q += 1u32;
        }
        let mut mantissa = q.to_string();
        if mantissa.len() > digits {
            // Rounding carried into a new digit (e.g. 9.99 -> 10.0).
            mantissa.truncate(digits);
            exp += 1;
        }
        let sign = if negative { "-" } else { "" };
        let (int_part, frac_part) = if (-5..digits as i64).contains(&exp) {
            if exp >= 0 {
                let split = exp as usize + 1;
                (mantissa[..split].to_string(), mantissa[split..].to_string())
            } else {
                let zeros = "0".repeat((-exp - 1) as usize);
                ("0".to_string(), format!("{zeros}{mantissa}"))
            }
        } else {
            let body = if digits > 1 {
                format!("{}.{}", &mantissa[..1], mantissa[1..].trim_end_matches('0'))
            } else {
                mantissa.clone()
            };
            let body = body.trim_end_matches('.').to_string();
            return format!("{sign}{body}e{exp}");
        };
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(alloc::format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<Rational> for BigRational {
    fn from(r: Rational) -> Self {
        r.0
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
// Panics on a zero divisor; use `checked_div` where that can happen.
binop!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> core::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl core::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
