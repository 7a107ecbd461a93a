//! Exact rational scalars.
//!
//! Every coefficient in this crate is a [`Rat`]: a reduced fraction of
//! 128-bit integers. All arithmetic goes through the checked operations
//! of the underlying ratio type, so a computation that leaves the 128-bit
//! range panics with an explicit message instead of silently wrapping.
//! The intended workloads (hand-sized polynomials, bounded searches) stay
//! far below that limit; the panic is a tripwire, not a recovery path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

const OVERFLOW_MSG: &str = "rational arithmetic overflowed 128 bits";

/// An exact rational number with overflow-checked arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reduced to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Rat {
        assert!(denom != 0, "rational with zero denominator");
        Rat(Ratio::new(numer, denom))
    }

    pub fn from_integer(n: i128) -> Rat {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
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

    /// The value as a nonnegative integer, if it is one and fits in `u64`.
    pub fn as_natural(&self) -> Option<u64> {
        if self.0.is_integer() && !self.0.is_negative() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    /// The value as a (possibly negative) integer, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        if self.0.is_integer() {
            Some(*self.0.numer())
        } else {
            None
        }
    }

    /// Raises to a nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Rat {
        let mut base = *self;
        let mut acc = Rat::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::ZERO
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_add(&rhs.0).expect(OVERFLOW_MSG))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_sub(&rhs.0).expect(OVERFLOW_MSG))
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_mul(&rhs.0).expect(OVERFLOW_MSG))
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rat(self.0.checked_div(&rhs.0).expect(OVERFLOW_MSG))
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_integer(n as i128)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Rat {
        Rat::from_integer(n as i128)
    }
}

impl From<u32> for Rat {
    fn from(n: u32) -> Rat {
        Rat::from_integer(n as i128)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::from_integer(n as i128)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a rational literal such as `7` or `-3/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError {
    text: String,
}

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.text)
    }
}

impl std::error::Error for ParseRatError {}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let bad = || ParseRatError { text: s.to_string() };
        let s = s.trim();
        let (numer_str, denom_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer: i128 = numer_str.parse().map_err(|_| bad())?;
        match denom_str {
            None => Ok(Rat::from_integer(numer)),
            Some(d) => {
                let denom: i128 = d.parse().map_err(|_| bad())?;
                if denom == 0 {
                    return Err(bad());
                }
                Ok(Rat::new(numer, denom))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_reduces_to_lowest_terms() {
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(half + third, Rat::new(5, 6));
        assert_eq!(half * third, Rat::new(1, 6));
        assert_eq!(Rat::new(2, 4), half);
        assert_eq!(Rat::new(-1, -2), half);
        assert_eq!(Rat::new(1, -2), -half);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = Rat::new(3, 2);
        let mut acc = Rat::ONE;
        for k in 0..8 {
            assert_eq!(x.pow(k), acc);
            acc = acc * x;
        }
        assert_eq!(Rat::ZERO.pow(0), Rat::ONE);
    }

    #[test]
    fn natural_extraction() {
        assert_eq!(Rat::from_integer(7).as_natural(), Some(7));
        assert_eq!(Rat::ZERO.as_natural(), Some(0));
        assert_eq!(Rat::from_integer(-1).as_natural(), None);
        assert_eq!(Rat::new(1, 2).as_natural(), None);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["0", "7", "-3", "1/2", "-5/3"] {
            let r: Rat = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
        assert_eq!(" 3 / 4 ".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert!("".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/2".parse::<Rat>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflowed 128 bits")]
    fn overflow_panics_loudly() {
        let big = Rat::from_integer(i128::MAX / 2 + 1);
        let _ = big + big;
    }
}
