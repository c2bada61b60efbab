//! Half-integer quantities: conformal weights and grading degrees.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::field::{q, Q};

/// A number in `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_twice(n: i64) -> Self {
        HalfInt(n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_q(self) -> Q {
        q(self.0, 2)
    }

    /// From a rational in `(1/2)Z`.
    pub fn from_q(value: &Q) -> Option<Self> {
        let t = value * Q::from_integer(2.into());
        if t.is_integer() {
            i64::try_from(t.to_integer()).ok().map(HalfInt)
        } else {
            None
        }
    }

    pub fn times(self, n: i64) -> Self {
        HalfInt(self.0 * n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v = crate::field::parse_q(s).ok_or_else(|| format!("not a number: {s}"))?;
        HalfInt::from_q(&v).ok_or_else(|| format!("not a half-integer: {s}"))
    }
}
