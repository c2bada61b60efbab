//! Exact scalar fields used throughout the crate.
//!
//! Two fields matter in practice: the rationals [`Q`] (Lie algebra data,
//! derivative matrices) and [`RatFunc`](crate::ratfunc::RatFunc), rational
//! functions in a single formal parameter (the level `k`, or the loop
//! variable `t`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number.
pub type Q = BigRational;

/// Build a rational from a numerator and denominator.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integral rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A commutative field with exact arithmetic.
///
/// Methods take references so that big-number types are not cloned on
/// every operation.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;
    fn over(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverse())
    }
    fn from_int(n: i64) -> Self;
    fn from_q(value: &Q) -> Self;
    /// Rough size of the element, used to pick cheap pivots.
    fn complexity(&self) -> usize {
        0
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_int(n: i64) -> Self {
        qi(n)
    }
    fn from_q(value: &Q) -> Self {
        value.clone()
    }
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

/// Render a rational as `n` or `n/d`.
pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse `n`, `-n` or `n/d`.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub(crate) fn q_is_negative(value: &Q) -> bool {
    value.is_negative()
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, r: u32) -> Q {
    if r > n {
        return qi(0);
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

/// Bernoulli numbers `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b = vec![qi(1)];
    for m in 1..=n {
        let mut acc = qi(0);
        for j in 0..m {
            acc += binomial(m as u32 + 1, j as u32) * &b[j];
        }
        b.push(-acc / qi(m as i64 + 1));
    }
    b
}
