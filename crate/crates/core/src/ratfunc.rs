//! Rational functions in one formal parameter over `Q`.
//!
//! The same type serves as `Q(k)` (the level) and `Q(t)` (the loop
//! variable); only the rendering symbol differs.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{fmt_q, parse_q, q_is_negative, Field, Q};
use crate::upoly::UniPoly;

/// Reduced fraction `num / den` with monic `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

type Poly = UniPoly<Q>;

impl Eq for UniPoly<Q> {}

impl std::hash::Hash for UniPoly<Q> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs().hash(state)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        if den.is_constant() {
            let c = den.leading();
            return RatFunc {
                num: num.scale(&c.inverse()),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inverse();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The formal parameter itself.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `c * var^n` for any integer `n`.
    pub fn laurent(c: Q, n: i32) -> Self {
        if n >= 0 {
            Self::from_poly(Poly::monomial(c, n as usize))
        } else {
            RatFunc::new(Poly::constant(c), Poly::monomial(<Q as Field>::one(), (-n) as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if the function is constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Evaluate at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.times(&base);
        }
        acc
    }

    /// Render using `var` as the parameter name.
    pub fn render(&self, var: &str) -> String {
        let num = render_poly(&self.num, var);
        if self.den.is_one() {
            return num;
        }
        let den = render_poly(&self.den, var);
        let num = if self.num.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = if self.den.term_count() > 1 || !self.den.is_constant() && !self.den.leading().is_one() {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }

    /// True when rendering needs parentheses to act as a product factor.
    pub fn is_compound(&self) -> bool {
        !(self.den.is_one() && self.num.term_count() <= 1)
    }

    /// Parse an arithmetic expression in `var` with `+ - * / ^` and parentheses.
    pub fn parse(text: &str, var: &str) -> Result<Self, String> {
        let mut p = ExprParser {
            s: text.as_bytes(),
            pos: 0,
            var: var.as_bytes(),
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(format!("trailing input at {} in {:?}", p.pos, text));
        }
        Ok(v)
    }
}

fn render_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = &p.coeffs()[i];
        if c.is_zero() {
            continue;
        }
        let neg = q_is_negative(c);
        let a = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if i == 0 {
            out.push_str(&fmt_q(&a));
            continue;
        }
        if !a.is_one() {
            out.push_str(&fmt_q(&a));
            out.push('*');
        }
        out.push_str(var);
        if i > 1 {
            out.push_str(&format!("^{i}"));
        }
    }
    out
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.negated()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.plus(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.minus(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.times(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc.over(&d);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.s.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: i32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| "bad exponent".to_string())?;
            if n < 0 && base.is_zero() {
                return Err("negative power of zero".into());
            }
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.negated())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(RatFunc::from_rational(parse_q(text).unwrap()))
            }
            Some(_) if self.s[self.pos..].starts_with(self.var) => {
                let end = self.pos + self.var.len();
                if self
                    .s
                    .get(end)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    return Err("unknown identifier".into());
                }
                self.pos = end;
                Ok(RatFunc::var())
            }
            _ => Err(format!("unexpected input at {}", self.pos)),
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_exact(&g);
        let b = self.den.div_exact(&g);
        RatFunc::new(
            self.num.mul(&a).add(&rhs.num.mul(&b)),
            self.den.mul(&a),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).mul(&rhs.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&rhs.den.div_exact(&g1));
        let lead = d.leading();
        if lead.is_one() {
            RatFunc { num: n, den: d }
        } else {
            let inv = lead.inverse();
            RatFunc {
                num: n.scale(&inv),
                den: d.scale(&inv),
            }
        }
    }
    fn negated(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_int(n))
    }
    fn from_q(value: &Q) -> Self {
        Self::from_rational(value.clone())
    }
    fn complexity(&self) -> usize {
        let size = |p: &Poly| -> usize {
            p.coeffs()
                .iter()
                .map(|c| c.complexity() + 8)
                .sum::<usize>()
        };
        size(&self.num) + if self.den.is_one() { 0 } else { size(&self.den) }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                Field::$f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                Field::$f(self, rhs)
            }
        }
    };
}

binop!(Add, add, plus);
binop!(Sub, sub, minus);
binop!(Mul, mul, times);
binop!(Div, div, over);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.negated()
    }
}

impl From<Q> for RatFunc {
    fn from(value: Q) -> Self {
        RatFunc::from_rational(value)
    }
}

impl From<i64> for RatFunc {
    fn from(value: i64) -> Self {
        RatFunc::from_int(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn k() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn reduces_common_factors() {
        let a = (k() * k() - RatFunc::from(1)) / (k() - RatFunc::from(1));
        assert_eq!(a, k() + RatFunc::from(1));
        assert!(a.is_polynomial());
    }

    #[test]
    fn render_parse_roundtrip() {
        let samples = [
            k() / (k() + RatFunc::from(2)),
            RatFunc::from(q(-3, 4)),
            (k() * k() - RatFunc::from(q(1, 2))) / (k() * RatFunc::from(3)),
            RatFunc::laurent(q(2, 1), -3),
        ];
        for s in samples {
            let text = s.render("k");
            assert_eq!(RatFunc::parse(&text, "k").unwrap(), s, "{text}");
        }
    }

    #[test]
    fn eval_and_poles() {
        let a = RatFunc::from(1) / k();
        assert_eq!(a.eval(&q(1, 2)), Some(q(2, 1)));
        assert_eq!(a.eval(&q(0, 1)), None);
    }
}
