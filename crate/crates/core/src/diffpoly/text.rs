//! Text form: `coeff * var[n]^p * ...` terms joined by `+`/`-`.
//! The level is written `k`; compound coefficients are parenthesized.

use super::{DiffPoly, Factor, Monomial, Var};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfunc::RatFunc;

pub const LEVEL: &str = "k";

fn render_factor(f: &Factor, p: u32, name: &dyn Fn(&Var) -> String) -> String {
    let mut s = name(&f.var);
    if f.order > 0 {
        s.push_str(&format!("[{}]", f.order));
    }
    if p > 1 {
        s.push_str(&format!("^{p}"));
    }
    s
}

/// Render with the given naming of generators, largest monomials first.
pub fn render_poly(p: &DiffPoly, name: &dyn Fn(&Var) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in p.terms.iter().rev() {
        let (neg, coeff) = if !c.is_compound() && c.render(LEVEL).starts_with('-') {
            (true, c.negated())
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if !coeff.is_one() || m.is_one() {
            let text = coeff.render(LEVEL);
            parts.push(if coeff.is_compound() {
                format!("({text})")
            } else {
                text
            });
        }
        for (f, pw) in m.factors() {
            parts.push(render_factor(f, *pw, name));
        }
        out.push_str(&parts.join(" * "));
    }
    out
}

struct Parser<'a, 'b> {
    s: &'a [u8],
    pos: usize,
    lookup: &'b dyn Fn(&str) -> Option<Var>,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_, '_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err(format!("expected integer at {start}")))
    }

    fn sum(&mut self) -> Result<DiffPoly> {
        let mut acc = DiffPoly::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if !first => return Ok(acc),
                _ if first => false,
                Some(c) => return Err(err(format!("unexpected '{}' at {}", c as char, self.pos))),
                None => unreachable!(),
            };
            let t = self.term()?;
            acc.add_assign(&if neg { t.neg() } else { t });
            first = false;
            if self.peek().is_none() {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut coeff = RatFunc::one();
        let mut factors: Vec<Factor> = Vec::new();
        let mut divide = false;
        loop {
            self.skip_ws();
            match self.atom()? {
                Atom::Coeff(c) => {
                    coeff = if divide {
                        if c.is_zero() {
                            return Err(err("division by zero"));
                        }
                        coeff.over(&c)
                    } else {
                        coeff.times(&c)
                    };
                }
                Atom::Factor(f, p) => {
                    if divide {
                        return Err(err("cannot divide by a generator"));
                    }
                    for _ in 0..p {
                        factors.push(f);
                    }
                }
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    divide = false;
                }
                Some(b'/') => {
                    self.pos += 1;
                    divide = true;
                }
                _ => break,
            }
        }
        match Monomial::from_factors(&factors) {
            Some((neg, m)) => Ok(DiffPoly::term(if neg { coeff.negated() } else { coeff }, m)),
            None => Ok(DiffPoly::zero()),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.number()
        } else {
            Ok(1)
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some(b'(') => {
                let start = self.pos + 1;
                let mut depth = 0;
                while self.pos < self.s.len() {
                    match self.s[self.pos] {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return Err(err("unbalanced parentheses"));
                }
                let inner = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                self.pos += 1;
                let c = RatFunc::parse(inner, LEVEL).map_err(err)?;
                let e = self.exponent()?;
                Ok(Atom::Coeff(c.pow(e as i32)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Atom::Coeff(RatFunc::from_int(n as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if name == LEVEL {
                    let e = self.exponent()?;
                    return Ok(Atom::Coeff(RatFunc::var().pow(e as i32)));
                }
                let var =
                    (self.lookup)(name).ok_or_else(|| err(format!("unknown generator {name}")))?;
                let mut order = 0;
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    order = self.number()?;
                    if self.peek() != Some(b']') {
                        return Err(err("expected ']'"));
                    }
                    self.pos += 1;
                }
                let p = self.exponent()?;
                Ok(Atom::Factor(Factor::new(var, order), p))
            }
            _ => Err(err(format!("unexpected input at {}", self.pos))),
        }
    }
}

enum Atom {
    Coeff(RatFunc),
    Factor(Factor, u32),
}

/// Parse text produced by [`render_poly`] (or written by hand).
pub fn parse_poly(text: &str, lookup: &dyn Fn(&str) -> Option<Var>) -> Result<DiffPoly> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        lookup,
    };
    if p.peek().is_none() {
        return Err(err("empty polynomial"));
    }
    let v = p.sum()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::VarTable;
    use crate::weight::HalfInt;

    #[test]
    fn roundtrip_examples() {
        let mut t = VarTable::new();
        t.push("u", HalfInt::ONE, false);
        t.push("phi", HalfInt::HALF, true);
        t.push("psi", HalfInt::HALF, true);
        for s in [
            "u^2 + (2*k) * u[1]",
            "-3/2 * u[2]^2 * u - (k + 1)/k",
            "phi * psi[1] - 1/k * u",
            "0",
        ] {
            let p = t.parse(s).unwrap();
            let r = t.render(&p);
            assert_eq!(t.parse(&r).unwrap(), p, "{s} -> {r}");
        }
        assert!(t.parse("v * u").is_err());
    }
}
