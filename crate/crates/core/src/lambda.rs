//! λ-polynomials, the master formula and the PVA axiom checkers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffpoly::{binom, DiffPoly, Side, VarTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfunc::RatFunc;

/// `Σ λ^n p_n` with differential polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, DiffPoly>,
}

/// Direction of the arrow substitution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Arrow {
    /// `λ → λ + ∂`, with `∂` acting on the target.
    Right,
    /// `λ → -λ - ∂`, with `∂` acting on the whole coefficient.
    Left,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(p: DiffPoly) -> Self {
        Self::monomial(0, p)
    }

    pub fn monomial(n: u32, p: DiffPoly) -> Self {
        let mut out = LambdaPoly::zero();
        out.add_at(n, &p);
        out
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(n, p)| (*n, p))
    }

    pub fn coeff(&self, n: u32) -> DiffPoly {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_at(&mut self, n: u32, p: &DiffPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_default();
        e.add_assign(p);
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn add_assign(&mut self, rhs: &LambdaPoly) {
        for (n, p) in &rhs.coeffs {
            self.add_at(*n, p);
        }
    }

    pub fn add(&self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn sub(&self, rhs: &LambdaPoly) -> LambdaPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LambdaPoly {
        self.scale(&RatFunc::from_int(-1))
    }

    pub fn scale(&self, s: &RatFunc) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (n, p) in &self.coeffs {
            out.add_at(*n, &p.scale(s));
        }
        out
    }

    /// `a · self` with `a` multiplied from the left.
    pub fn mul_left(&self, a: &DiffPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (n, p) in &self.coeffs {
            out.add_at(*n, &a.mul(p));
        }
        out
    }

    /// `self · λ^m`.
    pub fn shift_power(&self, m: u32) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(n, p)| (n + m, p.clone())).collect(),
        }
    }

    /// `(λ + ∂)` applied to the whole expression.
    pub fn lambda_plus_d(&self) -> LambdaPoly {
        let mut out = self.shift_power(1);
        for (n, p) in &self.coeffs {
            out.add_at(*n, &p.d());
        }
        out
    }

    /// `(-λ - ∂)` applied to the whole expression.
    pub fn minus_lambda_minus_d(&self) -> LambdaPoly {
        self.lambda_plus_d().neg()
    }

    pub fn lambda_plus_d_pow(&self, n: u32) -> LambdaPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.lambda_plus_d();
        }
        p
    }

    pub fn minus_lambda_minus_d_pow(&self, n: u32) -> LambdaPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.minus_lambda_minus_d();
        }
        p
    }

    /// `Σ_n p_n (λ+∂)^n target` (right arrow), or `Σ_n (-λ-∂)^n (p_n target)`
    /// (left arrow).
    pub fn subst(&self, arrow: Arrow, target: &DiffPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        match arrow {
            Arrow::Right => {
                let mut derivs = vec![target.clone()];
                for (n, p) in &self.coeffs {
                    while derivs.len() <= *n as usize {
                        let next = derivs.last().unwrap().d();
                        derivs.push(next);
                    }
                    for s in 0..=*n {
                        let t = p.mul(&derivs[s as usize]).scale(&binom(*n, s));
                        out.add_at(n - s, &t);
                    }
                }
            }
            Arrow::Left => {
                for (n, p) in &self.coeffs {
                    let base = LambdaPoly::constant(p.mul(target));
                    out.add_assign(&base.minus_lambda_minus_d_pow(*n));
                }
            }
        }
        out
    }

    /// Value at `λ = 0`.
    pub fn at_zero(&self) -> DiffPoly {
        self.coeff(0)
    }

    /// Substitute `λ = c` for a constant `c`.
    pub fn eval(&self, c: &RatFunc) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (n, p) in &self.coeffs {
            out.add_assign(&p.scale(&c.pow(*n as i32)));
        }
        out
    }

    pub fn render(&self, vars: &VarTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(n, p)| {
                let body = vars.render(p);
                match n {
                    0 => body,
                    _ => {
                        let lam = if *n == 1 {
                            "lambda".to_string()
                        } else {
                            format!("lambda^{n}")
                        };
                        if p.len() == 1 {
                            format!("{body} * {lam}")
                        } else {
                            format!("({body}) * {lam}")
                        }
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Polynomial in two formal symbols `λ, μ`.
pub type TwoLambda = BTreeMap<(u32, u32), DiffPoly>;

fn add2(map: &mut TwoLambda, key: (u32, u32), p: &DiffPoly) {
    if p.is_zero() {
        return;
    }
    let e = map.entry(key).or_default();
    e.add_assign(p);
    if e.is_zero() {
        map.remove(&key);
    }
}

/// Generators plus the brackets `{u_i λ u_j}` among them.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BracketTable {
    vars: VarTable,
    entries: BTreeMap<(u32, u32), LambdaPoly>,
}

/// First failing instance of an axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub generators: Vec<String>,
    pub difference: String,
}

impl BracketTable {
    pub fn new(vars: VarTable) -> Self {
        BracketTable {
            vars,
            entries: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Set `{u_i λ u_j}`.
    pub fn set(&mut self, i: u32, j: u32, value: LambdaPoly) {
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    /// `{u_i λ u_j}`.
    pub fn get(&self, i: u32, j: u32) -> LambdaPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &LambdaPoly)> {
        self.entries.iter()
    }

    fn check_vars(&self, p: &DiffPoly) -> Result<()> {
        for v in p.vars() {
            if self.vars.get(v.id) != Some(v) {
                return Err(Error::UnknownGenerator(format!("u{}", v.id)));
            }
        }
        Ok(())
    }

    /// The master formula for `{f λ g}`.
    pub fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly> {
        self.check_vars(f)?;
        self.check_vars(g)?;
        Ok(self.bracket_unchecked(f, g))
    }

    fn bracket_unchecked(&self, f: &DiffPoly, g: &DiffPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        let (fe, fo) = f.parity_parts();
        let (ge, go) = g.parity_parts();
        for (fp, fodd) in [(&fe, false), (&fo, true)] {
            if fp.is_zero() {
                continue;
            }
            // (-λ-∂)^m ∂f/∂u_i^(m) for every factor of f
            let left: Vec<_> = fp
                .factor_set()
                .into_iter()
                .map(|x| {
                    let df = fp.partial(&x, Side::Left);
                    (x, LambdaPoly::constant(df).minus_lambda_minus_d_pow(x.order))
                })
                .collect();
            for (gp, godd) in [(&ge, false), (&go, true)] {
                if gp.is_zero() {
                    continue;
                }
                for y in gp.factor_set() {
                    let dg = gp.partial(&y, Side::Right);
                    let mut acc = LambdaPoly::zero();
                    for (x, a) in &left {
                        let h = self.get(x.var.id, y.var.id);
                        if h.is_zero() {
                            continue;
                        }
                        let mut b = LambdaPoly::zero();
                        for (pow, coeff) in a.coeffs() {
                            b.add_assign(&h.subst(Arrow::Right, coeff).shift_power(pow));
                        }
                        if fodd as u8 * godd as u8 + x.var.odd as u8 * y.var.odd as u8 == 1 {
                            b = b.neg();
                        }
                        acc.add_assign(&b);
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    out.add_assign(&acc.lambda_plus_d_pow(y.order).mul_left(&dg));
                }
            }
        }
        out
    }

    /// `{f λ g}|_{λ=0}`.
    pub fn bracket_at_zero(&self, f: &DiffPoly, g: &DiffPoly) -> Result<DiffPoly> {
        Ok(self.bracket(f, g)?.at_zero())
    }

    /// `{f λ {g μ h}}` as a polynomial in `(λ, μ)`.
    fn nested_left(&self, f: &DiffPoly, g: &DiffPoly, h: &DiffPoly, swap: bool) -> TwoLambda {
        let mut out = TwoLambda::new();
        for (b, c) in self.bracket_unchecked(g, h).coeffs() {
            for (a, p) in self.bracket_unchecked(f, c).coeffs() {
                let key = if swap { (b, a) } else { (a, b) };
                add2(&mut out, key, p);
            }
        }
        out
    }

    /// `{{f λ g}_{λ+μ} h}`.
    fn nested_right(&self, f: &DiffPoly, g: &DiffPoly, h: &DiffPoly) -> TwoLambda {
        let mut out = TwoLambda::new();
        for (a, e) in self.bracket_unchecked(f, g).coeffs() {
            for (c, p) in self.bracket_unchecked(e, h).coeffs() {
                for r in 0..=c {
                    add2(&mut out, (a + r, c - r), &p.scale(&binom(c, r)));
                }
            }
        }
        out
    }

    /// Jacobi defect `{f λ{g μ h}} - ± {g μ{f λ h}} - {{f λ g}_{λ+μ} h}`.
    pub fn jacobi_defect(&self, f: &DiffPoly, g: &DiffPoly, h: &DiffPoly) -> TwoLambda {
        let sign = matches!((f.parity(), g.parity()), (Some(true), Some(true)));
        let mut out = self.nested_left(f, g, h, false);
        let second = self.nested_left(g, f, h, true);
        for (k, p) in second {
            add2(&mut out, k, &if sign { p } else { p.neg() });
        }
        for (k, p) in self.nested_right(f, g, h) {
            add2(&mut out, k, &p.neg());
        }
        out
    }

    /// Skew-symmetry defect `{g λ f} + ± _←{f_{-λ-∂} g}`.
    pub fn skew_defect(&self, f: &DiffPoly, g: &DiffPoly) -> LambdaPoly {
        let sign = matches!((f.parity(), g.parity()), (Some(true), Some(true)));
        let fg = self.bracket_unchecked(f, g);
        let mut rhs = LambdaPoly::zero();
        for (n, p) in fg.coeffs() {
            rhs.add_assign(&LambdaPoly::constant(p.clone()).minus_lambda_minus_d_pow(n));
        }
        let rhs = if sign { rhs } else { rhs.neg() };
        self.bracket_unchecked(g, f).sub(&rhs)
    }

    /// Skew-symmetry on all generator pairs.
    pub fn check_skew(&self) -> std::result::Result<(), Counterexample> {
        let vars = self.vars.vars();
        for a in &vars {
            for b in &vars {
                let d = self.skew_defect(&DiffPoly::var(*a), &DiffPoly::var(*b));
                if !d.is_zero() {
                    return Err(Counterexample {
                        generators: vec![self.vars.name(a).into(), self.vars.name(b).into()],
                        difference: d.render(&self.vars),
                    });
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on all generator triples.
    pub fn check_jacobi(&self) -> std::result::Result<(), Counterexample> {
        let vars = self.vars.vars();
        for a in &vars {
            for b in &vars {
                for c in &vars {
                    let d = self.jacobi_defect(
                        &DiffPoly::var(*a),
                        &DiffPoly::var(*b),
                        &DiffPoly::var(*c),
                    );
                    if let Some(((x, y), p)) = d.iter().next() {
                        return Err(Counterexample {
                            generators: vec![
                                self.vars.name(a).into(),
                                self.vars.name(b).into(),
                                self.vars.name(c).into(),
                            ],
                            difference: format!(
                                "lambda^{x} mu^{y}: {}",
                                self.vars.render(p)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializable form with generator names and rendered coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((i, j), p)| {
                let terms: Vec<serde_json::Value> = p
                    .coeffs()
                    .map(|(n, c)| serde_json::json!([n, self.vars.render(c)]))
                    .collect();
                serde_json::json!({
                    "i": self.vars.name(&self.vars.get(*i).unwrap()),
                    "j": self.vars.name(&self.vars.get(*j).unwrap()),
                    "terms": terms,
                })
            })
            .collect();
        let gens: Vec<serde_json::Value> = self
            .vars
            .entries()
            .iter()
            .map(|(n, v)| {
                serde_json::json!({"name": n, "weight": v.weight.to_string(), "odd": v.odd})
            })
            .collect();
        serde_json::json!({"generators": gens, "brackets": entries})
    }

    /// Inverse of [`BracketTable::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let mut vars = VarTable::new();
        for g in value["generators"].as_array().ok_or_else(|| bad("generators"))? {
            let name = g["name"].as_str().ok_or_else(|| bad("generator name"))?;
            let weight = g["weight"]
                .as_str()
                .ok_or_else(|| bad("weight"))?
                .parse()
                .map_err(|e: String| bad(&e))?;
            vars.push(name, weight, g["odd"].as_bool().unwrap_or(false));
        }
        let mut table = BracketTable::new(vars);
        for e in value["brackets"].as_array().ok_or_else(|| bad("brackets"))? {
            let lookup = |key: &str| -> Result<u32> {
                let name = e[key].as_str().ok_or_else(|| bad(key))?;
                table
                    .vars
                    .by_name(name)
                    .map(|v| v.id)
                    .ok_or_else(|| Error::UnknownGenerator(name.into()))
            };
            let (i, j) = (lookup("i")?, lookup("j")?);
            let mut p = LambdaPoly::zero();
            for t in e["terms"].as_array().ok_or_else(|| bad("terms"))? {
                let n = t[0].as_u64().ok_or_else(|| bad("power"))? as u32;
                let text = t[1].as_str().ok_or_else(|| bad("coefficient"))?;
                p.add_at(n, &table.vars.parse(text)?);
            }
            table.set(i, j, p);
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{Factor, Var};
    use crate::weight::HalfInt;

    fn gl1() -> (BracketTable, Var) {
        let mut vars = VarTable::new();
        let u = vars.push("u", HalfInt::ONE, false);
        let mut t = BracketTable::new(vars);
        t.set(0, 0, LambdaPoly::monomial(1, DiffPoly::constant(RatFunc::var())));
        (t, u)
    }

    #[test]
    fn arrow_examples() {
        let mut vars = VarTable::new();
        let u = vars.push("u", HalfInt::ONE, false);
        let v = vars.push("v", HalfInt::ONE, false);
        let target = DiffPoly::var(u);
        let p = LambdaPoly::monomial(1, DiffPoly::one());
        assert_eq!(p.subst(Arrow::Right, &target).eval(&RatFunc::zero()), DiffPoly::factor(Factor::new(u, 1)));
        let p2 = LambdaPoly::monomial(2, DiffPoly::var(v));
        let r = p2.subst(Arrow::Right, &target).at_zero();
        assert_eq!(r, DiffPoly::var(v).mul(&DiffPoly::factor(Factor::new(u, 2))));
        let c = LambdaPoly::constant(DiffPoly::var(v));
        assert_eq!(c.subst(Arrow::Right, &target), LambdaPoly::constant(DiffPoly::var(v).mul(&target)));
    }

    #[test]
    fn sesquilinearity_on_gl1() {
        let (t, u) = gl1();
        let x = DiffPoly::var(u).pow(2);
        let y = DiffPoly::var(u).mul(&DiffPoly::factor(Factor::new(u, 2)));
        let base = t.bracket(&x, &y).unwrap();
        assert_eq!(t.bracket(&x.d(), &y).unwrap(), base.shift_power(1).neg());
        assert_eq!(t.bracket(&x, &y.d()).unwrap(), base.lambda_plus_d());
    }

    #[test]
    fn skew_counterexample() {
        let mut vars = VarTable::new();
        vars.push("u", HalfInt::ONE, false);
        let mut t = BracketTable::new(vars);
        t.set(0, 0, LambdaPoly::constant(DiffPoly::one()));
        let err = t.check_skew().unwrap_err();
        assert_eq!(err.generators, vec!["u", "u"]);
        let (g, _) = gl1();
        assert!(g.check_skew().is_ok());
        assert!(g.check_jacobi().is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let (t, _) = gl1();
        let back = BracketTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
