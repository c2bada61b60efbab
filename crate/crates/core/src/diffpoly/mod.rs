//! Differential polynomial superalgebras with coefficients in `Q(k)`.
//!
//! A monomial is a product of factors `u^(n)`; factors are kept sorted by
//! variable `(weight, id)` and then by descending derivative order. Odd
//! factors anticommute, and the sign of a product is fixed by counting
//! transpositions of odd factors into this order.

mod enumerate;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{binomial, Field, Q};
use crate::linalg::Matrix;
use crate::ratfunc::RatFunc;
use crate::weight::HalfInt;

pub use enumerate::{monomials_of_content, monomials_of_weight, Content};
pub use text::{parse_poly, render_poly};

/// A generator `u_i` of the differential algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Var {
    pub id: u32,
    pub weight: HalfInt,
    pub odd: bool,
}

impl Var {
    pub fn even(id: u32, weight: HalfInt) -> Self {
        Var {
            id,
            weight,
            odd: false,
        }
    }

    pub fn odd(id: u32, weight: HalfInt) -> Self {
        Var {
            id,
            weight,
            odd: true,
        }
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight, self.id, self.odd).cmp(&(other.weight, other.id, other.odd))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The derivative variable `u^(order)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Factor {
    pub var: Var,
    pub order: u32,
}

impl Factor {
    pub fn new(var: Var, order: u32) -> Self {
        Factor { var, order }
    }

    pub fn weight(&self) -> HalfInt {
        self.var.weight + HalfInt::from_int(self.order as i64)
    }

    pub fn odd(&self) -> bool {
        self.var.odd
    }

    pub fn derived(&self) -> Factor {
        Factor::new(self.var, self.order + 1)
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var
            .cmp(&other.var)
            .then_with(|| other.order.cmp(&self.order))
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normally ordered product of factors with multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Factor, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn factor(f: Factor) -> Self {
        Monomial(vec![(f, 1)])
    }

    pub fn factors(&self) -> &[(Factor, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> HalfInt {
        self.0
            .iter()
            .fold(HalfInt::ZERO, |acc, (f, p)| acc + f.weight().times(*p as i64))
    }

    /// Polynomial degree (number of factors with multiplicity).
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, p)| p).sum()
    }

    /// Total number of derivatives.
    pub fn order(&self) -> u32 {
        self.0.iter().map(|(f, p)| f.order * p).sum()
    }

    pub fn odd(&self) -> bool {
        self.odd_count() % 2 == 1
    }

    fn odd_count(&self) -> usize {
        self.0.iter().filter(|(f, _)| f.odd()).count()
    }

    pub fn power_of(&self, f: &Factor) -> u32 {
        self.0
            .binary_search_by(|(g, _)| g.cmp(f))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Multiset of underlying variables.
    pub fn content(&self) -> Content {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (f, p) in &self.0 {
            *map.entry(f.var).or_default() += p;
        }
        map.into_iter().collect()
    }

    /// Build from an arbitrary sequence of factors, returning the Koszul
    /// sign (true = negative) or `None` if an odd factor repeats.
    pub fn from_factors(list: &[Factor]) -> Option<(bool, Monomial)> {
        let mut items: Vec<Factor> = list.to_vec();
        let mut neg = false;
        // insertion sort, counting odd transpositions
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && items[j - 1] > items[j] {
                if items[j - 1].odd() && items[j].odd() {
                    neg = !neg;
                }
                items.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut out: Vec<(Factor, u32)> = Vec::new();
        for f in items {
            match out.last_mut() {
                Some((g, p)) if *g == f => {
                    if f.odd() {
                        return None;
                    }
                    *p += 1;
                }
                _ => out.push((f, 1)),
            }
        }
        Some((neg, Monomial(out)))
    }

    /// Product `self * rhs` with sign, `None` if it vanishes.
    pub fn mul(&self, rhs: &Monomial) -> Option<(bool, Monomial)> {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut odd_left = self.odd_count();
        let mut neg = false;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    if a[i].0.odd() {
                        odd_left -= 1;
                    }
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    if b[j].0.odd() && odd_left % 2 == 1 {
                        neg = !neg;
                    }
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].0.odd() {
                        return None;
                    }
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((neg, Monomial(out)))
    }

    /// Remove one copy of the factor at index `i`.
    fn without(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        if v[i].1 == 1 {
            v.remove(i);
        } else {
            v[i].1 -= 1;
        }
        Monomial(v)
    }

    fn split(&self, i: usize) -> (Monomial, Monomial) {
        (Monomial(self.0[..i].to_vec()), Monomial(self.0[i + 1..].to_vec()))
    }
}

/// Which side a super-derivation acts from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Sparse differential polynomial with `Q(k)` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, RatFunc>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn rational(c: Q) -> Self {
        Self::constant(RatFunc::from_rational(c))
    }

    pub fn term(c: RatFunc, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::factor(Factor::new(v, 0))
    }

    pub fn factor(f: Factor) -> Self {
        Self::term(RatFunc::one(), Monomial::factor(f))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, RatFunc)>) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, rhs: &DiffPoly, s: &RatFunc) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.times(s));
        }
    }

    pub fn add(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn sub(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &RatFunc::from_int(-1));
        out
    }

    pub fn neg(&self) -> DiffPoly {
        self.scale(&RatFunc::from_int(-1))
    }

    pub fn scale(&self, s: &RatFunc) -> DiffPoly {
        if s.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.times(s)))
                .collect(),
        }
    }

    pub fn scale_q(&self, s: &Q) -> DiffPoly {
        self.scale(&RatFunc::from_rational(s.clone()))
    }

    pub fn mul(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca.times(cb);
                    out.add_term(m, if neg { c.negated() } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Map coefficients, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> DiffPoly {
        DiffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Specialize the level to a rational value; `None` at a pole.
    pub fn at_level(&self, k: &Q) -> Option<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), RatFunc::from_rational(c.eval(k)?));
        }
        Some(out)
    }

    /// Parity of the polynomial if it is parity-homogeneous (zero is even).
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(Monomial::odd);
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    /// Split into (even part, odd part).
    pub fn parity_parts(&self) -> (DiffPoly, DiffPoly) {
        let mut even = DiffPoly::zero();
        let mut odd = DiffPoly::zero();
        for (m, c) in &self.terms {
            if m.odd() {
                odd.terms.insert(m.clone(), c.clone());
            } else {
                even.terms.insert(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// Weight if homogeneous (zero has no weight).
    pub fn weight(&self) -> Option<HalfInt> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn weight_components(&self) -> BTreeMap<HalfInt, DiffPoly> {
        let mut out: BTreeMap<HalfInt, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// All variables occurring.
    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(f, _)| f.var))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All factors `u^(n)` occurring.
    pub fn factor_set(&self) -> Vec<Factor> {
        let mut out: Vec<Factor> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(f, _)| *f))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Apply the super-derivation of the given parity sending each factor
    /// `u^(n)` to `image(u^(n))`.
    pub fn apply_derivation(
        &self,
        odd: bool,
        image: &mut dyn FnMut(&Factor) -> DiffPoly,
    ) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut cache: BTreeMap<Factor, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut odd_before = 0usize;
            for (i, (f, p)) in m.0.iter().enumerate() {
                let img = cache.entry(*f).or_insert_with(|| image(f)).clone();
                if !img.is_zero() {
                    let (prefix, suffix) = m.split(i);
                    let mut rest = suffix;
                    if *p > 1 {
                        let (_, r) = Monomial(vec![(*f, p - 1)])
                            .mul(&rest)
                            .expect("even factor power");
                        rest = r;
                    }
                    let mut coeff = c.times(&RatFunc::from_int(*p as i64));
                    if odd && odd_before % 2 == 1 {
                        coeff = coeff.negated();
                    }
                    let t = DiffPoly::term(coeff, prefix)
                        .mul(&img)
                        .mul(&DiffPoly::term(RatFunc::one(), rest));
                    out.add_assign(&t);
                }
                if f.odd() {
                    odd_before += 1;
                }
            }
        }
        out
    }

    /// The total derivative `∂`.
    pub fn d(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (i, (f, p)) in m.0.iter().enumerate() {
                let rest = m.without(i);
                let (neg, mono) = if f.odd() {
                    // move the derived factor back into place
                    let (prefix, suffix) = m.split(i);
                    let mut list: Vec<Factor> = Vec::new();
                    for (g, q) in prefix.0.iter().chain(std::iter::once(&(f.derived(), 1))) {
                        list.extend(std::iter::repeat(*g).take(*q as usize));
                    }
                    for (g, q) in &suffix.0 {
                        list.extend(std::iter::repeat(*g).take(*q as usize));
                    }
                    match Monomial::from_factors(&list) {
                        Some(x) => x,
                        None => continue,
                    }
                } else {
                    match rest.mul(&Monomial::factor(f.derived())) {
                        Some(x) => x,
                        None => continue,
                    }
                };
                let coeff = c.times(&RatFunc::from_int(*p as i64));
                out.add_term(mono, if neg { coeff.negated() } else { coeff });
            }
        }
        out
    }

    /// `∂^n`.
    pub fn d_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.d();
        }
        p
    }

    /// Partial derivative by `u^(n)` acting from the given side.
    pub fn partial(&self, f: &Factor, side: Side) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let Ok(i) = m.0.binary_search_by(|(g, _)| g.cmp(f)) else {
                continue;
            };
            let p = m.0[i].1;
            let mut neg = false;
            if f.odd() {
                let range = match side {
                    Side::Left => &m.0[..i],
                    Side::Right => &m.0[i + 1..],
                };
                neg = range.iter().filter(|(g, _)| g.odd()).count() % 2 == 1;
            }
            let coeff = c.times(&RatFunc::from_int(p as i64));
            out.add_term(m.without(i), if neg { coeff.negated() } else { coeff });
        }
        out
    }

    /// Variational derivative `Σ_n (-∂)^n ∂f/∂u^(n)`.
    pub fn variational(&self, v: &Var, side: Side) -> DiffPoly {
        let max = self
            .factor_set()
            .iter()
            .filter(|f| f.var == *v)
            .map(|f| f.order)
            .max();
        let Some(max) = max else {
            return DiffPoly::zero();
        };
        let mut out = DiffPoly::zero();
        for n in 0..=max {
            let p = self.partial(&Factor::new(*v, n), side);
            if p.is_zero() {
                continue;
            }
            let mut t = p.d_n(n);
            if n % 2 == 1 {
                t = t.neg();
            }
            out.add_assign(&t);
        }
        out
    }

    /// Decide whether `self = ∂g`; on success return `g` (without constant).
    pub fn is_total_derivative(&self) -> Option<DiffPoly> {
        if !self.constant_term().is_zero() {
            return None;
        }
        for v in self.vars() {
            if !self.variational(&v, Side::Left).is_zero() {
                return None;
            }
        }
        self.antiderivative()
    }

    /// Solve `∂g = self` by linear algebra in each (content, order) block.
    pub fn antiderivative(&self) -> Option<DiffPoly> {
        let mut blocks: BTreeMap<(Content, u32), DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            blocks
                .entry((m.content(), m.order()))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        let mut witness = DiffPoly::zero();
        for ((content, order), block) in blocks {
            if order == 0 {
                return None;
            }
            let sources = monomials_of_content(&content, order - 1);
            let images: Vec<DiffPoly> = sources
                .iter()
                .map(|m| DiffPoly::term(RatFunc::one(), m.clone()).d())
                .collect();
            let mut rows: Vec<Monomial> = images
                .iter()
                .flat_map(|p| p.terms.keys().cloned())
                .chain(block.terms.keys().cloned())
                .collect();
            rows.sort();
            rows.dedup();
            let mut a = Matrix::<RatFunc>::zeros(rows.len(), sources.len());
            for (j, img) in images.iter().enumerate() {
                for (m, c) in &img.terms {
                    let r = rows.binary_search(m).unwrap();
                    a.set(r, j, c.clone());
                }
            }
            let b: Vec<RatFunc> = rows.iter().map(|m| block.coeff(m)).collect();
            let x = a.solve(&b)?;
            for (m, c) in sources.into_iter().zip(x) {
                witness.add_term(m, c);
            }
        }
        Some(witness)
    }

    /// Substitute variables one-for-one (parities must match).
    pub fn rename_vars(&self, f: &dyn Fn(&Var) -> Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut list = Vec::new();
            for (g, p) in &m.0 {
                let v = f(&g.var);
                assert_eq!(v.odd, g.var.odd, "renaming must preserve parity");
                list.extend(std::iter::repeat(Factor::new(v, g.order)).take(*p as usize));
            }
            if let Some((neg, mono)) = Monomial::from_factors(&list) {
                out.add_term(mono, if neg { c.negated() } else { c.clone() });
            }
        }
        out
    }

    /// Highest derivative order of any factor.
    pub fn max_order(&self) -> u32 {
        self.factor_set().iter().map(|f| f.order).max().unwrap_or(0)
    }

    /// Leading (largest) monomial.
    pub fn leading(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.iter().next_back()
    }

    /// Divide by the leading coefficient.
    pub fn normalized(&self) -> DiffPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.inverse();
                self.scale(&inv)
            }
            None => DiffPoly::zero(),
        }
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self, &|v: &Var| format!("u{}", v.id)))
    }
}

/// `Σ binomial(n, r) a^(r) b^(n-r)`-style helper used by λ-shifts.
pub fn binom(n: u32, r: u32) -> RatFunc {
    RatFunc::from_rational(binomial(n, r))
}

/// Names, weights and parities of a set of generators.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VarTable {
    entries: Vec<(String, Var)>,
}

impl VarTable {
    pub fn new() -> Self {
        VarTable::default()
    }

    /// Register a generator; ids are assigned consecutively.
    pub fn push(&mut self, name: impl Into<String>, weight: HalfInt, odd: bool) -> Var {
        let v = Var {
            id: self.entries.len() as u32,
            weight,
            odd,
        };
        self.entries.push((name.into(), v));
        v
    }

    pub fn vars(&self) -> Vec<Var> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<Var> {
        self.entries.get(id as usize).map(|(_, v)| *v)
    }

    pub fn name(&self, v: &Var) -> &str {
        &self.entries[v.id as usize].0
    }

    pub fn by_name(&self, name: &str) -> Option<Var> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(String, Var)] {
        &self.entries
    }

    pub fn render(&self, p: &DiffPoly) -> String {
        render_poly(p, &|v: &Var| self.name(v).to_string())
    }

    pub fn parse(&self, text: &str) -> crate::Result<DiffPoly> {
        parse_poly(text, &|name: &str| self.by_name(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Var {
        Var::even(0, HalfInt::ONE)
    }

    fn uf(n: u32) -> DiffPoly {
        DiffPoly::factor(Factor::new(u(), n))
    }

    fn phi() -> Var {
        Var::odd(1, HalfInt::HALF)
    }

    fn psi() -> Var {
        Var::odd(2, HalfInt::HALF)
    }

    #[test]
    fn odd_square_vanishes() {
        let p = DiffPoly::var(phi());
        assert!(p.mul(&p).is_zero());
    }

    #[test]
    fn supercommutativity_of_odd_generators() {
        let a = DiffPoly::var(phi());
        let b = DiffPoly::var(psi());
        assert_eq!(a.mul(&b), b.mul(&a).neg());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(uf(0).mul(&uf(0)).d(), uf(0).mul(&uf(1)).scale(&2.into()));
        assert!(DiffPoly::one().d().is_zero());
        let lhs = uf(0).mul(&uf(2)).d();
        assert_eq!(lhs, uf(1).mul(&uf(2)).add(&uf(0).mul(&uf(3))));
    }

    #[test]
    fn left_and_right_partials() {
        let p = DiffPoly::var(phi()).mul(&DiffPoly::var(psi()));
        let f = Factor::new(psi(), 0);
        let l = p.partial(&f, Side::Left);
        let r = p.partial(&f, Side::Right);
        assert_eq!(l, r.neg());
        assert_eq!(r, DiffPoly::var(phi()));
        assert_eq!(uf(0).pow(3).partial(&Factor::new(u(), 0), Side::Left), uf(0).pow(2).scale(&3.into()));
    }

    #[test]
    fn variational_examples() {
        assert_eq!(uf(0).pow(2).variational(&u(), Side::Left), uf(0).scale(&2.into()));
        assert_eq!(uf(0).mul(&uf(2)).variational(&u(), Side::Left), uf(2).scale(&2.into()));
        assert!(uf(0).pow(3).mul(&uf(1)).d().variational(&u(), Side::Left).is_zero());
    }

    #[test]
    fn total_derivative_witness() {
        let w = uf(0).mul(&uf(1)).is_total_derivative().unwrap();
        assert_eq!(w, uf(0).pow(2).scale_q(&crate::field::q(1, 2)));
        assert!(uf(0).pow(2).is_total_derivative().is_none());
        let w = uf(1).mul(&uf(2)).is_total_derivative().unwrap();
        assert_eq!(w, uf(1).pow(2).scale_q(&crate::field::q(1, 2)));
    }

    #[test]
    fn odd_derivative_sign() {
        // ∂(φ ψ) = φ' ψ + φ ψ'
        let p = DiffPoly::var(phi()).mul(&DiffPoly::var(psi()));
        let phi1 = DiffPoly::factor(Factor::new(phi(), 1));
        let psi1 = DiffPoly::factor(Factor::new(psi(), 1));
        let expect = phi1
            .mul(&DiffPoly::var(psi()))
            .add(&DiffPoly::var(phi()).mul(&psi1));
        assert_eq!(p.d(), expect);
        let via = p.apply_derivation(false, &mut |f| DiffPoly::factor(f.derived()));
        assert_eq!(via, expect);
    }
}
