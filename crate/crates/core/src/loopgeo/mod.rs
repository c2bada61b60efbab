//! Truncated loop-algebra and loop-group computations.
//!
//! Coordinates `z_b` on the positive part of the loop algebra are generators
//! of a polynomial ring whose weight is the extended degree of `e_b`; every
//! operator used here is homogeneous for this weight, so dropping terms of
//! weight above `N` is exact for all outputs of weight at most `N`.

mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::diffpoly::{render_poly, DiffPoly, Factor, Monomial, Var};
use crate::error::{Error, Result};
use crate::field::{bernoulli, Field as _, Q};
use crate::liealg::{AdxGrading, LieAlgebra, SimpleLieAlgebra, Sl2Triple};
use crate::linalg::Matrix;
use crate::ratfunc::RatFunc;
use crate::weight::HalfInt;

pub use verify::{verify_lemma_3_1, verify_lemma_3_1_all, verify_lemma_4_2, verify_main2, IdentityReport, Main2Report};

/// Basis element `e_a t^n` of the loop algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LoopIdx {
    pub base: usize,
    pub power: i64,
}

/// Polynomial in the coordinates with `Q(k)` coefficients.
pub type Coord = DiffPoly;

/// Loop-algebra element with coordinate-ring coefficients.
pub type LoopElem = BTreeMap<LoopIdx, Coord>;

/// A vector field `Σ W_b ∂/∂z_b`, by coordinate index.
pub type VecField = BTreeMap<usize, Coord>;

pub struct LoopSetup {
    pub lie: LieAlgebra,
    pub depth: i64,
    pub n: i64,
    pub level: RatFunc,
    degree_of: Vec<i64>,
    /// Positive basis up to degree `N`, sorted by degree.
    pub basis: Vec<LoopIdx>,
    index: HashMap<LoopIdx, usize>,
    z: Vec<Var>,
    /// `s = f + y t^{-1}`.
    pub s: LoopElem,
    /// `Z = Σ z_b e_b`, the logarithm of `K`.
    zlog: LoopElem,
    g0: Vec<usize>,
    left_cache: std::sync::RwLock<HashMap<usize, VecField>>,
    s_right: std::sync::OnceLock<VecField>,
}

impl fmt::Debug for LoopSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoopSetup")
            .field("depth", &self.depth)
            .field("n", &self.n)
            .field("coordinates", &self.basis.len())
            .finish()
    }
}

fn constant(c: &Q) -> Coord {
    DiffPoly::rational(c.clone())
}

impl LoopSetup {
    pub fn new(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading, y: &[Q], n: usize, level: RatFunc) -> Result<Self> {
        if !grading.integral {
            return Err(Error::ConditionF("(F1) fails: the grading is not integral".into()));
        }
        if n == 0 {
            return Err(Error::Invalid("truncation order must be at least 1".into()));
        }
        let lie = alg.lie().clone();
        let degree_of: Vec<i64> = grading.degree_of.iter().map(|j| j.to_int().unwrap()).collect();
        let depth = grading.depth.to_int().unwrap();
        let n = n as i64;
        let mut basis = Vec::new();
        for power in 0..=n {
            for (a, &j) in degree_of.iter().enumerate() {
                let deg = j + (depth + 1) * power;
                if (1..=n).contains(&deg) {
                    basis.push(LoopIdx { base: a, power });
                }
            }
        }
        let deg = |i: &LoopIdx| degree_of[i.base] + (depth + 1) * i.power;
        basis.sort_by_key(|i| (deg(i), i.power, i.base));
        let index: HashMap<LoopIdx, usize> = basis.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let z: Vec<Var> = basis
            .iter()
            .enumerate()
            .map(|(k, i)| Var::even(k as u32, HalfInt::from_int(deg(i))))
            .collect();
        let mut s = LoopElem::new();
        for (a, c) in triple.f.iter().enumerate() {
            if !c.is_zero() {
                s.insert(LoopIdx { base: a, power: 0 }, constant(c));
            }
        }
        for (a, c) in y.iter().enumerate() {
            if !c.is_zero() {
                s.insert(LoopIdx { base: a, power: -1 }, constant(c));
            }
        }
        let zlog: LoopElem = basis
            .iter()
            .zip(&z)
            .map(|(i, v)| (*i, DiffPoly::var(*v)))
            .collect();
        let g0 = grading.piece(HalfInt::ZERO).to_vec();
        Ok(LoopSetup {
            lie,
            depth,
            n,
            level,
            degree_of,
            basis,
            index,
            z,
            s,
            zlog,
            g0,
            left_cache: Default::default(),
            s_right: Default::default(),
        })
    }

    pub fn degree(&self, i: &LoopIdx) -> i64 {
        self.degree_of[i.base] + (self.depth + 1) * i.power
    }

    pub fn coordinate(&self, k: usize) -> Coord {
        DiffPoly::var(self.z[k])
    }

    pub fn coordinate_var(&self, k: usize) -> Var {
        self.z[k]
    }

    pub fn index_of(&self, i: &LoopIdx) -> Option<usize> {
        self.index.get(i).copied()
    }

    pub fn label(&self, i: &LoopIdx) -> String {
        match i.power {
            0 => self.lie.label(i.base).to_string(),
            1 => format!("{} t", self.lie.label(i.base)),
            p => format!("{} t^{p}", self.lie.label(i.base)),
        }
    }

    /// Name of the coordinate `z_b`.
    pub fn coordinate_name(&self, k: usize) -> String {
        let i = self.basis[k];
        match i.power {
            0 => format!("z_{}", self.lie.label(i.base)),
            p => format!("z_{}_t{p}", self.lie.label(i.base)),
        }
    }

    pub fn render(&self, p: &Coord) -> String {
        render_poly(p, &|v| self.coordinate_name(v.id as usize))
    }

    pub fn g0(&self) -> &[usize] {
        &self.g0
    }

    /// Drop terms of weight above `N`.
    pub fn trunc(&self, p: &Coord) -> Coord {
        let cap = HalfInt::from_int(self.n);
        DiffPoly::from_terms(
            p.terms()
                .filter(|(m, _)| m.weight() <= cap)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn mul(&self, a: &Coord, b: &Coord) -> Coord {
        self.trunc(&a.mul(b))
    }

    /// Constant element `e_a t^n`.
    pub fn elem(&self, i: LoopIdx) -> LoopElem {
        LoopElem::from([(i, DiffPoly::one())])
    }

    /// Embed `x ∈ g` at power `t^n`.
    pub fn embed(&self, x: &[Q], power: i64) -> LoopElem {
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (LoopIdx { base: a, power }, constant(c)))
            .collect()
    }

    pub fn bracket(&self, x: &LoopElem, y: &LoopElem) -> LoopElem {
        let mut out = LoopElem::new();
        for (i, ci) in x {
            for (j, cj) in y {
                let list = self.lie.bracket_basis(i.base, j.base);
                if list.is_empty() {
                    continue;
                }
                let c = self.mul(ci, cj);
                if c.is_zero() {
                    continue;
                }
                for (b, v) in list {
                    let key = LoopIdx { base: *b, power: i.power + j.power };
                    add_into(&mut out, key, &c.scale_q(v));
                }
            }
        }
        out
    }

    /// Invariant form `(a t^n | b t^m) = (a|b) δ_{n+m,0}`.
    pub fn pair(&self, x: &LoopElem, y: &LoopElem) -> Coord {
        let mut out = DiffPoly::zero();
        for (i, ci) in x {
            for (j, cj) in y {
                if i.power + j.power != 0 {
                    continue;
                }
                let f = self.lie.form_basis(i.base, j.base);
                if !f.is_zero() {
                    out.add_assign(&self.mul(ci, cj).scale_q(f));
                }
            }
        }
        out
    }

    /// Components of positive degree.
    pub fn plus_part(&self, x: &LoopElem) -> LoopElem {
        x.iter().filter(|(i, _)| self.degree(i) > 0).map(|(i, c)| (*i, c.clone())).collect()
    }

    /// Components of degree ≤ 0.
    pub fn minus_part(&self, x: &LoopElem) -> LoopElem {
        x.iter().filter(|(i, _)| self.degree(i) <= 0).map(|(i, c)| (*i, c.clone())).collect()
    }

    /// Components of degree exactly `m`.
    pub fn degree_part(&self, x: &LoopElem, m: i64) -> LoopElem {
        x.iter().filter(|(i, _)| self.degree(i) == m).map(|(i, c)| (*i, c.clone())).collect()
    }

    fn series(&self, x: &LoopElem, coeffs: &dyn Fn(usize) -> Q, sign: bool) -> LoopElem {
        let mut acc = LoopElem::new();
        let mut term = x.clone();
        let mut m = 0usize;
        let mut fact = Q::one();
        while !term.is_empty() {
            let c = coeffs(m).over(&fact);
            if !c.is_zero() {
                for (i, p) in &term {
                    add_into(&mut acc, *i, &p.scale_q(&c));
                }
            }
            term = self.bracket(&self.zlog, &term);
            if sign {
                term = scale_elem(&term, &Q::from_int(-1));
            }
            m += 1;
            fact = fact.times(&Q::from_int(m as i64));
        }
        acc
    }

    /// `K x K^{-1} = Σ ad_Z^m(x)/m!`.
    pub fn adjoint(&self, x: &LoopElem) -> LoopElem {
        self.series(x, &|_| Q::one(), false)
    }

    /// `K^{-1} x K`.
    pub fn adjoint_inverse(&self, x: &LoopElem) -> LoopElem {
        self.series(x, &|_| Q::one(), true)
    }

    /// `W` with `e^{εX} e^{Z} = e^{Z + εW}`: `W = Σ B_m/m! ad_Z^m X`.
    pub fn translate(&self, x: &LoopElem) -> LoopElem {
        let b = bernoulli(self.n as usize + 2);
        self.series(x, &|m| b.get(m).cloned().unwrap_or_else(Q::zero), false)
    }

    /// Restrict an element of the positive part to a vector field.
    fn as_field(&self, w: &LoopElem) -> VecField {
        let mut out = VecField::new();
        for (i, c) in w {
            let deg = self.degree(i);
            assert!(deg > 0 || c.is_zero(), "translation field leaves the positive part");
            if let Some(k) = self.index_of(i) {
                let c = self.trunc(c);
                if !c.is_zero() {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    /// `u^L` for a constant basis element, cached.
    pub fn left_basis_field(&self, k: usize) -> VecField {
        if let Some(f) = self.left_cache.read().unwrap().get(&k) {
            return f.clone();
        }
        let u = scale_elem(&self.elem(self.basis[k]), &Q::from_int(-1));
        let f = self.as_field(&self.translate(&u));
        self.left_cache.write().unwrap().insert(k, f.clone());
        f
    }

    /// `u^L` for `u` in the positive part, with coordinate coefficients
    /// allowed (`Σ F_c e_c^L`).
    pub fn left_field(&self, u: &LoopElem) -> VecField {
        let mut out = VecField::new();
        for (i, c) in u {
            if c.is_zero() {
                continue;
            }
            let deg = self.degree(i);
            assert!(deg > 0, "left action needs a positive element");
            let Some(k) = self.index_of(i) else { continue };
            for (b, w) in self.left_basis_field(k) {
                let t = self.mul(c, &w);
                if !t.is_zero() {
                    let e = out.entry(b).or_default();
                    e.add_assign(&t);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `v^R`: the field of left translation by `(K v K^{-1})_+`.
    pub fn right_field(&self, v: &LoopElem) -> VecField {
        let x = self.plus_part(&self.adjoint(v));
        self.as_field(&self.translate(&x))
    }

    pub fn s_right(&self) -> &VecField {
        self.s_right.get_or_init(|| self.right_field(&self.s))
    }

    /// ε-linear term of `F(z + εW)`, expanded with a nilpotent `ε`.
    pub fn apply(&self, field: &VecField, f: &Coord) -> Coord {
        let mut out = DiffPoly::zero();
        for (m, c) in f.terms() {
            // (value, ε-part)
            let mut acc = (DiffPoly::one(), DiffPoly::zero());
            for (factor, p) in m.factors() {
                let k = factor.var.id as usize;
                let zk = DiffPoly::factor(*factor);
                let wk = field.get(&k).cloned().unwrap_or_default();
                for _ in 0..*p {
                    let a = self.mul(&acc.0, &zk);
                    let b = self.mul(&acc.0, &wk).add(&self.mul(&acc.1, &zk));
                    acc = (a, b);
                }
            }
            out.add_assign(&acc.1.scale(c));
        }
        self.trunc(&out)
    }

    /// Chain-rule evaluation `Σ W_b ∂F/∂z_b`, used as an independent check.
    pub fn apply_chain_rule(&self, field: &VecField, f: &Coord) -> Coord {
        let mut out = DiffPoly::zero();
        for (k, w) in field {
            let d = f.partial(&Factor::new(self.z[*k], 0), crate::diffpoly::Side::Left);
            out.add_assign(&self.mul(w, &d));
        }
        out
    }

    /// `E_α = k (e_α | K s K^{-1})`.
    pub fn e_coordinate(&self, a: usize) -> Result<Coord> {
        if self.degree_of[a] != 0 {
            return Err(Error::Invalid(format!("{} is not of degree 0", self.lie.label(a))));
        }
        let ks = self.adjoint(&self.s);
        let p = self.pair(&self.elem(LoopIdx { base: a, power: 0 }), &ks);
        Ok(p.scale(&self.level))
    }

    /// `E_{ā}` for the dual basis vector of `e_a`.
    pub fn e_dual(&self, a: usize) -> Result<Coord> {
        let mut out = DiffPoly::zero();
        for (b, c) in self.lie.dual(a) {
            out.add_assign(&self.e_coordinate(*b)?.scale_q(c));
        }
        Ok(out)
    }

    /// `(s^R)^n E_a`.
    pub fn psi_generator(&self, a: usize, order: u32) -> Result<Coord> {
        let mut p = self.e_coordinate(a)?;
        for _ in 0..order {
            p = self.apply(self.s_right(), &p);
        }
        Ok(p)
    }

    /// The differential-algebra map `Ψ` on polynomials in the generators of
    /// `V^k(g_0)`; `var_base` maps generator ids to basis indices of `g_0`.
    pub fn psi(&self, p: &DiffPoly, var_base: &dyn Fn(u32) -> usize) -> Result<Coord> {
        let mut cache: BTreeMap<Factor, Coord> = BTreeMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            let mut acc = DiffPoly::one();
            for (f, pow) in m.factors() {
                if !cache.contains_key(f) {
                    cache.insert(*f, self.psi_generator(var_base(f.var.id), f.order)?);
                }
                for _ in 0..*pow {
                    acc = self.mul(&acc, &cache[f]);
                }
            }
            out.add_assign(&acc.scale(c));
        }
        Ok(self.trunc(&out))
    }

    /// Matrix of `ad_s` from degree `m` to degree `m-1` on constant
    /// elements, with the basis of each degree.
    pub fn degree_basis(&self, m: i64) -> Vec<LoopIdx> {
        let mut out = Vec::new();
        let lo = (m - self.depth).div_euclid(self.depth + 1) - 1;
        let hi = (m + self.depth).div_euclid(self.depth + 1) + 1;
        for power in lo..=hi {
            for (a, &j) in self.degree_of.iter().enumerate() {
                if j + (self.depth + 1) * power == m {
                    out.push(LoopIdx { base: a, power });
                }
            }
        }
        out.sort();
        out
    }

    /// Constant part (all coordinates zero) of a coefficient.
    pub fn at_origin(p: &Coord) -> Q {
        p.coeff(&Monomial::one()).as_constant().unwrap_or_else(Q::zero)
    }

    /// Basis of `Ker(ad_s)` in degree `m`, as constant elements.
    pub fn kernel_of_ad_s(&self, m: i64) -> Vec<LoopElem> {
        let src = self.degree_basis(m);
        let dst = self.degree_basis(m - 1);
        let mut a = Matrix::<Q>::zeros(dst.len(), src.len());
        for (c, i) in src.iter().enumerate() {
            let img = self.bracket(&self.s, &self.elem(*i));
            for (j, v) in img {
                let r = dst.binary_search(&j).expect("ad s lowers degree by one");
                a.set(r, c, Self::at_origin(&v));
            }
        }
        a.nullspace()
            .into_iter()
            .map(|v| {
                src.iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (*i, constant(&c)))
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn add_into(map: &mut LoopElem, key: LoopIdx, p: &Coord) {
    if p.is_zero() {
        return;
    }
    let e = map.entry(key).or_default();
    e.add_assign(p);
    if e.is_zero() {
        map.remove(&key);
    }
}

pub fn scale_elem(x: &LoopElem, c: &Q) -> LoopElem {
    if c.is_zero() {
        return LoopElem::new();
    }
    x.iter().map(|(i, p)| (*i, p.scale_q(c))).collect()
}

pub fn add_elems(x: &LoopElem, y: &LoopElem) -> LoopElem {
    let mut out = x.clone();
    for (i, p) in y {
        add_into(&mut out, *i, p);
    }
    out
}

/// `A(B F) - B(A F)` for two fields.
pub fn field_commutator_apply(setup: &LoopSetup, a: &VecField, b: &VecField, f: &Coord) -> Coord {
    let ab = setup.apply(a, &setup.apply(b, f));
    let ba = setup.apply(b, &setup.apply(a, f));
    ab.sub(&ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_y, grade, principal_triple};
    use crate::sample;

    pub(crate) fn setup(ty: &str, n: usize) -> LoopSetup {
        let g = SimpleLieAlgebra::build(ty).unwrap();
        let t = principal_triple(&g).unwrap();
        let gr = grade(&g, &t).unwrap();
        let y = default_y(&g, &t, &gr).unwrap();
        LoopSetup::new(&g, &t, &gr, &y, n, RatFunc::var()).unwrap()
    }

    #[test]
    fn coordinates_sl2() {
        let s = setup("A1", 4);
        // degrees 1,1,2,3,3,4
        let degs: Vec<i64> = s.basis.iter().map(|i| s.degree(i)).collect();
        assert_eq!(degs, vec![1, 1, 2, 3, 3, 4]);
    }

    #[test]
    fn identity_k_leaves_elements() {
        let s = setup("A1", 3);
        let ks = s.adjoint(&s.s);
        let at_zero: LoopElem = ks
            .iter()
            .filter_map(|(i, p)| {
                let c = LoopSetup::at_origin(p);
                (!c.is_zero()).then(|| (*i, DiffPoly::rational(c)))
            })
            .collect();
        assert_eq!(at_zero, s.s);
        // degree 0 part is linear in the degree 1 coordinates
        for p in s.degree_part(&ks, 0).values() {
            for (m, _) in p.terms() {
                assert_eq!(m.degree(), 1);
                assert_eq!(m.weight(), HalfInt::ONE);
            }
        }
    }

    #[test]
    fn adjoint_is_invertible_and_multiplicative() {
        let s = setup("A2", 3);
        let mut rng = sample::rng(3);
        use rand::Rng;
        for _ in 0..5 {
            let a = s.elem(s.basis[rng.gen_range(0..s.basis.len())]);
            let b = s.embed(&s.lie.basis_vec(rng.gen_range(0..s.lie.dim())), 0);
            let back = s.adjoint_inverse(&s.adjoint(&b));
            // exact in weights ≤ N
            assert_eq!(back, b);
            let lhs = s.adjoint(&s.bracket(&a, &b));
            let rhs = s.bracket(&s.adjoint(&a), &s.adjoint(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitution_matches_chain_rule() {
        let s = setup("A1", 4);
        let f = s.coordinate(0).mul(&s.coordinate(1)).add(&s.coordinate(2).pow(2));
        for k in 0..s.basis.len() {
            let field = s.left_basis_field(k);
            assert_eq!(s.apply(&field, &f), s.apply_chain_rule(&field, &f));
        }
        let sr = s.s_right().clone();
        assert_eq!(s.apply(&sr, &f), s.apply_chain_rule(&sr, &f));
    }

    #[test]
    fn left_action_on_linear_coordinates() {
        let s = setup("A1", 4);
        for k in 0..s.basis.len() {
            let field = s.left_basis_field(k);
            let v = s.apply(&field, &s.coordinate(k));
            assert_eq!(LoopSetup::at_origin(&v), Q::from_int(-1));
        }
        assert!(s.apply(s.s_right(), &DiffPoly::one()).is_zero());
    }
}
