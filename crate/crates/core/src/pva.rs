//! Concrete Poisson vertex algebras, local functionals and the map η.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::diffpoly::{monomials_of_content, monomials_of_weight, Content, DiffPoly, Factor, Monomial, Side, Var, VarTable};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::lambda::{BracketTable, Counterexample, LambdaPoly};
use crate::liealg::LieAlgebra;
use crate::linalg::{reduce_against, span_basis, Echelon, Matrix};
use crate::ratfunc::RatFunc;
use crate::weight::HalfInt;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Unit,
    Affine { algebra: String },
    BetaGamma,
    Tensor(Box<Provenance>, Box<Provenance>),
    Subalgebra,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Unit => write!(f, "unit"),
            Provenance::Affine { algebra } => write!(f, "affine({algebra})"),
            Provenance::BetaGamma => write!(f, "bg"),
            Provenance::Tensor(a, b) => write!(f, "{a} ⊗ {b}"),
            Provenance::Subalgebra => write!(f, "subalgebra"),
        }
    }
}

/// A PVA presented by generators and the brackets among them.
#[derive(Clone, Debug, PartialEq)]
pub struct Pva {
    pub table: BracketTable,
    pub provenance: Provenance,
}

impl Pva {
    pub fn unit() -> Self {
        Pva {
            table: BracketTable::new(VarTable::new()),
            provenance: Provenance::Unit,
        }
    }

    pub fn vars(&self) -> &VarTable {
        self.table.vars()
    }

    /// Skew-symmetry and Jacobi on generators.
    pub fn check_axioms(&self) -> std::result::Result<(), Counterexample> {
        self.table.check_skew()?;
        self.table.check_jacobi()
    }

    pub fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly> {
        self.table.bracket(f, g)
    }

    pub fn render(&self, p: &DiffPoly) -> String {
        self.vars().render(p)
    }

    pub fn parse(&self, text: &str) -> Result<DiffPoly> {
        self.vars().parse(text)
    }

    pub fn has_odd(&self) -> bool {
        self.vars().vars().iter().any(|v| v.odd)
    }
}

/// `V^k(L)`: `{u λ v} = [u,v] + k (u|v) λ`, generators of weight 1 named by
/// the basis labels.
pub fn affine_pva(lie: &LieAlgebra, level: &RatFunc, name: &str) -> Result<Pva> {
    if let Some((a, b, c)) = lie.invariance_violation() {
        return Err(Error::InvalidAlgebra(format!(
            "form is not invariant on ({}, {}, {})",
            lie.label(a),
            lie.label(b),
            lie.label(c)
        )));
    }
    let mut vars = VarTable::new();
    let gens: Vec<Var> = lie
        .labels()
        .iter()
        .map(|l| vars.push(l.clone(), HalfInt::ONE, false))
        .collect();
    let mut table = BracketTable::new(vars);
    for a in 0..lie.dim() {
        for b in 0..lie.dim() {
            let mut p = LambdaPoly::zero();
            let mut c0 = DiffPoly::zero();
            for (c, v) in lie.bracket_basis(a, b) {
                c0.add_assign(&DiffPoly::var(gens[*c]).scale_q(v));
            }
            p.add_at(0, &c0);
            let form = lie.form_basis(a, b);
            if !form.is_zero() {
                p.add_at(1, &DiffPoly::constant(level.times(&RatFunc::from_rational(form.clone()))));
            }
            table.set(a as u32, b as u32, p);
        }
    }
    Ok(Pva {
        table,
        provenance: Provenance::Affine { algebra: name.to_string() },
    })
}

/// The βγ-system on `g_{1/2}`: even generators `Φ_α` of weight ½ with
/// `{Φ_α λ Φ_β} = (f | [e_α, e_β])`.
pub fn bg_system(lie: &LieAlgebra, f: &[Q], half: &[usize]) -> Result<Pva> {
    if half.is_empty() {
        return Ok(Pva::unit());
    }
    let mut vars = VarTable::new();
    let gens: Vec<Var> = half
        .iter()
        .map(|&a| vars.push(format!("phi_{}", lie.label(a)), HalfInt::HALF, false))
        .collect();
    let pairing: Vec<Vec<Q>> = half
        .iter()
        .map(|&a| {
            half.iter()
                .map(|&b| lie.form(f, &lie.bracket(&lie.basis_vec(a), &lie.basis_vec(b))))
                .collect()
        })
        .collect();
    if Matrix::from_rows(pairing.clone(), half.len()).rank() < half.len() {
        return Err(Error::Degenerate("(f|[·,·]) is degenerate on g_1/2".into()));
    }
    let mut table = BracketTable::new(vars);
    for (i, row) in pairing.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                table.set(gens[i].id, gens[j].id, LambdaPoly::constant(DiffPoly::rational(v.clone())));
            }
        }
    }
    Ok(Pva {
        table,
        provenance: Provenance::BetaGamma,
    })
}

/// Tensor product; the generators of `b` are renumbered after those of `a`.
pub fn tensor(a: &Pva, b: &Pva) -> Pva {
    let mut vars = a.vars().clone();
    let offset = a.vars().len() as u32;
    for (name, v) in b.vars().entries() {
        vars.push(name.clone(), v.weight, v.odd);
    }
    let shift = |v: &Var| Var { id: v.id + offset, ..*v };
    let mut table = BracketTable::new(vars);
    for ((i, j), p) in a.table.entries() {
        table.set(*i, *j, p.clone());
    }
    for ((i, j), p) in b.table.entries() {
        let mut q = LambdaPoly::zero();
        for (n, c) in p.coeffs() {
            q.add_at(n, &c.rename_vars(&shift));
        }
        table.set(i + offset, j + offset, q);
    }
    Pva {
        table,
        provenance: Provenance::Tensor(Box::new(a.provenance.clone()), Box::new(b.provenance.clone())),
    }
}

/// Reduction data for one (content, order) block of `V/∂V`.
struct Block {
    /// Monomials of the block, largest first.
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// RREF of the image of ∂ from order − 1.
    image: Echelon<RatFunc>,
}

type BlockKey = (Content, u32);

fn block_cache() -> &'static RwLock<HashMap<BlockKey, Arc<Block>>> {
    static CACHE: OnceLock<RwLock<HashMap<BlockKey, Arc<Block>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn block(content: &Content, order: u32) -> Arc<Block> {
    let key = (content.clone(), order);
    if let Some(b) = block_cache().read().unwrap().get(&key) {
        return b.clone();
    }
    let mut monos = monomials_of_content(content, order);
    monos.reverse();
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    if order > 0 {
        for m in monomials_of_content(content, order - 1) {
            let img = DiffPoly::term(RatFunc::one(), m).d();
            let mut row = vec![RatFunc::zero(); monos.len()];
            for (mm, c) in img.terms() {
                row[index[mm]] = c.clone();
            }
            rows.push(row);
        }
    }
    let image = span_basis(&rows, monos.len());
    let b = Arc::new(Block { monos, index, image });
    block_cache().write().unwrap().insert(key, b.clone());
    b
}

fn split_blocks(p: &DiffPoly) -> BTreeMap<BlockKey, Vec<(Monomial, RatFunc)>> {
    let mut out: BTreeMap<BlockKey, Vec<(Monomial, RatFunc)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry((m.content(), m.order())).or_default().push((m.clone(), c.clone()));
    }
    out
}

/// Canonical representative of `p` modulo `∂V`: within each block, the
/// combination of smallest monomials congruent to `p`.
pub fn reduce_mod_d(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for ((content, order), terms) in split_blocks(p) {
        let b = block(&content, order);
        let mut v = vec![RatFunc::zero(); b.monos.len()];
        for (m, c) in terms {
            v[b.index[&m]] = c;
        }
        let r = reduce_against(&b.image, &v);
        for (i, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                out.add_term(b.monos[i].clone(), c);
            }
        }
    }
    out
}

/// Monomials spanning the canonical representatives of a given weight.
pub fn functional_basis(vars: &[Var], w: HalfInt) -> Vec<Monomial> {
    let mut keys: Vec<BlockKey> = monomials_of_weight(vars, w)
        .iter()
        .map(|m| (m.content(), m.order()))
        .collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    for (content, order) in keys {
        let b = block(&content, order);
        let pivots: std::collections::HashSet<usize> = b.image.pivots.iter().copied().collect();
        for (i, m) in b.monos.iter().enumerate() {
            if !pivots.contains(&i) {
                out.push(m.clone());
            }
        }
    }
    out.sort();
    out
}

/// An element `∫f` of `Lie(V) = V/∂V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LocalFunctional {
    rep: DiffPoly,
}

impl LocalFunctional {
    pub fn new(f: &DiffPoly) -> Self {
        LocalFunctional { rep: reduce_mod_d(f) }
    }

    pub fn zero() -> Self {
        LocalFunctional::default()
    }

    pub fn rep(&self) -> &DiffPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn weight(&self) -> Option<HalfInt> {
        self.rep.weight()
    }

    pub fn add(&self, other: &LocalFunctional) -> LocalFunctional {
        LocalFunctional { rep: self.rep.add(&other.rep) }
    }

    pub fn scale(&self, c: &RatFunc) -> LocalFunctional {
        LocalFunctional { rep: self.rep.scale(c) }
    }

    pub fn render(&self, vars: &VarTable) -> String {
        format!("∫ {}", vars.render(&self.rep))
    }
}

/// `∫f`.
pub fn functional(f: &DiffPoly) -> LocalFunctional {
    LocalFunctional::new(f)
}

/// `[∫f, ∫g] = Σ ∫ (δg/δu_j) {u_i ∂ u_j}_→ (δf/δu_i)`; for algebras with odd
/// generators the bracket is computed as `∫ {f λ g}|_{λ=0}`.
pub fn local_bracket(f: &LocalFunctional, g: &LocalFunctional, pva: &Pva) -> Result<LocalFunctional> {
    if pva.has_odd() {
        let b = pva.table.bracket_at_zero(&f.rep, &g.rep)?;
        return Ok(LocalFunctional::new(&b));
    }
    let vars = pva.vars().vars();
    let df: Vec<DiffPoly> = vars.iter().map(|v| f.rep.variational(v, Side::Left)).collect();
    let dg: Vec<DiffPoly> = vars.iter().map(|v| g.rep.variational(v, Side::Right)).collect();
    let mut acc = DiffPoly::zero();
    for (i, dfi) in df.iter().enumerate() {
        if dfi.is_zero() {
            continue;
        }
        for (j, dgj) in dg.iter().enumerate() {
            if dgj.is_zero() {
                continue;
            }
            let h = pva.table.get(vars[i].id, vars[j].id);
            for (n, c) in h.coeffs() {
                acc.add_assign(&dgj.mul(c).mul(&dfi.d_n(n)));
            }
        }
    }
    Ok(LocalFunctional::new(&acc))
}

/// An evolutionary derivation, determined by its values on generators.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Derivation {
    pub odd: bool,
    pub images: BTreeMap<u32, DiffPoly>,
}

impl Derivation {
    pub fn image(&self, id: u32) -> DiffPoly {
        self.images.get(&id).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(|p| p.is_zero())
    }

    /// Apply, using `X(u^(n)) = ∂^n X(u)`.
    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        p.apply_derivation(self.odd, &mut |f: &Factor| self.image(f.var.id).d_n(f.order))
    }

    /// Supercommutator `[X, Y]`.
    pub fn commutator(&self, other: &Derivation, vars: &VarTable) -> Derivation {
        let sign_neg = !(self.odd && other.odd);
        let mut images = BTreeMap::new();
        for v in vars.vars() {
            let a = self.apply(&other.image(v.id));
            let b = other.apply(&self.image(v.id));
            let x = if sign_neg { a.sub(&b) } else { a.add(&b) };
            if !x.is_zero() {
                images.insert(v.id, x);
            }
        }
        Derivation {
            odd: self.odd != other.odd,
            images,
        }
    }
}

/// `η(∫f) = {f λ ·}|_{λ=0}`.
pub fn eta(f: &LocalFunctional, pva: &Pva) -> Result<Derivation> {
    let mut images = BTreeMap::new();
    for v in pva.vars().vars() {
        let x = pva.table.bracket_at_zero(&f.rep, &DiffPoly::var(v))?;
        if !x.is_zero() {
            images.insert(v.id, x);
        }
    }
    Ok(Derivation {
        odd: f.rep.parity() == Some(true),
        images,
    })
}

/// Basis of `Ker η` among functionals of weight `≤ weight_bound`.
pub fn eta_kernel(pva: &Pva, weight_bound: HalfInt) -> Result<Vec<LocalFunctional>> {
    let vars = pva.vars().vars();
    let mut out = vec![LocalFunctional::new(&DiffPoly::one())];
    let mut w = HalfInt::HALF;
    while w <= weight_bound {
        let basis = functional_basis(&vars, w);
        if !basis.is_empty() {
            let mut images: Vec<Vec<(u32, DiffPoly)>> = Vec::new();
            let mut keys: Vec<(u32, Monomial)> = Vec::new();
            for m in &basis {
                let d = eta(&LocalFunctional { rep: DiffPoly::term(RatFunc::one(), m.clone()) }, pva)?;
                let list: Vec<(u32, DiffPoly)> = d.images.into_iter().collect();
                for (id, p) in &list {
                    for (mm, _) in p.terms() {
                        keys.push((*id, mm.clone()));
                    }
                }
                images.push(list);
            }
            keys.sort();
            keys.dedup();
            let mut a = Matrix::<RatFunc>::zeros(keys.len(), basis.len());
            for (col, list) in images.iter().enumerate() {
                for (id, p) in list {
                    for (mm, c) in p.terms() {
                        let r = keys.binary_search(&(*id, mm.clone())).unwrap();
                        a.set(r, col, c.clone());
                    }
                }
            }
            for v in a.nullspace() {
                let mut p = DiffPoly::zero();
                for (c, m) in v.into_iter().zip(&basis) {
                    if !c.is_zero() {
                        p.add_term(m.clone(), c);
                    }
                }
                out.push(LocalFunctional::new(&p.normalized()));
            }
        }
        w = w + HalfInt::HALF;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::SimpleLieAlgebra;

    fn k() -> RatFunc {
        RatFunc::var()
    }

    fn sl2() -> (SimpleLieAlgebra, Pva) {
        let g = SimpleLieAlgebra::build("A1").unwrap();
        let p = affine_pva(g.lie(), &k(), "sl2").unwrap();
        (g, p)
    }

    #[test]
    fn affine_sl2_brackets() {
        let (_, p) = sl2();
        let e = p.parse("e1").unwrap();
        let f = p.parse("f1").unwrap();
        let h = p.parse("h1").unwrap();
        let b = p.bracket(&e, &f).unwrap();
        assert_eq!(b.coeff(0), h);
        assert_eq!(b.coeff(1), DiffPoly::constant(k()));
        // (h|h) = tr(h h) = 2 for the defining representation
        assert_eq!(p.bracket(&h, &h).unwrap().coeff(1), DiffPoly::constant(k().times(&RatFunc::from_int(2))));
        p.check_axioms().unwrap();
    }

    #[test]
    fn functionals() {
        let mut vars = VarTable::new();
        vars.push("u", HalfInt::ONE, false);
        let t = |s: &str| vars.parse(s).unwrap();
        assert!(functional(&t("u*u[1]")).is_zero());
        assert_eq!(functional(&t("u^2 + 3*u^2*u[1]")), functional(&t("u^2")));
        assert_eq!(functional(&t("u*u[2]")), functional(&t("-u[1]^2")));
        assert!(!functional(&DiffPoly::one()).is_zero());
    }

    #[test]
    fn bracket_matches_lambda_zero() {
        let (_, p) = sl2();
        let e = functional(&p.parse("e1").unwrap());
        let f = functional(&p.parse("f1").unwrap());
        let h = functional(&p.parse("h1").unwrap());
        assert_eq!(local_bracket(&e, &f, &p).unwrap(), h);
        let a = p.parse("e1*f1[1] + h1^2").unwrap();
        let b = p.parse("h1*e1[2] + f1*e1*h1").unwrap();
        let direct = functional(&p.table.bracket_at_zero(&a, &b).unwrap());
        assert_eq!(local_bracket(&functional(&a), &functional(&b), &p).unwrap(), direct);
    }

    #[test]
    fn eta_examples() {
        let gl1 = affine_pva(&LieAlgebra::gl1("u"), &RatFunc::one(), "gl1").unwrap();
        let d = eta(&functional(&gl1.parse("1/2*u^2").unwrap()), &gl1).unwrap();
        assert_eq!(d.image(0), gl1.parse("u[1]").unwrap());
        assert!(eta(&functional(&DiffPoly::one()), &gl1).unwrap().is_zero());
        assert!(eta(&functional(&gl1.parse("u").unwrap()), &gl1).unwrap().is_zero());
    }

    #[test]
    fn eta_kernels() {
        let gl1 = affine_pva(&LieAlgebra::gl1("u"), &k(), "gl1").unwrap();
        let ker = eta_kernel(&gl1, HalfInt::from_int(3)).unwrap();
        assert_eq!(ker, vec![functional(&DiffPoly::one()), functional(&gl1.parse("u").unwrap())]);
        let (_, sl2) = sl2();
        assert_eq!(eta_kernel(&sl2, HalfInt::from_int(3)).unwrap(), vec![functional(&DiffPoly::one())]);
    }

    #[test]
    fn bg_pairing() {
        let g = SimpleLieAlgebra::build("A2").unwrap();
        let t = crate::liealg::partition_triple(&g, &[2, 1]).unwrap();
        let gr = crate::liealg::grade(&g, &t).unwrap();
        let half = gr.piece(HalfInt::HALF).to_vec();
        let p = bg_system(g.lie(), &t.f, &half).unwrap();
        p.check_axioms().unwrap();
        let (a, b) = (DiffPoly::var(p.vars().get(0).unwrap()), DiffPoly::var(p.vars().get(1).unwrap()));
        let v = p.bracket(&a, &b).unwrap().coeff(0);
        assert!(v == DiffPoly::one() || v == DiffPoly::one().neg(), "{v:?}");
        assert_eq!(bg_system(g.lie(), &t.f, &[]).unwrap(), Pva::unit());
    }
}
