//! Screening operators on `V^k(g_0) ⊗ F(g_{1/2})` and the W-algebra as their
//! joint kernel.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::diffpoly::{monomials_of_weight, DiffPoly, Factor, Monomial, Var};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::lambda::LambdaPoly;
use crate::liealg::{AdxGrading, SimpleLieAlgebra, Sl2Triple};
use crate::linalg::{reduce_against, span_basis, Matrix};
use crate::pva::{affine_pva, bg_system, functional, local_bracket, tensor, LocalFunctional, Pva};
use crate::ratfunc::RatFunc;
use crate::upoly::UniPoly;
use crate::weight::HalfInt;

/// The operators `Q_γ`, `γ ∈ [α]`, attached to one `α ∈ Π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScreeningFamily {
    pub base: usize,
    pub members: Vec<usize>,
    pub degree: HalfInt,
}

/// All screening operators of a triple, with the ambient PVA.
#[derive(Debug)]
pub struct Screening {
    pub pva: Pva,
    pub families: Vec<ScreeningFamily>,
    pub level: RatFunc,
    /// Basis indices of g_0 and of Δ_{1/2}, in generator order.
    pub g0: Vec<usize>,
    pub half: Vec<usize>,
    /// Every `γ` with an operator, sorted.
    members: Vec<usize>,
    degree: HashMap<usize, HalfInt>,
    /// `Q_γ` on undifferentiated generators, by generator id.
    base_images: HashMap<(usize, u32), DiffPoly>,
    /// `[Q_γ, ∂] = Σ_{γ'} comm[γ][γ'] Q_{γ'}`.
    comm: HashMap<usize, Vec<(usize, DiffPoly)>>,
    cache: RwLock<HashMap<(usize, Factor), DiffPoly>>,
    labels: Vec<String>,
    sugawara: Option<DiffPoly>,
}

impl Screening {
    /// Build the operators for all of Π. `level` is `k` itself for a
    /// symbolic level or a nonzero rational.
    pub fn new(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading, level: RatFunc) -> Result<Self> {
        if level.is_zero() {
            return Err(Error::Invalid("level must be nonzero".into()));
        }
        let lie = alg.lie();
        let g0 = grading.piece(HalfInt::ZERO).to_vec();
        let half = grading.piece(HalfInt::HALF).to_vec();
        let sub = lie.subalgebra(&g0)?;
        let affine = affine_pva(&sub, &level, "g0")?;
        let bg = bg_system(lie, &triple.f, &half)?;
        let pva = tensor(&affine, &bg);
        let vars = pva.vars().vars();
        let var_g0: HashMap<usize, Var> = g0.iter().enumerate().map(|(i, &a)| (a, vars[i])).collect();
        let var_half: HashMap<usize, Var> = half.iter().enumerate().map(|(i, &a)| (a, vars[g0.len() + i])).collect();

        let mut families = Vec::new();
        let mut members = Vec::new();
        for &alpha in &grading.pi {
            if members.contains(&alpha) {
                continue;
            }
            let fam = grading.family(alg, alpha);
            let degree = grading.degree(alpha);
            if fam.iter().any(|&g| grading.degree(g) != degree) {
                return Err(Error::Invalid(format!("family of {} is not homogeneous", lie.label(alpha))));
            }
            members.extend(fam.iter().copied());
            families.push(ScreeningFamily { base: alpha, members: fam, degree });
        }
        members.sort();
        let degree: HashMap<usize, HalfInt> = members.iter().map(|&g| (g, grading.degree(g))).collect();

        let f = &triple.f;
        let pair = |a: usize, b: usize| lie.form(f, &lie.bracket(&lie.basis_vec(a), &lie.basis_vec(b)));
        let family_of = |g: usize| families.iter().find(|fam: &&ScreeningFamily| fam.members.contains(&g)).unwrap();
        let mut base_images = HashMap::new();
        for &g in &members {
            let fam = family_of(g);
            for &b in &g0 {
                let img = if degree[&g] == HalfInt::HALF {
                    let mut p = DiffPoly::zero();
                    for &c in &fam.members {
                        let v = lie.c(b, g, c);
                        if !v.is_zero() {
                            p.add_assign(&DiffPoly::var(var_half[&c]).scale_q(&v));
                        }
                    }
                    p
                } else {
                    DiffPoly::rational(pair(b, g))
                };
                base_images.insert((g, var_g0[&b].id), img);
            }
            for &b in &half {
                let img = if degree[&g] == HalfInt::HALF {
                    DiffPoly::rational(pair(g, b))
                } else {
                    DiffPoly::zero()
                };
                base_images.insert((g, var_half[&b].id), img);
            }
        }

        // (1/k) Σ_{β ∈ g_0} c_{γ,β}^{γ'} e_{β̄}
        let inv = level.inverse();
        let dual_poly = |b: usize| {
            let mut p = DiffPoly::zero();
            for (c, v) in lie.dual(b) {
                p.add_assign(&DiffPoly::var(var_g0[c]).scale_q(v));
            }
            p
        };
        let mut comm = HashMap::new();
        for &g in &members {
            let fam = family_of(g);
            let mut list = Vec::new();
            for &g2 in &fam.members {
                let mut p = DiffPoly::zero();
                for &b in &g0 {
                    let v = lie.c(g, b, g2);
                    if !v.is_zero() {
                        p.add_assign(&dual_poly(b).scale_q(&v));
                    }
                }
                if !p.is_zero() {
                    list.push((g2, p.scale(&inv)));
                }
            }
            comm.insert(g, list);
        }

        let sugawara = half.is_empty().then(|| {
            let mut l = DiffPoly::zero();
            for a in 0..g0.len() {
                for (b, c) in sub.dual(a) {
                    l.add_assign(&DiffPoly::var(vars[a]).mul(&DiffPoly::var(vars[*b])).scale_q(c));
                }
            }
            l.scale(&inv.times(&RatFunc::from_rational(Q::new(1.into(), 2.into()))))
        });
        let s = Screening {
            sugawara,
            pva,
            families,
            level,
            g0,
            half,
            members,
            degree,
            base_images,
            comm,
            cache: RwLock::new(HashMap::new()),
            labels: lie.labels().to_vec(),
        };
        s.check_homogeneous()?;
        Ok(s)
    }

    /// Each `Q_γ` lowers weight by the ad x degree of `γ`.
    fn check_homogeneous(&self) -> Result<()> {
        for &g in &self.members {
            let shift = self.degree[&g];
            for v in self.pva.vars().vars() {
                let img = &self.base_images[&(g, v.id)];
                if img.is_zero() {
                    continue;
                }
                if img.weight() != Some(v.weight - shift) {
                    return Err(Error::Invalid(format!(
                        "screening operator for {} is not weight-homogeneous",
                        self.labels[g]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// Weight shift of `Q_γ` (negative of its ad x degree).
    pub fn shift(&self, g: usize) -> HalfInt {
        -self.degree[&g]
    }

    pub fn vars(&self) -> Vec<Var> {
        self.pva.vars().vars()
    }

    /// The commutator coefficients `[Q_γ, ∂] = Σ c_{γ'} Q_{γ'}`.
    pub fn commutator_terms(&self, g: usize) -> &[(usize, DiffPoly)] {
        &self.comm[&g]
    }

    /// `Q_γ(u^(n))`, by the recursion `Q(∂x) = ∂Q(x) + [Q,∂]x`.
    pub fn image(&self, g: usize, f: &Factor) -> DiffPoly {
        if f.order == 0 {
            return self.base_images.get(&(g, f.var.id)).cloned().unwrap_or_default();
        }
        if let Some(p) = self.cache.read().unwrap().get(&(g, *f)) {
            return p.clone();
        }
        let lower = Factor::new(f.var, f.order - 1);
        let mut out = self.image(g, &lower).d();
        for (g2, c) in &self.comm[&g] {
            out.add_assign(&c.mul(&self.image(*g2, &lower)));
        }
        self.cache.write().unwrap().insert((g, *f), out.clone());
        out
    }

    /// `Q_γ(p)`.
    pub fn apply(&self, g: usize, p: &DiffPoly) -> Result<DiffPoly> {
        for v in p.vars() {
            if self.pva.vars().get(v.id) != Some(v) {
                return Err(Error::UnknownGenerator(format!("u{}", v.id)));
            }
        }
        if !self.members.contains(&g) {
            return Err(Error::NotIndecomposable(self.labels.get(g).cloned().unwrap_or_default()));
        }
        Ok(p.apply_derivation(false, &mut |f: &Factor| self.image(g, f)))
    }

    /// `L = (1/2k) Σ e_a e_ā` over `g_0`, whose `λ = 0` bracket is `∂` on
    /// `V^k(g_0)`; `None` when a βγ part is present.
    pub fn sugawara(&self) -> Option<&DiffPoly> {
        self.sugawara.as_ref()
    }

    /// Defect of `Q_γ ∂ - ∂ Q_γ = Σ c_{γ'} Q_{γ'}` on `p` (zero when it holds).
    pub fn commutator_defect(&self, g: usize, p: &DiffPoly) -> Result<DiffPoly> {
        let lhs = self.apply(g, &p.d())?.sub(&self.apply(g, p)?.d());
        let mut rhs = DiffPoly::zero();
        for (g2, c) in &self.comm[&g] {
            rhs.add_assign(&c.mul(&self.apply(*g2, p)?));
        }
        Ok(lhs.sub(&rhs))
    }

    /// True when every operator kills `p`.
    pub fn annihilates(&self, p: &DiffPoly) -> Result<bool> {
        for &g in &self.members {
            if !self.apply(g, p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Joint kernel in one weight, as an RREF basis (leading coefficient 1
    /// on the largest monomial), plus the polynomials in `k` whose roots
    /// may be non-generic.
    pub fn kernel_at(&self, w: HalfInt) -> (Vec<DiffPoly>, Vec<UniPoly<Q>>) {
        let vars = self.vars();
        let mut basis = monomials_of_weight(&vars, w);
        basis.reverse();
        if basis.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let images: Vec<Vec<(usize, DiffPoly)>> = basis
            .iter()
            .map(|m| {
                let p = DiffPoly::term(RatFunc::one(), m.clone());
                self.members.iter().map(|&g| (g, self.apply(g, &p).unwrap())).collect()
            })
            .collect();
        let mut keys: Vec<(usize, Monomial)> = images
            .iter()
            .flatten()
            .flat_map(|(g, p)| p.terms().map(move |(m, _)| (*g, m.clone())))
            .collect();
        keys.sort();
        keys.dedup();
        let mut a = Matrix::<RatFunc>::zeros(keys.len(), basis.len());
        for (col, list) in images.iter().enumerate() {
            for (g, p) in list {
                for (m, c) in p.terms() {
                    let r = keys.binary_search(&(*g, m.clone())).unwrap();
                    a.set(r, col, c.clone());
                }
            }
        }
        let ech = a.echelon();
        let mut bad: Vec<UniPoly<Q>> = Vec::new();
        let mut note = |p: &UniPoly<Q>| {
            if !p.is_constant() {
                let m = p.monic();
                if !bad.contains(&m) {
                    bad.push(m);
                }
            }
        };
        for pv in &ech.pivot_values {
            note(pv.num());
            note(pv.den());
        }
        let null = crate::linalg::nullspace_from(&ech, basis.len());
        let rref = span_basis(&null, basis.len());
        let mut out = Vec::new();
        for row in &rref.rows {
            let mut p = DiffPoly::zero();
            for (c, m) in row.iter().zip(&basis) {
                if !c.is_zero() {
                    note(c.den());
                    p.add_term(m.clone(), c.clone());
                }
            }
            out.push(p);
        }
        bad.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| format!("{x:?}").cmp(&format!("{y:?}"))));
        (out, bad)
    }

    /// Joint kernel in all weights `0, 1/2, …, weight_max`.
    pub fn joint_kernel(&self, weight_max: HalfInt) -> KernelBasis {
        let weights: Vec<HalfInt> = (0..=weight_max.twice()).map(HalfInt::from_twice).collect();
        let solved: Vec<(HalfInt, Vec<DiffPoly>, Vec<UniPoly<Q>>)> = weights
            .par_iter()
            .map(|&w| {
                let (b, bad) = self.kernel_at(w);
                (w, b, bad)
            })
            .collect();
        let mut pieces = BTreeMap::new();
        for (w, basis, bad_k) in solved {
            pieces.insert(w, KernelPiece { basis, generators: Vec::new(), bad_k });
        }
        let mut kb = KernelBasis { weight_max, pieces };
        kb.compute_generators();
        kb
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelPiece {
    pub basis: Vec<DiffPoly>,
    /// Basis elements not in `∂K + K·K`, normalized.
    pub generators: Vec<DiffPoly>,
    pub bad_k: Vec<UniPoly<Q>>,
}

/// Joint kernel by weight.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis {
    pub weight_max: HalfInt,
    pub pieces: BTreeMap<HalfInt, KernelPiece>,
}

impl KernelBasis {
    pub fn dim(&self, w: HalfInt) -> usize {
        self.pieces.get(&w).map_or(0, |p| p.basis.len())
    }

    pub fn basis(&self, w: HalfInt) -> &[DiffPoly] {
        self.pieces.get(&w).map_or(&[], |p| p.basis.as_slice())
    }

    pub fn generators(&self, w: HalfInt) -> &[DiffPoly] {
        self.pieces.get(&w).map_or(&[], |p| p.generators.as_slice())
    }

    /// Weights carrying at least one free generator.
    pub fn generator_weights(&self) -> Vec<HalfInt> {
        self.pieces
            .iter()
            .filter(|(_, p)| !p.generators.is_empty())
            .map(|(w, _)| *w)
            .collect()
    }

    fn compute_generators(&mut self) {
        let weights: Vec<HalfInt> = self.pieces.keys().copied().collect();
        for &w in &weights {
            if w == HalfInt::ZERO {
                continue;
            }
            let mut decomposable: Vec<DiffPoly> = Vec::new();
            if let Some(prev) = self.pieces.get(&(w - HalfInt::ONE)) {
                decomposable.extend(prev.basis.iter().map(|p| p.d()));
            }
            for &a in &weights {
                let b = w - a;
                if a <= HalfInt::ZERO || b < a {
                    continue;
                }
                let (Some(pa), Some(pb)) = (self.pieces.get(&a), self.pieces.get(&b)) else {
                    continue;
                };
                for x in &pa.basis {
                    for y in &pb.basis {
                        decomposable.push(x.mul(y));
                    }
                }
            }
            let piece = &self.pieces[&w];
            let mut monos: Vec<Monomial> = piece
                .basis
                .iter()
                .chain(&decomposable)
                .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
                .collect();
            monos.sort();
            monos.dedup();
            monos.reverse();
            let vec_of = |p: &DiffPoly| -> Vec<RatFunc> { monos.iter().map(|m| p.coeff(m)).collect() };
            let dec: Vec<Vec<RatFunc>> = decomposable.iter().map(vec_of).collect();
            let dec_ech = span_basis(&dec, monos.len());
            let rest: Vec<Vec<RatFunc>> = piece
                .basis
                .iter()
                .map(|p| reduce_against(&dec_ech, &vec_of(p)))
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect();
            let gens = span_basis(&rest, monos.len());
            let generators = gens
                .rows
                .iter()
                .map(|row| {
                    let mut p = DiffPoly::zero();
                    for (c, m) in row.iter().zip(&monos) {
                        if !c.is_zero() {
                            p.add_term(m.clone(), c.clone());
                        }
                    }
                    p
                })
                .collect();
            self.pieces.get_mut(&w).unwrap().generators = generators;
        }
    }
}

/// First failure of closure under the λ-bracket.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureFailure {
    pub left: String,
    pub right: String,
    pub lambda_power: u32,
    pub operator: String,
}

/// Every λ-coefficient of `{a λ b}` is again in the kernel, for kernel basis
/// elements with `weight(a) + weight(b) ≤ 2w`.
pub fn check_subalgebra(kb: &KernelBasis, s: &Screening, w: HalfInt) -> Result<std::result::Result<usize, ClosureFailure>> {
    if w > kb.weight_max {
        return Err(Error::Invalid(format!(
            "closure up to weight {} needs the kernel up to weight {w}",
            w.times(2)
        )));
    }
    let limit = w.times(2);
    let mut elems: Vec<(HalfInt, DiffPoly)> = Vec::new();
    for (wt, piece) in &kb.pieces {
        if *wt > HalfInt::ZERO {
            for p in &piece.basis {
                elems.push((*wt, p.clone()));
            }
        }
    }
    let mut pairs = Vec::new();
    for (i, (wa, a)) in elems.iter().enumerate() {
        for (wb, b) in &elems[i..] {
            if *wa + *wb <= limit {
                pairs.push((a, b));
            }
        }
    }
    let results: Vec<Option<ClosureFailure>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let br: LambdaPoly = s.pva.bracket(a, b).unwrap();
            for (n, c) in br.coeffs() {
                for &g in s.members() {
                    if !s.apply(g, c).unwrap().is_zero() {
                        return Some(ClosureFailure {
                            left: s.pva.render(a),
                            right: s.pva.render(b),
                            lambda_power: n,
                            operator: s.label(g).to_string(),
                        });
                    }
                }
            }
            None
        })
        .collect();
    match results.into_iter().flatten().next() {
        Some(f) => Ok(Err(f)),
        None => Ok(Ok(pairs.len())),
    }
}

/// Functionals of the W-algebra in the requested weights and all their
/// pairwise brackets.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub functionals: Vec<(HalfInt, LocalFunctional)>,
    pub brackets: Vec<(usize, usize, LocalFunctional)>,
}

impl Hierarchy {
    pub fn commuting(&self) -> bool {
        self.brackets.iter().all(|(_, _, b)| b.is_zero())
    }
}

/// Basis of the image of `K_w` in `Lie(V)`.
pub fn functional_classes(kb: &KernelBasis, w: HalfInt) -> Vec<LocalFunctional> {
    let reps: Vec<LocalFunctional> = kb.basis(w).iter().map(functional).filter(|f| !f.is_zero()).collect();
    let mut monos: Vec<Monomial> = reps.iter().flat_map(|f| f.rep().terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let rows: Vec<Vec<RatFunc>> = reps.iter().map(|f| monos.iter().map(|m| f.rep().coeff(m)).collect()).collect();
    span_basis(&rows, monos.len())
        .rows
        .iter()
        .map(|row| {
            let mut p = DiffPoly::zero();
            for (c, m) in row.iter().zip(&monos) {
                if !c.is_zero() {
                    p.add_term(m.clone(), c.clone());
                }
            }
            LocalFunctional::new(&p)
        })
        .collect()
}

/// Local functionals of the kernel in the given weights, with all pairwise
/// local brackets computed in the ambient PVA.
pub fn hamiltonians(kb: &KernelBasis, s: &Screening, weights: &[HalfInt]) -> Result<Hierarchy> {
    let mut functionals = Vec::new();
    for &w in weights {
        if w > kb.weight_max {
            return Err(Error::Invalid(format!("weight {w} exceeds the computed range")));
        }
        for f in functional_classes(kb, w) {
            functionals.push((w, f));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..functionals.len() {
        for j in i + 1..functionals.len() {
            pairs.push((i, j));
        }
    }
    let brackets: Result<Vec<(usize, usize, LocalFunctional)>> = pairs
        .par_iter()
        .map(|&(i, j)| Ok((i, j, local_bracket(&functionals[i].1, &functionals[j].1, &s.pva)?)))
        .collect();
    Ok(Hierarchy { functionals, brackets: brackets? })
}

/// Combinations of `candidates` whose bracket with every element of
/// `against` vanishes.
pub fn commuting_subspace(candidates: &[LocalFunctional], against: &[LocalFunctional], pva: &Pva) -> Result<Vec<LocalFunctional>> {
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    let mut tagged: Vec<Vec<((usize, Monomial), RatFunc)>> = Vec::new();
    for c in candidates {
        let mut col = Vec::new();
        for (i, g) in against.iter().enumerate() {
            let b = local_bracket(c, g, pva)?;
            for (m, v) in b.rep().terms() {
                keys.push((i, m.clone()));
                col.push(((i, m.clone()), v.clone()));
            }
        }
        tagged.push(col);
    }
    keys.sort();
    keys.dedup();
    let mut a = Matrix::<RatFunc>::zeros(keys.len(), candidates.len());
    for (j, col) in tagged.iter().enumerate() {
        for (key, v) in col {
            let r = keys.binary_search(key).unwrap();
            a.set(r, j, v.clone());
        }
    }
    Ok(a
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = DiffPoly::zero();
            for (c, f) in v.iter().zip(candidates) {
                p.add_scaled(f.rep(), c);
            }
            LocalFunctional::new(&p.normalized())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{grade, principal_triple};
    use crate::sample;

    fn setup(ty: &str) -> Screening {
        let g = SimpleLieAlgebra::build(ty).unwrap();
        let t = principal_triple(&g).unwrap();
        let gr = grade(&g, &t).unwrap();
        Screening::new(&g, &t, &gr, RatFunc::var()).unwrap()
    }

    #[test]
    fn sl2_tables() {
        let s = setup("A1");
        assert_eq!(s.families.len(), 1);
        let g = s.members()[0];
        let h = s.pva.parse("h1").unwrap();
        assert_eq!(s.apply(g, &h).unwrap(), DiffPoly::rational(Q::from_int(2)));
        assert_eq!(s.apply(g, &s.pva.parse("h1[1]").unwrap()).unwrap(), s.pva.parse("-2/k*h1").unwrap());
        assert_eq!(s.apply(g, &h.pow(2)).unwrap(), h.scale_q(&Q::from_int(4)));
        assert!(s.apply(g, &DiffPoly::one()).unwrap().is_zero());
    }

    #[test]
    fn sl2_kernel_dimensions() {
        let s = setup("A1");
        let kb = s.joint_kernel(HalfInt::from_int(4));
        let dims: Vec<usize> = (0..=4).map(|w| kb.dim(HalfInt::from_int(w))).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 2]);
        assert_eq!(kb.basis(HalfInt::from_int(2))[0], s.pva.parse("h1^2 + 2*k*h1[1]").unwrap());
        assert_eq!(kb.generator_weights(), vec![HalfInt::from_int(2)]);
        assert!(check_subalgebra(&kb, &s, HalfInt::from_int(2)).unwrap().is_ok());
    }

    #[test]
    fn sugawara_generates_derivative() {
        let s = setup("A2");
        let l = s.sugawara().unwrap().clone();
        let mut rng = sample::rng(11);
        for _ in 0..10 {
            let p = sample::poly(&mut rng, &s.vars(), HalfInt::from_int(3), 4);
            let dp = s.pva.table.bracket_at_zero(&l, &p).unwrap();
            assert_eq!(dp, p.d());
            for &g in s.members() {
                let lhs = s.apply(g, &dp).unwrap().sub(&s.pva.table.bracket_at_zero(&l, &s.apply(g, &p).unwrap()).unwrap());
                let mut rhs = DiffPoly::zero();
                for (g2, c) in s.commutator_terms(g) {
                    rhs.add_assign(&c.mul(&s.apply(*g2, &p).unwrap()));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn recursion_on_random_elements() {
        let s = setup("A2");
        let mut rng = sample::rng(7);
        for _ in 0..10 {
            let p = sample::poly(&mut rng, &s.vars(), HalfInt::from_int(3), 4);
            for &g in s.members() {
                assert!(s.commutator_defect(g, &p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn kdv_pair_commutes() {
        let s = setup("A1");
        let kb = s.joint_kernel(HalfInt::from_int(6));
        let h = hamiltonians(&kb, &s, &[HalfInt::from_int(2), HalfInt::from_int(4)]).unwrap();
        assert_eq!(h.functionals.len(), 2);
        assert!(h.commuting());
        let six = functional_classes(&kb, HalfInt::from_int(6));
        assert_eq!(six.len(), 2);
        let lower: Vec<LocalFunctional> = h.functionals.iter().map(|(_, f)| f.clone()).collect();
        let c = commuting_subspace(&six, &lower, &s.pva).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn sl3_generators_and_flows() {
        let s = setup("A2");
        let kb = s.joint_kernel(HalfInt::from_int(3));
        assert_eq!(kb.generator_weights(), vec![HalfInt::from_int(2), HalfInt::from_int(3)]);
        assert_eq!(kb.generators(HalfInt::from_int(2)).len(), 1);
        assert_eq!(kb.generators(HalfInt::from_int(3)).len(), 1);
        let h = hamiltonians(&kb, &s, &[HalfInt::from_int(2), HalfInt::from_int(3)]).unwrap();
        assert_eq!(h.functionals.len(), 2);
        assert!(h.commuting());
    }
}
