//! Exact checks of the loop-group identities at a finite truncation.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{add_elems, add_into, LoopElem, LoopIdx, LoopSetup, VecField};
use crate::diffpoly::{monomials_of_weight, DiffPoly};
use crate::error::{Error, Result};
use crate::field::{Field as _, Q};
use crate::liealg::{check_condition_f, grade, AdxGrading, FReport, SimpleLieAlgebra, Sl2Triple};
use crate::linalg::Matrix;
use crate::ratfunc::RatFunc;
use crate::screening::Screening;
use crate::weight::HalfInt;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub truncation: i64,
    /// Coordinates `z_a` with `deg a` up to this bound are checked.
    pub window: i64,
    pub checked: Vec<String>,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl IdentityReport {
    fn collect(name: &str, truncation: i64, window: i64, results: Vec<(String, Option<String>)>) -> Self {
        let counterexample = results.iter().find_map(|(_, c)| c.clone());
        IdentityReport {
            name: name.to_string(),
            truncation,
            window,
            checked: results.into_iter().map(|(k, _)| k).collect(),
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Main2Report {
    pub condition_f: FReport,
    pub checks: Vec<IdentityReport>,
}

impl Main2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn compare(setup: &LoopSetup, what: &str, lhs: &DiffPoly, rhs: &DiffPoly) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {} != {}", setup.render(lhs), setup.render(rhs)))
}

fn inv_level(setup: &LoopSetup) -> RatFunc {
    setup.level.inverse()
}

fn scale_field(f: &VecField, c: &RatFunc) -> VecField {
    f.iter().map(|(k, p)| (*k, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect()
}

/// Degree of a homogeneous element; `None` for zero.
fn homogeneous_degree(setup: &LoopSetup, v: &LoopElem) -> Result<Option<i64>> {
    let mut degs = v.keys().map(|i| setup.degree(i));
    let Some(d) = degs.next() else { return Ok(None) };
    if degs.any(|e| e != d) {
        return Err(Error::Invalid("element is not homogeneous".into()));
    }
    Ok(Some(d))
}

fn describe(setup: &LoopSetup, x: &LoopElem) -> String {
    let parts: Vec<String> = x
        .iter()
        .map(|(i, c)| {
            let c = LoopSetup::at_origin(c);
            format!("{} {}", crate::field::fmt_q(&c), setup.label(i))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `[u^L, v^R] = [u, (K v K^{-1})_-]_+^L` on every coordinate in the exact
/// window, for a positive `u` and a homogeneous constant `v` of degree ≥ -1.
pub fn verify_lemma_3_1(setup: &LoopSetup, u: &LoopElem, v: &LoopElem) -> Result<IdentityReport> {
    if u.keys().any(|i| setup.degree(i) <= 0) {
        return Err(Error::Invalid("u must lie in the positive part".into()));
    }
    let dv = homogeneous_degree(setup, v)?.unwrap_or(0);
    if dv < -1 {
        return Err(Error::Invalid("v must have degree at least -1".into()));
    }
    let window = setup.n - 0.max(-dv);
    if window < 1 {
        return Err(Error::Invalid("truncation margin exhausted".into()));
    }
    let ul = setup.left_field(u);
    let vr = setup.right_field(v);
    let corr = setup.plus_part(&setup.bracket(u, &setup.minus_part(&setup.adjoint(v))));
    let rhs = setup.left_field(&corr);
    let coords: Vec<usize> = (0..setup.basis.len()).filter(|&a| setup.degree(&setup.basis[a]) <= window).collect();
    let results = coords
        .par_iter()
        .map(|&a| {
            let z = setup.coordinate(a);
            let lhs = super::field_commutator_apply(setup, &ul, &vr, &z);
            let r = rhs.get(&a).cloned().unwrap_or_default();
            let what = format!("u = {}, v = {}, on {}", describe(setup, u), describe(setup, v), setup.coordinate_name(a));
            (setup.coordinate_name(a), compare(setup, &what, &lhs, &r))
        })
        .collect();
    Ok(IdentityReport::collect("left-right commutator", setup.n, window, results))
}

/// Runs the commutator identity for every positive basis `u` and every basis
/// `v` of degree -1..N, and for `v = s`.
pub fn verify_lemma_3_1_all(setup: &LoopSetup) -> Result<IdentityReport> {
    let mut vs: Vec<(String, LoopElem)> = vec![("s".into(), setup.s.clone())];
    for m in -1..=setup.n {
        for i in setup.degree_basis(m) {
            vs.push((setup.label(&i), setup.elem(i)));
        }
    }
    let mut pairs = Vec::new();
    for ui in &setup.basis {
        for (vname, v) in &vs {
            pairs.push((*ui, vname.clone(), v.clone()));
        }
    }
    let reports: Vec<(String, Result<IdentityReport>)> = pairs
        .par_iter()
        .map(|(ui, vname, v)| {
            let key = format!("({}, {})", setup.label(ui), vname);
            (key, verify_lemma_3_1(setup, &setup.elem(*ui), v))
        })
        .collect();
    let mut results = Vec::new();
    let mut window = setup.n;
    for (key, r) in reports {
        let r = r?;
        window = window.min(r.window);
        results.push((key, r.counterexample));
    }
    Ok(IdentityReport::collect("left-right commutator", setup.n, window, results))
}

fn require_f(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading, y: &[Q]) -> Result<FReport> {
    let report = check_condition_f(alg, triple, grading, y)?;
    if !report.holds() {
        return Err(Error::ConditionF(format!(
            "F1 {} F2 {} F3 {}",
            report.f1, report.f2, report.f3
        )));
    }
    Ok(report)
}

fn degree_one(setup: &LoopSetup) -> Vec<(usize, LoopIdx)> {
    setup
        .basis
        .iter()
        .enumerate()
        .filter(|(_, i)| i.power == 0 && setup.degree(i) == 1)
        .map(|(k, i)| (k, *i))
        .collect()
}

/// `u_α^L E_β = (f|[e_β, e_α])` with `u_α = -e_α/k`.
fn check_left_on_e(setup: &LoopSetup, f: &[Q]) -> Result<IdentityReport> {
    let lie = &setup.lie;
    let mut results = Vec::new();
    let minus_inv = inv_level(setup).negated();
    for (ka, ia) in degree_one(setup) {
        let ul = scale_field(&setup.left_basis_field(ka), &minus_inv);
        for &b in setup.g0() {
            let lhs = setup.apply(&ul, &setup.e_coordinate(b)?);
            let br = lie.bracket(&lie.basis_vec(b), &lie.basis_vec(ia.base));
            let rhs = DiffPoly::rational(lie.form(f, &br));
            let key = format!("({}, {})", lie.label(ia.base), lie.label(b));
            let what = format!("u_{} E_{}", lie.label(ia.base), lie.label(b));
            results.push((key, compare(setup, &what, &lhs, &rhs)));
        }
    }
    Ok(IdentityReport::collect("left action on E", setup.n, 1, results))
}

/// `Σ_ρ (1/k) E_ρ̄ [u, e_ρ]` as a loop element with function coefficients.
fn e_correction(setup: &LoopSetup, u: &LoopElem) -> Result<LoopElem> {
    let inv = DiffPoly::constant(inv_level(setup));
    let mut out = LoopElem::new();
    for &r in setup.g0() {
        let er = setup.e_dual(r)?.mul(&inv);
        let br = setup.bracket(u, &setup.elem(LoopIdx { base: r, power: 0 }));
        for (i, c) in br {
            add_into(&mut out, i, &setup.trunc(&c.mul(&er)));
        }
    }
    Ok(out)
}

/// `[u_α^L, s^R] = (1/k) Σ c^γ_{α,ρ} E_ρ̄ u_γ^L` on all coordinates in range.
fn check_left_s_commutator(setup: &LoopSetup) -> Result<IdentityReport> {
    let window = setup.n - 1;
    let minus_inv = inv_level(setup).negated();
    let sr = setup.s_right();
    let mut results = Vec::new();
    for (ka, ia) in degree_one(setup) {
        let ul = scale_field(&setup.left_basis_field(ka), &minus_inv);
        let u = setup.elem(ia);
        // (1/k) Σ E_ρ̄ [e_α, e_ρ], then each e_γ is rewritten through u_γ = -e_γ/k
        let corr = e_correction(setup, &u)?;
        let rhs = scale_field(&setup.left_field(&corr), &minus_inv);
        let found: Vec<(String, Option<String>)> = (0..setup.basis.len())
            .into_par_iter()
            .filter(|&a| setup.degree(&setup.basis[a]) <= window)
            .map(|a| {
                let z = setup.coordinate(a);
                let lhs = super::field_commutator_apply(setup, &ul, sr, &z);
                let r = rhs.get(&a).cloned().unwrap_or_default();
                let key = format!("({}, {})", setup.lie.label(ia.base), setup.coordinate_name(a));
                (key.clone(), compare(setup, &key, &lhs, &r))
            })
            .collect();
        results.extend(found);
    }
    Ok(IdentityReport::collect("left action against s", setup.n, window, results))
}

fn coords_in(x: &LoopElem, basis: &[LoopIdx]) -> Vec<Q> {
    let mut v = vec![Q::zero(); basis.len()];
    for (i, c) in x {
        let r = basis.binary_search(i).expect("homogeneous element");
        v[r] = LoopSetup::at_origin(c);
    }
    v
}

/// `{ad_s^m e_α : α ∈ g_0}` together with `Ker(ad_s)` spans degree `-m`,
/// and the first family is independent.
fn check_cotangent(setup: &LoopSetup) -> IdentityReport {
    let mut results = Vec::new();
    for m in 1..=setup.n {
        let basis = setup.degree_basis(-m);
        let mut images = Vec::new();
        for &a in setup.g0() {
            let mut x = setup.elem(LoopIdx { base: a, power: 0 });
            for _ in 0..m {
                x = setup.bracket(&setup.s, &x);
            }
            images.push(coords_in(&x, &basis));
        }
        let kernel: Vec<Vec<Q>> = setup.kernel_of_ad_s(-m).iter().map(|x| coords_in(x, &basis)).collect();
        let rank_img = Matrix::from_rows(images.clone(), basis.len()).rank();
        let all: Vec<Vec<Q>> = images.into_iter().chain(kernel.iter().cloned()).collect();
        let count = all.len();
        let rank_all = Matrix::from_rows(all, basis.len()).rank();
        let ok = rank_img == setup.g0().len() && rank_all == basis.len() && count == basis.len();
        let msg = (!ok).then(|| {
            format!(
                "degree -{m}: rank of ad_s images {rank_img} (want {}), joint rank {rank_all} of {count} vectors in dimension {}",
                setup.g0().len(),
                basis.len()
            )
        });
        results.push((format!("degree -{m}"), msg));
    }
    IdentityReport::collect("cotangent basis", setup.n, setup.n, results)
}

/// `Ψ(Q_γ p) = u_γ^L Ψ(p)` on all monomials of weight ≤ N.
fn check_intertwining(setup: &LoopSetup, screening: &Screening) -> Result<IdentityReport> {
    let vars = screening.vars();
    let base: HashMap<u32, usize> = vars.iter().zip(&screening.g0).map(|(v, &a)| (v.id, a)).collect();
    if vars.len() != screening.g0.len() {
        return Err(Error::Invalid("the grading has a half-integral part".into()));
    }
    let lookup = |id: u32| base[&id];
    let minus_inv = inv_level(setup).negated();
    let mut monomials = Vec::new();
    for w in 1..=setup.n {
        monomials.extend(monomials_of_weight(&vars, HalfInt::from_int(w)));
    }
    let mut jobs = Vec::new();
    for &g in screening.members() {
        let k = setup
            .index_of(&LoopIdx { base: g, power: 0 })
            .ok_or_else(|| Error::Invalid("screening root outside the truncation".into()))?;
        for m in &monomials {
            jobs.push((g, k, m.clone()));
        }
    }
    let results: Vec<Result<(String, Option<String>)>> = jobs
        .par_iter()
        .map(|(g, k, m)| {
            let p = DiffPoly::term(RatFunc::one(), m.clone());
            let lhs = setup.psi(&screening.apply(*g, &p)?, &lookup)?;
            let ul = scale_field(&setup.left_basis_field(*k), &minus_inv);
            let rhs = setup.apply(&ul, &setup.psi(&p, &lookup)?);
            let key = format!("Q_{} {}", screening.label(*g), screening.pva.render(&p));
            Ok((key.clone(), compare(setup, &key, &lhs, &rhs)))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::collect("screening intertwining", setup.n, setup.n, results))
}

/// `a^R E_β = 0` for `a` in a basis of `Ker(ad_s)` in degrees 1..N.
fn check_right_invariance(setup: &LoopSetup) -> Result<IdentityReport> {
    let mut results = Vec::new();
    let es: Vec<(usize, DiffPoly)> = setup.g0().iter().map(|&b| Ok((b, setup.e_coordinate(b)?))).collect::<Result<_>>()?;
    for m in 1..=setup.n {
        for (j, a) in setup.kernel_of_ad_s(m).iter().enumerate() {
            let ar = setup.right_field(a);
            for (b, e) in &es {
                let v = setup.apply(&ar, e);
                let key = format!("a{m}.{j} E_{}", setup.lie.label(*b));
                let what = format!("{} acting on E_{}", describe(setup, a), setup.lie.label(*b));
                results.push((key, compare(setup, &what, &v, &DiffPoly::zero())));
            }
        }
    }
    Ok(IdentityReport::collect("right invariance of E", setup.n, setup.n, results))
}

/// All checks of the realization `e_α ↦ E_α` at truncation `n`, with `k`
/// symbolic.
pub fn verify_main2(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading, y: &[Q], n: usize) -> Result<Main2Report> {
    let condition_f = require_f(alg, triple, grading, y)?;
    if n < 3 {
        return Err(Error::Invalid("truncation order must be at least 3".into()));
    }
    let setup = LoopSetup::new(alg, triple, grading, y, n, RatFunc::var())?;
    let screening = Screening::new(alg, triple, grading, RatFunc::var())?;
    let checks = vec![
        check_left_on_e(&setup, &triple.f)?,
        check_left_s_commutator(&setup)?,
        check_cotangent(&setup),
        check_intertwining(&setup, &screening)?,
        check_right_invariance(&setup)?,
    ];
    Ok(Main2Report { condition_f, checks })
}

/// The formula for `[s^R, e_β^L]` in terms of left fields, checked on every
/// coordinate in range, together with the shape of `(K s K^{-1})_-`.
pub fn verify_lemma_4_2(alg: &SimpleLieAlgebra, triple: &Sl2Triple, y: &[Q], n: usize) -> Result<IdentityReport> {
    let grading = grade(alg, triple)?;
    require_f(alg, triple, &grading, y)?;
    let setup = LoopSetup::new(alg, triple, &grading, y, n, RatFunc::var())?;
    let lie = &setup.lie;
    let inv = DiffPoly::constant(inv_level(&setup));
    let mut results = Vec::new();

    // (K s K^{-1})_- = s + (1/k) Σ E_γ̄ e_γ
    let minus = setup.minus_part(&setup.adjoint(&setup.s));
    let mut expected = setup.s.clone();
    for &g in setup.g0() {
        let c = setup.e_dual(g)?.mul(&inv);
        add_into(&mut expected, LoopIdx { base: g, power: 0 }, &c);
    }
    let shape = (minus != expected).then(|| "negative part of K s K^-1".to_string());
    results.push(("K s K^-1".to_string(), shape));

    let e_dual: Vec<(usize, DiffPoly)> = setup.g0().iter().map(|&g| Ok((g, setup.e_dual(g)?.mul(&inv)))).collect::<Result<_>>()?;
    let sr = setup.s_right();
    let window = setup.n - 1;
    let found: Vec<(String, Option<String>)> = (0..setup.basis.len())
        .into_par_iter()
        .flat_map_iter(|kb| {
            let beta = setup.basis[kb];
            let el = setup.left_basis_field(kb);
            // R_{αβ} as a loop element Σ_α R_{αβ} e_α
            let mut r = LoopElem::new();
            for (g, eg) in &e_dual {
                for (a, c) in lie.bracket_basis(beta.base, *g) {
                    add_into(&mut r, LoopIdx { base: *a, power: beta.power }, &eg.scale_q(c));
                }
            }
            let bs = setup.bracket(&setup.elem(beta), &setup.s);
            r = add_elems(&r, &bs);
            let r = setup.plus_part(&r);
            let rhs = setup.left_field(&r);
            let coords: Vec<usize> = (0..setup.basis.len()).filter(|&b| setup.degree(&setup.basis[b]) <= window).collect();
            coords
                .into_iter()
                .map(|b| {
                    let z = setup.coordinate(b);
                    let lhs = super::field_commutator_apply(&setup, sr, &el, &z);
                    let want = rhs.get(&b).cloned().unwrap_or_default().neg();
                    let key = format!("({}, {})", setup.label(&beta), setup.coordinate_name(b));
                    (key.clone(), compare(&setup, &key, &lhs, &want))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    results.extend(found);
    Ok(IdentityReport::collect("s against left fields", setup.n, window, results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_y, principal_triple};

    fn data(ty: &str) -> (SimpleLieAlgebra, Sl2Triple, AdxGrading, Vec<Q>) {
        let g = SimpleLieAlgebra::build(ty).unwrap();
        let t = principal_triple(&g).unwrap();
        let gr = grade(&g, &t).unwrap();
        let y = default_y(&g, &t, &gr).unwrap();
        (g, t, gr, y)
    }

    #[test]
    fn commutator_identity_sl2() {
        let (g, t, gr, y) = data("A1");
        let setup = LoopSetup::new(&g, &t, &gr, &y, 4, RatFunc::var()).unwrap();
        let r = verify_lemma_3_1_all(&setup).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert_eq!(r.window, 3);
    }

    #[test]
    fn commutator_identity_zero_v() {
        let (g, t, gr, y) = data("A1");
        let setup = LoopSetup::new(&g, &t, &gr, &y, 4, RatFunc::var()).unwrap();
        let u = setup.elem(setup.basis[0]);
        let r = verify_lemma_3_1(&setup, &u, &LoopElem::new()).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn main2_sl2() {
        let (g, t, gr, y) = data("A1");
        let r = verify_main2(&g, &t, &gr, &y, 4).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn s_commutator_sl2() {
        let (g, t, _, y) = data("A1");
        let r = verify_lemma_4_2(&g, &t, &y, 4).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
    }

    #[test]
    fn main2_rejects_zero_y() {
        let (g, t, gr, _) = data("A1");
        let y = vec![Q::zero(); g.dim()];
        assert!(matches!(verify_main2(&g, &t, &gr, &y, 4), Err(Error::ConditionF(_))));
    }
}
