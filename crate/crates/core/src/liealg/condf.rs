//! Condition (F) for `s = f + y t^{-1}` in the loop algebra.

use serde::Serialize;

use super::{is_zero_vec, scale_vec, AdxGrading, Elem, LieAlgebra, SimpleLieAlgebra, Sl2Triple};
use crate::error::{Error, Result};
use crate::field::{fmt_q, parse_q, Field, Q};
use crate::linalg::Matrix;
use crate::ratfunc::RatFunc;
use crate::upoly::UniPoly;
use crate::weight::HalfInt;

/// Outcome of the three checks, with enough data to see why one failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FReport {
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub f3_abelian: bool,
    pub f3_image: bool,
    pub minimal_polynomial: String,
    pub kernel_dim: usize,
    pub image_rank: usize,
    pub dim_g0: usize,
    pub witness: Option<String>,
}

impl FReport {
    pub fn holds(&self) -> bool {
        self.f1 && self.f2 && self.f3
    }
}

/// `ad_s` as a matrix over Q(t): `ad_f + t^{-1} ad_y`.
pub fn loop_matrix(lie: &LieAlgebra, f: &[Q], y: &[Q]) -> Matrix<RatFunc> {
    let af = lie.ad_matrix(f);
    let ay = lie.ad_matrix(y);
    let n = lie.dim();
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = RatFunc::from_rational(af.get(r, c).clone())
                .plus(&RatFunc::laurent(ay.get(r, c).clone(), -1));
            m.set(r, c, v);
        }
    }
    m
}

/// Minimal polynomial as the lcm of the minimal polynomials of the
/// standard basis vectors (Krylov sequences).
pub fn minimal_polynomial(m: &Matrix<RatFunc>) -> UniPoly<RatFunc> {
    let n = m.nrows();
    let mut mu = UniPoly::one();
    for i in 0..n {
        let mut v = vec![RatFunc::zero(); n];
        v[i] = RatFunc::one();
        let mut seq = vec![v];
        loop {
            let next = m.mul_vec(seq.last().unwrap());
            // columns of seq, solve for next
            let k = seq.len();
            let rows: Vec<Vec<RatFunc>> = (0..n).map(|r| seq.iter().map(|s| s[r].clone()).collect()).collect();
            if let Some(c) = Matrix::from_rows(rows, k).solve(&next) {
                let mut coeffs: Vec<RatFunc> = c.iter().map(|x| x.negated()).collect();
                coeffs.push(RatFunc::one());
                mu = mu.lcm(&UniPoly::from_coeffs(coeffs));
                break;
            }
            seq.push(next);
        }
    }
    mu
}

/// Render a polynomial in `x` with coefficients in Q(t).
pub fn render_minpoly(p: &UniPoly<RatFunc>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = &p.coeffs()[i];
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let text = c.render("t");
        let coeff = if c.is_compound() { format!("({text})") } else { text };
        parts.push(match (c.is_one(), i) {
            (true, 0) | (false, 0) => coeff,
            (true, _) => mono,
            (false, _) => format!("{coeff}*{mono}"),
        });
    }
    parts.join(" + ")
}

fn bracket_rf(lie: &LieAlgebra, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); lie.dim()];
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            let c = xa.times(yb);
            for (k, v) in lie.bracket_basis(a, b) {
                out[*k] = out[*k].plus(&c.times(&RatFunc::from_rational(v.clone())));
            }
        }
    }
    out
}

/// Check (F1)-(F3) for the given `y ∈ g_d`.
pub fn check_condition_f(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading, y: &[Q]) -> Result<FReport> {
    let lie = alg.lie();
    let d = grading.depth;
    if let Some(a) = (0..lie.dim()).find(|&a| !y[a].is_zero() && grading.degree(a) != d) {
        return Err(Error::InvalidY(format!("{} has degree {}, not {}", lie.label(a), grading.degree(a), d)));
    }
    let f1 = grading.integral;
    let m = loop_matrix(lie, &triple.f, y);
    let mu = minimal_polynomial(&m);
    let f2 = mu.is_squarefree();
    let mut witness = None;
    if !f2 {
        witness = Some(format!("minimal polynomial has a repeated factor: {}", render_minpoly(&mu)));
    }

    let kernel = m.nullspace();
    let mut f3_abelian = true;
    'outer: for (i, a) in kernel.iter().enumerate() {
        for b in &kernel[i + 1..] {
            let c = bracket_rf(lie, a, b);
            if c.iter().any(|x| !x.is_zero()) {
                f3_abelian = false;
                if witness.is_none() {
                    witness = Some("Ker(ad s) contains a non-commuting pair".into());
                }
                break 'outer;
            }
        }
    }

    // ad_s maps ĝ_1 = g_1 ⊕ g_{-d} t onto ĝ_0 = g_0 in extended degree zero.
    let g0 = grading.piece(HalfInt::ZERO);
    let mut columns = Vec::new();
    for &a in grading.piece(HalfInt::ONE) {
        columns.push(lie.bracket(&triple.f, &lie.basis_vec(a)));
    }
    for &b in grading.piece(-d) {
        columns.push(lie.bracket(y, &lie.basis_vec(b)));
    }
    let rows: Vec<Vec<Q>> = columns
        .iter()
        .map(|v| g0.iter().map(|&a| v[a].clone()).collect())
        .collect();
    let image_rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows, g0.len()).rank() };
    let f3_image = image_rank == g0.len();
    if !f3_image && witness.is_none() {
        witness = Some(format!("Im(ad s) in degree 0 has rank {image_rank} < {}", g0.len()));
    }
    let f3 = f3_abelian && f3_image;
    if !f1 && witness.is_none() {
        witness = Some("ad x grading has half-integer degrees".into());
    }
    Ok(FReport {
        f1,
        f2,
        f3,
        f3_abelian,
        f3_image,
        minimal_polynomial: render_minpoly(&mu),
        kernel_dim: kernel.len(),
        image_rank,
        dim_g0: g0.len(),
        witness,
    })
}

/// Parse `label=coef,label=coef` (or `0`) into an algebra element.
pub fn parse_y(lie: &LieAlgebra, text: &str) -> Result<Elem> {
    let mut y = vec![Q::zero(); lie.dim()];
    let text = text.trim();
    if text == "0" || text.is_empty() {
        return Ok(y);
    }
    for item in text.split(',') {
        let (label, coef) = match item.split_once('=') {
            Some((l, c)) => (l.trim(), parse_q(c.trim()).ok_or_else(|| Error::Parse(format!("bad coefficient in '{item}'")))?),
            None => (item.trim(), Q::one()),
        };
        let a = lie
            .index_of(label)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))?;
        y[a] = y[a].plus(&coef);
    }
    Ok(y)
}

/// Render an element as `label=coef,...`.
pub fn render_elem(lie: &LieAlgebra, v: &[Q]) -> String {
    if is_zero_vec(v) {
        return "0".into();
    }
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| format!("{}={}", lie.label(a), fmt_q(c)))
        .collect::<Vec<_>>()
        .join(",")
}

/// Default choice of `y`: `e_θ` for the principal triple; otherwise the first
/// small integer combination of a basis of `g_d` passing (F).
pub fn default_y(alg: &SimpleLieAlgebra, triple: &Sl2Triple, grading: &AdxGrading) -> Result<Elem> {
    let lie = alg.lie();
    if triple.kind == "principal" {
        return Ok(lie.basis_vec(alg.highest_root_index()));
    }
    let top = grading.piece(grading.depth).to_vec();
    let coefs = [Q::one(), Q::from_int(2), Q::from_int(-1)];
    let mut candidates: Vec<Elem> = top.iter().map(|&a| lie.basis_vec(a)).collect();
    for (i, &a) in top.iter().enumerate() {
        for &b in &top[i + 1..] {
            for c1 in &coefs[..2] {
                for c2 in &coefs {
                    let v = scale_vec(&lie.basis_vec(a), c1);
                    candidates.push(super::add_vec(&v, &scale_vec(&lie.basis_vec(b), c2)));
                }
            }
        }
    }
    for coeffs in [[1, 1, 1], [1, 2, 3], [1, -1, 2]] {
        if top.len() >= 3 {
            let mut v = vec![Q::zero(); lie.dim()];
            for (k, &a) in top.iter().enumerate() {
                v[a] = Q::from_int(coeffs[k % 3] + (k / 3) as i64);
            }
            candidates.push(v);
        }
    }
    for y in candidates {
        if check_condition_f(alg, triple, grading, &y)?.holds() {
            return Ok(y);
        }
    }
    Err(Error::ConditionF("no small combination of g_d satisfies (F); supply y".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{grade, partition_triple, principal_triple};

    fn principal(ty: &str) -> (SimpleLieAlgebra, Sl2Triple, AdxGrading) {
        let g = SimpleLieAlgebra::build(ty).unwrap();
        let t = principal_triple(&g).unwrap();
        let gr = grade(&g, &t).unwrap();
        (g, t, gr)
    }

    #[test]
    fn sl2_minimal_polynomial() {
        let (g, t, _) = principal("A1");
        let y = g.lie().basis_vec(1);
        let mu = minimal_polynomial(&loop_matrix(g.lie(), &t.f, &y));
        // x (x^2 - 4/t)
        let expect = UniPoly::from_coeffs(vec![
            RatFunc::zero(),
            RatFunc::laurent(Q::from_int(-4), -1),
            RatFunc::zero(),
            RatFunc::one(),
        ]);
        assert_eq!(mu, expect);
    }

    #[test]
    fn principal_cases_pass() {
        for ty in ["A1", "A2", "A3", "C2"] {
            let (g, t, gr) = principal(ty);
            let y = default_y(&g, &t, &gr).unwrap();
            let r = check_condition_f(&g, &t, &gr, &y).unwrap();
            assert!(r.holds(), "{ty}: {r:?}");
            assert_eq!(r.kernel_dim, g.rank());
        }
    }

    #[test]
    fn y_zero_fails_f2() {
        let (g, t, gr) = principal("A1");
        let r = check_condition_f(&g, &t, &gr, &vec![Q::zero(); 3]).unwrap();
        assert!(r.f1);
        assert!(!r.f2);
        assert!(!r.holds());
    }

    #[test]
    fn y_outside_top_degree_rejected() {
        let (g, t, gr) = principal("A2");
        let y = g.lie().basis_vec(g.simple_root_index(0).unwrap());
        assert!(matches!(check_condition_f(&g, &t, &gr, &y), Err(Error::InvalidY(_))));
    }

    #[test]
    fn sp4_rectangular() {
        let g = SimpleLieAlgebra::build("C2").unwrap();
        let t = partition_triple(&g, &[2, 2]).unwrap();
        let gr = grade(&g, &t).unwrap();
        let y = parse_y(g.lie(), "e21=1,e01=2").unwrap();
        let r = check_condition_f(&g, &t, &gr, &y).unwrap();
        assert!(r.holds(), "{r:?}");
        let bad = parse_y(g.lie(), "e21=1,e01=1").unwrap();
        assert!(!check_condition_f(&g, &t, &gr, &bad).unwrap().f3);
        assert!(default_y(&g, &t, &gr).is_ok());
    }

    #[test]
    fn rescaling_y_keeps_report() {
        let (g, t, gr) = principal("A2");
        let y = default_y(&g, &t, &gr).unwrap();
        let base = check_condition_f(&g, &t, &gr, &y).unwrap();
        for c in [-3, 2, 7] {
            let r = check_condition_f(&g, &t, &gr, &scale_vec(&y, &Q::from_int(c))).unwrap();
            assert_eq!((r.f1, r.f2, r.f3), (base.f1, base.f2, base.f3));
        }
    }
}
