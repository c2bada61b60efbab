//! sl2-triples: the principal one and block constructions from partitions.

use super::{is_zero_vec, scale_vec, Elem, LieAlgebra, SimpleLieAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;

/// `{e, h, f}` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`; `x = h/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub e: Elem,
    pub h: Elem,
    pub f: Elem,
    pub x: Elem,
    /// Human-readable description, e.g. `principal` or `partition (2,2)`.
    pub kind: String,
}

impl Sl2Triple {
    /// Validates the relations and nilpotency of `f`.
    pub fn new(lie: &LieAlgebra, e: Elem, h: Elem, f: Elem, kind: impl Into<String>) -> Result<Self> {
        let bad = |what: &str| Err(Error::InvalidNilpotent(format!("triple relation fails: {what}")));
        if is_zero_vec(&f) {
            return bad("f = 0");
        }
        if lie.bracket(&e, &f) != h {
            return bad("[e,f] = h");
        }
        if lie.bracket(&h, &e) != scale_vec(&e, &Q::from_int(2)) {
            return bad("[h,e] = 2e");
        }
        if lie.bracket(&h, &f) != scale_vec(&f, &Q::from_int(-2)) {
            return bad("[h,f] = -2f");
        }
        let adf = lie.ad_matrix(&f);
        let mut p = adf.clone();
        for _ in 0..lie.dim() {
            if p.is_zero() {
                break;
            }
            p = p.mul(&adf);
        }
        if !p.is_zero() {
            return bad("ad f nilpotent");
        }
        let x = scale_vec(&h, &Q::one().over(&Q::from_int(2)));
        Ok(Sl2Triple { e, h, f, x, kind: kind.into() })
    }
}

/// Solve for `e` with `[h,e] = 2e` and `[e,f] = h`.
fn complete_triple(lie: &LieAlgebra, h: &Elem, f: &Elem) -> Result<Elem> {
    let n = lie.dim();
    let adh = lie.ad_matrix(h);
    let adf = lie.ad_matrix(f);
    let mut rows = Vec::with_capacity(2 * n);
    let mut rhs = Vec::with_capacity(2 * n);
    for r in 0..n {
        let mut row = adh.row(r).to_vec();
        row[r] = row[r].minus(&Q::from_int(2));
        rows.push(row);
        rhs.push(Q::zero());
    }
    // [e,f] = -[f,e] = -ad_f e
    for r in 0..n {
        rows.push(adf.row(r).iter().map(|v| v.negated()).collect());
        rhs.push(h[r].clone());
    }
    Matrix::from_rows(rows, n)
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidNilpotent("no e completes the triple".into()))
}

/// Principal triple: `f = Σ e_{-α_i}`, `h` the element with `α_i(h) = 2`.
pub fn principal_triple(alg: &SimpleLieAlgebra) -> Result<Sl2Triple> {
    let lie = alg.lie();
    let r = alg.rank();
    let mut f = vec![Q::zero(); lie.dim()];
    for i in 0..r {
        let a = alg
            .negative_simple_root_index(i)
            .ok_or_else(|| Error::InvalidAlgebra("negative simple root vector missing".into()))?;
        f[a] = Q::one();
    }
    let cm = alg.cartan_matrix();
    let at: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| Q::from_int(cm[j][i])).collect())
        .collect();
    let c = Matrix::from_rows(at, r)
        .solve(&vec![Q::from_int(2); r])
        .ok_or_else(|| Error::InvalidAlgebra("singular Cartan matrix".into()))?;
    let mut h = vec![Q::zero(); lie.dim()];
    h[..r].clone_from_slice(&c);
    let e = complete_triple(lie, &h, &f)?;
    Sl2Triple::new(lie, e, h, f, "principal")
}

/// Triple attached to a partition, realized by Jordan blocks in the defining
/// representation. Type A takes any partition of `n+1`; type C takes
/// partitions of `2n` with even parts only.
pub fn partition_triple(alg: &SimpleLieAlgebra, parts: &[usize]) -> Result<Sl2Triple> {
    let ct = alg
        .cartan_type()
        .ok_or_else(|| Error::InvalidNilpotent("partition data needs a built-in type".into()))?;
    let mats = alg
        .matrices()
        .ok_or_else(|| Error::InvalidNilpotent("no matrix realization".into()))?;
    let size = mats[0].nrows();
    let total: usize = parts.iter().sum();
    if parts.contains(&0) || total != size {
        return Err(Error::InvalidNilpotent(format!(
            "partition {parts:?} does not partition {size}"
        )));
    }
    let label = format!(
        "partition ({})",
        parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    );
    let mut f = Matrix::<Q>::zeros(size, size);
    let mut hdiag = vec![Q::zero(); size];
    match ct.series {
        'A' => {
            // (eigenvalue, part, position in chain), largest eigenvalue first
            let mut slots = Vec::new();
            for (b, &p) in parts.iter().enumerate() {
                for j in 0..p {
                    slots.push((p as i64 - 1 - 2 * j as i64, b, j));
                }
            }
            slots.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let pos = |b: usize, j: usize| slots.iter().position(|s| s.1 == b && s.2 == j).unwrap();
            for (i, s) in slots.iter().enumerate() {
                hdiag[i] = Q::from_int(s.0);
            }
            for (b, &p) in parts.iter().enumerate() {
                for j in 0..p - 1 {
                    f.set(pos(b, j + 1), pos(b, j), Q::one());
                }
            }
        }
        'C' => {
            if parts.iter().any(|p| p % 2 == 1) {
                return Err(Error::InvalidNilpotent(format!(
                    "{label}: only even parts are supported for type C"
                )));
            }
            let n = size / 2;
            let mut slots = Vec::new();
            for (b, &p) in parts.iter().enumerate() {
                let m = p / 2;
                for j in 0..m {
                    slots.push((p as i64 - 1 - 2 * j as i64, b, j));
                }
            }
            slots.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let pos = |b: usize, j: usize| slots.iter().position(|s| s.1 == b && s.2 == j).unwrap();
            for (i, s) in slots.iter().enumerate() {
                hdiag[i] = Q::from_int(s.0);
                hdiag[n + i] = Q::from_int(-s.0);
            }
            for (b, &p) in parts.iter().enumerate() {
                let m = p / 2;
                // chain e_{i_1} → … → e_{i_m} → e_{n+i_m} → -e_{n+i_{m-1}} → …
                for j in 0..m - 1 {
                    let (a, c) = (pos(b, j), pos(b, j + 1));
                    f.set(c, a, Q::one());
                    f.set(n + a, n + c, Q::from_int(-1));
                }
                let last = pos(b, m - 1);
                f.set(n + last, last, Q::one());
            }
        }
        other => return Err(Error::UnsupportedType(format!("{other}{}", ct.rank))),
    }
    let mut hm = Matrix::<Q>::zeros(size, size);
    for (i, v) in hdiag.into_iter().enumerate() {
        hm.set(i, i, v);
    }
    let fc = alg
        .coords_of_matrix(&f)
        .ok_or_else(|| Error::InvalidNilpotent(format!("{label}: f outside the algebra")))?;
    let hc = alg
        .coords_of_matrix(&hm)
        .ok_or_else(|| Error::InvalidNilpotent(format!("{label}: h outside the algebra")))?;
    let e = complete_triple(alg.lie(), &hc, &fc)?;
    Sl2Triple::new(alg.lie(), e, hc, fc, label)
}

/// Parse `principal` or a comma-separated partition such as `2,2`.
pub fn triple_from_spec(alg: &SimpleLieAlgebra, spec: &str) -> Result<Sl2Triple> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("principal") {
        return principal_triple(alg);
    }
    let inner = s.trim_start_matches('(').trim_end_matches(')');
    let parts: std::result::Result<Vec<usize>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
    let parts = parts.map_err(|_| Error::InvalidNilpotent(format!("cannot parse nilpotent spec '{spec}'")))?;
    partition_triple(alg, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_sl2() {
        let g = SimpleLieAlgebra::build("A1").unwrap();
        let t = principal_triple(&g).unwrap();
        assert_eq!(t.f, g.lie().basis_vec(2));
        assert_eq!(t.h, g.lie().basis_vec(0));
        assert_eq!(t.e, g.lie().basis_vec(1));
    }

    #[test]
    fn principal_builds_for_all() {
        for ty in ["A2", "A3", "C2", "C3"] {
            let g = SimpleLieAlgebra::build(ty).unwrap();
            principal_triple(&g).unwrap();
        }
    }

    #[test]
    fn partitions() {
        let a2 = SimpleLieAlgebra::build("A2").unwrap();
        partition_triple(&a2, &[2, 1]).unwrap();
        let p = partition_triple(&a2, &[3]).unwrap();
        assert_eq!(p.h, principal_triple(&a2).unwrap().h);
        assert!(partition_triple(&a2, &[1, 1, 1]).is_err());
        let c2 = SimpleLieAlgebra::build("C2").unwrap();
        partition_triple(&c2, &[2, 2]).unwrap();
        partition_triple(&c2, &[4]).unwrap();
        assert!(partition_triple(&c2, &[3, 1]).is_err());
        let c3 = SimpleLieAlgebra::build("C3").unwrap();
        partition_triple(&c3, &[2, 2, 2]).unwrap();
        partition_triple(&c3, &[4, 2]).unwrap();
        partition_triple(&c3, &[6]).unwrap();
    }
}
