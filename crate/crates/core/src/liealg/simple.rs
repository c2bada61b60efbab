//! Simple Lie algebras of types A and C from their matrix realizations.

use std::fmt;

use super::{sparse_of, Elem, LieAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;

/// Cartan type and rank, e.g. `A2`, `C3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CartanType {
    pub series: char,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        let alias = |prefix: &str, series: char, f: fn(usize) -> Option<usize>| {
            lower
                .strip_prefix(prefix)
                .and_then(|n| n.parse::<usize>().ok())
                .and_then(f)
                .map(|rank| CartanType { series, rank })
        };
        if let Some(ct) = alias("sl", 'A', |n| n.checked_sub(1)).or_else(|| alias("sp", 'C', |n| (n % 2 == 0).then_some(n / 2))) {
            return Ok(ct);
        }
        let mut chars = s.chars();
        let series = chars
            .next()
            .ok_or_else(|| Error::UnsupportedType(s.into()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::UnsupportedType(s.into()))?;
        Ok(CartanType { series, rank })
    }
}

/// A simple Lie algebra with Chevalley-type basis: simple coroots `h_i`,
/// then positive root vectors, then negative root vectors normalized by
/// `(e_α | e_{-α}) = 1`. The form is normalized so long roots have
/// square length 2.
#[derive(Clone, Debug)]
pub struct SimpleLieAlgebra {
    lie: LieAlgebra,
    cartan_type: Option<CartanType>,
    rank: usize,
    roots: Vec<Option<Vec<i64>>>,
    cartan_matrix: Vec<Vec<i64>>,
    matrices: Option<Vec<Matrix<Q>>>,
}

fn unit(n: usize, i: usize, j: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Q::one());
    m
}

fn madd(a: &Matrix<Q>, b: &Matrix<Q>, s: &Q) -> Matrix<Q> {
    let mut out = a.clone();
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            out.set(r, c, a.get(r, c).plus(&b.get(r, c).times(s)));
        }
    }
    out
}

fn commutator(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    madd(&a.mul(b), &b.mul(a), &Q::from_int(-1))
}

fn trace_prod(a: &Matrix<Q>, b: &Matrix<Q>) -> Q {
    let mut acc = Q::zero();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let (x, y) = (a.get(i, j), b.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                acc = acc.plus(&x.times(y));
            }
        }
    }
    acc
}

fn root_label(prefix: char, r: &[i64]) -> String {
    let mut s = String::from(prefix);
    for c in r {
        s.push_str(&c.abs().to_string());
    }
    s
}

impl SimpleLieAlgebra {
    /// Built-in constructor for `A_n` (n ≥ 1) and `C_n` (n ≥ 2).
    pub fn build(type_label: &str) -> Result<Self> {
        let ct: CartanType = type_label.parse()?;
        match (ct.series, ct.rank) {
            ('A', n) if n >= 1 => Ok(Self::type_a(n)),
            ('C', n) if n >= 2 => Ok(Self::type_c(n)),
            _ => Err(Error::UnsupportedType(type_label.into())),
        }
    }

    fn type_a(n: usize) -> Self {
        let size = n + 1;
        let mut pos = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                let mut r = vec![0i64; n];
                for x in r.iter_mut().take(j).skip(i) {
                    *x = 1;
                }
                pos.push((r, unit(size, i, j), unit(size, j, i)));
            }
        }
        Self::from_matrices(CartanType { series: 'A', rank: n }, size, pos)
    }

    fn type_c(n: usize) -> Self {
        let size = 2 * n;
        // coordinates of ε_i in the simple-root basis are not integral; build
        // roots as sums instead: ε_i - ε_j = α_i + ... + α_{j-1}.
        let seg = |i: usize, j: usize| -> Vec<i64> {
            let mut r = vec![0i64; n];
            for x in r.iter_mut().take(j).skip(i) {
                *x = 1;
            }
            r
        };
        let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let mut alpha_n = vec![0i64; n];
        alpha_n[n - 1] = 1;
        // 2ε_i = 2(α_i + ... + α_{n-1}) + α_n
        let two_eps = |i: usize| add(&add(&seg(i, n - 1), &seg(i, n - 1)), &alpha_n);
        let one = Q::one();
        let mut pos = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = madd(&unit(size, i, j), &unit(size, n + j, n + i), &-one.clone());
                let f = madd(&unit(size, j, i), &unit(size, n + i, n + j), &-one.clone());
                pos.push((seg(i, j), e, f));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                // ε_i + ε_j = (ε_i - ε_j) + 2ε_j
                let r = add(&seg(i, j), &two_eps(j));
                let e = madd(&unit(size, i, n + j), &unit(size, j, n + i), &one);
                let f = madd(&unit(size, n + j, i), &unit(size, n + i, j), &one);
                pos.push((r, e, f));
            }
        }
        for i in 0..n {
            pos.push((two_eps(i), unit(size, i, n + i), unit(size, n + i, i)));
        }
        Self::from_matrices(CartanType { series: 'C', rank: n }, size, pos)
    }

    /// Assemble from positive roots (simple-root coordinates) with matrix
    /// root vectors `e_α`, `e_{-α}`.
    fn from_matrices(ct: CartanType, size: usize, mut pos: Vec<(Vec<i64>, Matrix<Q>, Matrix<Q>)>) -> Self {
        let r = ct.rank;
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let simple_idx: Vec<usize> = (0..r)
            .map(|i| {
                pos.iter()
                    .position(|(root, _, _)| root.iter().enumerate().all(|(j, c)| *c == (i == j) as i64))
                    .expect("simple root missing")
            })
            .collect();
        // coroots h_i = [e_i, f_i] scaled so that α_i(h_i) = 2
        let mut cartan = Vec::new();
        for &s in &simple_idx {
            let (_, e, f) = &pos[s];
            let h = commutator(e, f);
            let he = commutator(&h, e);
            let ratio = (0..size * size)
                .find_map(|k| {
                    let (i, j) = (k / size, k % size);
                    (!e.get(i, j).is_zero()).then(|| he.get(i, j).over(e.get(i, j)))
                })
                .unwrap();
            cartan.push(h.map(|x| x.times(&Q::from_int(2).over(&ratio))));
        }
        let theta = pos.last().unwrap();
        let h_theta = commutator(&theta.1, &theta.2);
        let he = commutator(&h_theta, &theta.1);
        let ratio = (0..size * size)
            .find_map(|k| {
                let (i, j) = (k / size, k % size);
                (!theta.1.get(i, j).is_zero()).then(|| he.get(i, j).over(theta.1.get(i, j)))
            })
            .unwrap();
        let h_theta = h_theta.map(|x| x.times(&Q::from_int(2).over(&ratio)));
        let norm = Q::from_int(2).over(&trace_prod(&h_theta, &h_theta));
        let form_of = |a: &Matrix<Q>, b: &Matrix<Q>| trace_prod(a, b).times(&norm);

        let mut mats: Vec<Matrix<Q>> = cartan.clone();
        let mut labels: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        let mut roots: Vec<Option<Vec<i64>>> = vec![None; r];
        for (root, e, _) in &pos {
            mats.push(e.clone());
            labels.push(root_label('e', root));
            roots.push(Some(root.clone()));
        }
        for (root, e, f) in &pos {
            let c = form_of(e, f);
            mats.push(f.map(|x| x.over(&c)));
            labels.push(root_label('f', root));
            roots.push(Some(root.iter().map(|x| -x).collect()));
        }
        let n = mats.len();
        let gram: Vec<Vec<Q>> = (0..n)
            .map(|a| (0..n).map(|b| form_of(&mats[a], &mats[b])).collect())
            .collect();
        let ginv = Matrix::from_rows(gram.clone(), n).inverse().expect("nondegenerate");
        let coords = |x: &Matrix<Q>| -> Elem {
            let t: Vec<Q> = mats.iter().map(|b| form_of(x, b)).collect();
            ginv.mul_vec(&t)
        };
        let mut brackets = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                brackets[a][b] = sparse_of(&coords(&commutator(&mats[a], &mats[b])));
            }
        }
        let cartan_matrix: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let he = commutator(&cartan[i], &pos[simple_idx[j]].1);
                        let c = coords(&he);
                        let v = &c[r + simple_idx[j]];
                        v.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect();
        let lie = LieAlgebra::new(labels, brackets, gram).expect("valid built-in algebra");
        SimpleLieAlgebra {
            lie,
            cartan_type: Some(ct),
            rank: r,
            roots,
            cartan_matrix,
            matrices: Some(mats),
        }
    }

    /// Assemble from general data (used by JSON import).
    pub fn from_parts(
        lie: LieAlgebra,
        rank: usize,
        roots: Vec<Option<Vec<i64>>>,
        cartan_type: Option<CartanType>,
    ) -> Result<Self> {
        if roots.len() != lie.dim() {
            return Err(Error::InvalidAlgebra("root list length mismatch".into()));
        }
        lie.validate()?;
        let cartan: Vec<usize> = (0..lie.dim()).filter(|&a| roots[a].is_none()).collect();
        if cartan.len() != rank {
            return Err(Error::InvalidAlgebra("number of Cartan elements differs from rank".into()));
        }
        let mut s = SimpleLieAlgebra {
            lie,
            cartan_type,
            rank,
            roots,
            cartan_matrix: Vec::new(),
            matrices: None,
        };
        if cartan != (0..rank).collect::<Vec<_>>() {
            return Err(Error::InvalidAlgebra("Cartan elements must come first".into()));
        }
        let mut cm = vec![vec![0i64; rank]; rank];
        for j in 0..rank {
            let e = s
                .simple_root_index(j)
                .ok_or_else(|| Error::InvalidAlgebra("simple root vector missing".into()))?;
            for (i, line) in cm.iter_mut().enumerate() {
                let v = s.lie.c(i, e, e);
                if !v.is_integer() {
                    return Err(Error::InvalidAlgebra("Cartan elements are not coroots".into()));
                }
                line[j] = v.to_integer().try_into().unwrap();
            }
        }
        s.cartan_matrix = cm;
        for a in 0..s.lie.dim() {
            if let Some(r) = &s.roots[a] {
                for i in 0..rank {
                    let expect: i64 = (0..rank).map(|j| r[j] * s.cartan_matrix[i][j]).sum();
                    let ha = s.lie.bracket(&s.lie.basis_vec(i), &s.lie.basis_vec(a));
                    if ha != super::scale_vec(&s.lie.basis_vec(a), &Q::from_int(expect)) {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} is not a root vector for its root",
                            s.lie.label(a)
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    pub fn cartan_matrix(&self) -> &Vec<Vec<i64>> {
        &self.cartan_matrix
    }

    /// Root of a basis vector (`None` for Cartan elements).
    pub fn root(&self, a: usize) -> Option<&Vec<i64>> {
        self.roots[a].as_ref()
    }

    pub fn roots(&self) -> &[Option<Vec<i64>>] {
        &self.roots
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        self.roots[a].is_none()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_deref() == Some(root))
    }

    pub fn simple_root_index(&self, i: usize) -> Option<usize> {
        let mut r = vec![0i64; self.rank];
        r[i] = 1;
        self.root_index(&r)
    }

    pub fn negative_simple_root_index(&self, i: usize) -> Option<usize> {
        let mut r = vec![0i64; self.rank];
        r[i] = -1;
        self.root_index(&r)
    }

    pub fn is_positive(&self, a: usize) -> bool {
        self.roots[a]
            .as_ref()
            .is_some_and(|r| r.iter().all(|&c| c >= 0))
    }

    /// Basis index of the highest root vector `e_θ`.
    pub fn highest_root_index(&self) -> usize {
        (0..self.dim())
            .filter(|&a| self.is_positive(a))
            .max_by_key(|&a| self.roots[a].as_ref().unwrap().iter().sum::<i64>())
            .unwrap()
    }

    pub fn matrices(&self) -> Option<&Vec<Matrix<Q>>> {
        self.matrices.as_ref()
    }

    /// Coordinates of a matrix in the basis, if it lies in the algebra.
    pub fn coords_of_matrix(&self, m: &Matrix<Q>) -> Option<Elem> {
        let mats = self.matrices.as_ref()?;
        let n = self.dim();
        let g = Matrix::from_rows(self.lie.form_matrix().clone(), n);
        let ginv = g.inverse()?;
        // the stored form is a fixed multiple of the trace form
        let norm = self.lie.form_basis(0, 0).over(&trace_prod(&mats[0], &mats[0]));
        let t: Vec<Q> = mats.iter().map(|b| trace_prod(m, b).times(&norm)).collect();
        let c = ginv.mul_vec(&t);
        let mut back = Matrix::zeros(m.nrows(), m.ncols());
        for (a, x) in c.iter().enumerate() {
            if !x.is_zero() {
                back = madd(&back, &mats[a], x);
            }
        }
        (back == *m).then_some(c)
    }
}
