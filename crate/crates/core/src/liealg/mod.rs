//! Finite-dimensional Lie algebras with exact structure constants.

mod condf;
mod grading;
mod json;
mod simple;
mod triple;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;

pub use condf::{check_condition_f, default_y, loop_matrix, minimal_polynomial, parse_y, render_elem, render_minpoly, FReport};
pub use grading::{grade, AdxGrading};
pub use json::LieAlgebraData;
pub use simple::{CartanType, SimpleLieAlgebra};

pub use triple::{partition_triple, principal_triple, triple_from_spec, Sl2Triple};

/// Dense coordinate vector of an element.
pub type Elem = Vec<Q>;

/// Sparse coordinate vector.
pub type Sparse = Vec<(usize, Q)>;

/// A Lie algebra with a fixed basis, structure constants and an invariant
/// symmetric form.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    brackets: Vec<Vec<Sparse>>,
    form: Vec<Vec<Q>>,
    dual: Vec<Sparse>,
}

pub(crate) fn sparse_of(v: &[Q]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub(crate) fn dense_of(v: &Sparse, n: usize) -> Elem {
    let mut out = vec![Q::zero(); n];
    for (i, c) in v {
        out[*i] = out[*i].plus(c);
    }
    out
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Field::is_zero)
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Elem {
    a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
}

pub fn scale_vec(a: &[Q], c: &Q) -> Elem {
    a.iter().map(|x| x.times(c)).collect()
}

impl LieAlgebra {
    /// Build from labels, a bracket function on basis pairs and a form
    /// matrix. Validates antisymmetry and nondegeneracy; Jacobi and
    /// invariance are checked separately.
    pub fn new(labels: Vec<String>, brackets: Vec<Vec<Sparse>>, form: Vec<Vec<Q>>) -> Result<Self> {
        let n = labels.len();
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra("bracket table has wrong shape".into()));
        }
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAlgebra("form has wrong shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = dense_of(&brackets[a][b], n);
                let ba = dense_of(&brackets[b][a], n);
                if !is_zero_vec(&add_vec(&ab, &ba)) {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket not antisymmetric on ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                if form[a][b] != form[b][a] {
                    return Err(Error::InvalidAlgebra("form not symmetric".into()));
                }
            }
        }
        let g = Matrix::from_rows(form.clone(), n);
        let inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidAlgebra("form is degenerate".into()))?;
        let dual = (0..n).map(|a| sparse_of(&inv.column(a))).collect();
        let brackets = brackets
            .into_iter()
            .map(|row| row.into_iter().map(|v| sparse_of(&dense_of(&v, n))).collect())
            .collect();
        Ok(LieAlgebra {
            labels,
            brackets,
            form,
            dual,
        })
    }

    /// One-dimensional abelian algebra with `(u|u) = 1`.
    pub fn gl1(label: &str) -> Self {
        LieAlgebra::new(vec![label.into()], vec![vec![Vec::new()]], vec![vec![Q::one()]]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[e_a, e_b]` in sparse coordinates.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &Sparse {
        &self.brackets[a][b]
    }

    /// Structure constant `c_{a,b}^c`.
    pub fn c(&self, a: usize, b: usize, c: usize) -> Q {
        self.brackets[a][b]
            .iter()
            .find(|(i, _)| *i == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn form_basis(&self, a: usize, b: usize) -> &Q {
        &self.form[a][b]
    }

    pub fn form_matrix(&self) -> &Vec<Vec<Q>> {
        &self.form
    }

    /// Coordinates of the dual basis vector `e_{ā}`.
    pub fn dual(&self, a: usize) -> &Sparse {
        &self.dual[a]
    }

    pub fn basis_vec(&self, a: usize) -> Elem {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Elem {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa.times(yb);
                for (c, v) in &self.brackets[a][b] {
                    out[*c] = out[*c].plus(&s.times(v));
                }
            }
        }
        out
    }

    pub fn form(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() && !self.form[a][b].is_zero() {
                    acc = acc.plus(&xa.times(yb).times(&self.form[a][b]));
                }
            }
        }
        acc
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix<Q> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            let col = self.bracket(x, &self.basis_vec(b));
            for (a, v) in col.into_iter().enumerate() {
                m.set(a, b, v);
            }
        }
        m
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_violation(&self, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        for (a, b, c) in triples {
            let (ea, eb, ec) = (self.basis_vec(a), self.basis_vec(b), self.basis_vec(c));
            let t1 = self.bracket(&ea, &self.bracket(&eb, &ec));
            let t2 = self.bracket(&eb, &self.bracket(&ec, &ea));
            let t3 = self.bracket(&ec, &self.bracket(&ea, &eb));
            if !is_zero_vec(&add_vec(&add_vec(&t1, &t2), &t3)) {
                return Some((a, b, c));
            }
        }
        None
    }

    pub fn all_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// First basis triple violating `([a,b]|c) = (a|[b,c])`.
    pub fn invariance_violation(&self) -> Option<(usize, usize, usize)> {
        self.all_triples().into_iter().find(|&(a, b, c)| {
            let (ea, eb, ec) = (self.basis_vec(a), self.basis_vec(b), self.basis_vec(c));
            self.form(&self.bracket(&ea, &eb), &ec) != self.form(&ea, &self.bracket(&eb, &ec))
        })
    }

    /// Validate Jacobi and invariance on all basis triples.
    pub fn validate(&self) -> Result<()> {
        if let Some((a, b, c)) = self.jacobi_violation(self.all_triples()) {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi fails on ({}, {}, {})",
                self.labels[a], self.labels[b], self.labels[c]
            )));
        }
        if let Some((a, b, c)) = self.invariance_violation() {
            return Err(Error::InvalidAlgebra(format!(
                "form not invariant on ({}, {}, {})",
                self.labels[a], self.labels[b], self.labels[c]
            )));
        }
        Ok(())
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Elem> {
        let n = self.dim();
        // rows: for each basis b and output coordinate c, Σ_a x_a c_{a,b}^c
        let mut rows = Vec::new();
        for b in 0..n {
            for c in 0..n {
                rows.push((0..n).map(|a| self.c(a, b, c)).collect());
            }
        }
        Matrix::from_rows(rows, n).nullspace()
    }

    /// Restriction to the span of the given basis vectors, which must be
    /// closed under the bracket.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<LieAlgebra> {
        let pos = |i: usize| indices.iter().position(|&j| j == i);
        let mut brackets = Vec::new();
        for &a in indices {
            let mut row = Vec::new();
            for &b in indices {
                let mut v = Vec::new();
                for (c, val) in &self.brackets[a][b] {
                    let p = pos(*c).ok_or_else(|| {
                        Error::InvalidAlgebra("subspace not closed under bracket".into())
                    })?;
                    v.push((p, val.clone()));
                }
                row.push(v);
            }
            brackets.push(row);
        }
        let form = indices
            .iter()
            .map(|&a| indices.iter().map(|&b| self.form[a][b].clone()).collect())
            .collect();
        let labels = indices.iter().map(|&a| self.labels[a].clone()).collect();
        LieAlgebra::new(labels, brackets, form)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        let (n, m) = (self.dim(), other.dim());
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut brackets = vec![vec![Vec::new(); n + m]; n + m];
        let mut form = vec![vec![Q::zero(); n + m]; n + m];
        for a in 0..n {
            for b in 0..n {
                brackets[a][b] = self.brackets[a][b].clone();
                form[a][b] = self.form[a][b].clone();
            }
        }
        for a in 0..m {
            for b in 0..m {
                brackets[n + a][n + b] = other.brackets[a][b]
                    .iter()
                    .map(|(c, v)| (n + c, v.clone()))
                    .collect();
                form[n + a][n + b] = other.form[a][b].clone();
            }
        }
        LieAlgebra::new(labels, brackets, form)
    }
}

/// Built-in algebras by name: Cartan labels (`A2`, `C2`), `sl<n>`,
/// `sp<2n>`, and `gl<n>` as `sl_n ⊕ gl_1`.
pub fn named_algebra(name: &str) -> Result<LieAlgebra> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix("gl").and_then(|n| n.parse::<usize>().ok()) {
        let center = LieAlgebra::gl1("z");
        return match n {
            0 => Err(Error::UnsupportedType(name.into())),
            1 => Ok(center),
            n => SimpleLieAlgebra::build(&format!("A{}", n - 1))?.lie().direct_sum(&center),
        };
    }
    Ok(SimpleLieAlgebra::build(name)?.lie().clone())
}
