//! Dense exact linear algebra over any [`Field`].

use crate::field::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    /// Reduced row echelon form, zero rows removed.
    pub rows: Vec<Vec<F>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    /// Pivot values met during elimination, before normalization.
    pub pivot_values: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduced row echelon form. Within a column the cheapest nonzero
    /// entry (by [`Field::complexity`]) is used as pivot.
    pub fn echelon(&self) -> Echelon<F> {
        let mut rows: Vec<Vec<F>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut pivots = Vec::new();
        let mut pivot_values = Vec::new();
        let mut done = 0;
        for c in 0..self.cols {
            let best = (done..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by_key(|&r| rows[r][c].complexity());
            let Some(p) = best else { continue };
            rows.swap(done, p);
            let pv = rows[done][c].clone();
            let inv = pv.inverse();
            pivot_values.push(pv);
            for x in rows[done].iter_mut() {
                if !x.is_zero() {
                    *x = x.times(&inv);
                }
            }
            let prow = rows[done].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == done || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                    if !y.is_zero() {
                        *x = x.minus(&factor.times(y));
                    }
                }
            }
            pivots.push(c);
            done += 1;
            if done == rows.len() {
                break;
            }
        }
        rows.truncate(done);
        Echelon {
            rows,
            pivots,
            pivot_values,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : A v = 0}`; each vector has a 1 in its free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        nullspace_from(&self.echelon(), self.cols)
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = ech.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(rows, n))
    }
}

/// Null space read off an echelon form with `cols` columns.
pub fn nullspace_from<F: Field>(ech: &Echelon<F>, cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                v[p] = row[free].negated();
            }
        }
        basis.push(v);
    }
    basis
}

/// Row-reduce a list of vectors: a basis of their span in RREF.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Echelon<F> {
    Matrix::from_rows(vectors.to_vec(), dim).echelon()
}

/// Reduce `v` against an RREF basis; returns the remainder.
pub fn reduce_against<F: Field>(ech: &Echelon<F>, v: &[F]) -> Vec<F> {
    let mut v = v.to_vec();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if v[p].is_zero() {
            continue;
        }
        let c = v[p].clone();
        for (x, y) in v.iter_mut().zip(row) {
            if !y.is_zero() {
                *x = x.minus(&c.times(y));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qi, Q};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|x| x == &qi(0)));
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let x = a.solve(&[qi(3), qi(2)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[qi(1), qi(2)]).is_none());
    }
}
