//! The ad x grading attached to an sl2-triple.

use std::collections::BTreeMap;

use super::{scale_vec, SimpleLieAlgebra, Sl2Triple};
use crate::error::{Error, Result};
use crate::weight::HalfInt;

#[derive(Clone, Debug, PartialEq)]
pub struct AdxGrading {
    /// ad x eigenvalue of each basis vector.
    pub degree_of: Vec<HalfInt>,
    /// Basis indices of each g_j.
    pub pieces: BTreeMap<HalfInt, Vec<usize>>,
    /// Largest j with g_j nonzero.
    pub depth: HalfInt,
    /// Root vectors of positive degree.
    pub positive: Vec<usize>,
    /// Indecomposable elements of the positive part.
    pub pi: Vec<usize>,
    pub pi_half: Vec<usize>,
    pub pi_1: Vec<usize>,
    /// All degrees are integers.
    pub integral: bool,
}

impl AdxGrading {
    pub fn degree(&self, a: usize) -> HalfInt {
        self.degree_of[a]
    }

    /// Basis indices of g_j (empty if none).
    pub fn piece(&self, j: HalfInt) -> &[usize] {
        self.pieces.get(&j).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim_piece(&self, j: HalfInt) -> usize {
        self.piece(j).len()
    }

    /// Root vectors of degree `j` (Δ_j).
    pub fn roots_of_degree(&self, alg: &SimpleLieAlgebra, j: HalfInt) -> Vec<usize> {
        self.piece(j).iter().copied().filter(|&a| !alg.is_cartan(a)).collect()
    }

    /// Members of the family `[α] = Δ_{>0} ∩ (α + Q_0)`, where Q_0 is the root
    /// lattice spanned by Δ_0.
    pub fn family(&self, alg: &SimpleLieAlgebra, alpha: usize) -> Vec<usize> {
        let zero: Vec<&Vec<i64>> = self
            .roots_of_degree(alg, HalfInt::ZERO)
            .into_iter()
            .map(|a| alg.root(a).unwrap())
            .collect();
        let mut members = vec![alpha];
        // Δ_{>0} ∩ (α + Q_0) is reached by adding elements of Δ_0 one at a time.
        let mut frontier = vec![alpha];
        while let Some(b) = frontier.pop() {
            let rb = alg.root(b).unwrap();
            for z in &zero {
                let sum: Vec<i64> = rb.iter().zip(z.iter()).map(|(x, y)| x + y).collect();
                if let Some(c) = alg.root_index(&sum) {
                    if self.degree_of[c] > HalfInt::ZERO && !members.contains(&c) {
                        members.push(c);
                        frontier.push(c);
                    }
                }
            }
        }
        members.sort();
        members
    }

    /// `[g_i, g_j] ⊆ g_{i+j}` on all basis pairs; returns the first violation.
    pub fn additivity_violation(&self, alg: &SimpleLieAlgebra) -> Option<(usize, usize)> {
        let lie = alg.lie();
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let target = self.degree_of[a] + self.degree_of[b];
                if lie
                    .bracket_basis(a, b)
                    .iter()
                    .any(|(c, _)| self.degree_of[*c] != target)
                {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Compute the ad x grading; every basis vector must be an eigenvector.
pub fn grade(alg: &SimpleLieAlgebra, triple: &Sl2Triple) -> Result<AdxGrading> {
    let lie = alg.lie();
    let n = lie.dim();
    let mut degree_of = Vec::with_capacity(n);
    for a in 0..n {
        let v = lie.basis_vec(a);
        let w = lie.bracket(&triple.x, &v);
        let lam = w[a].clone();
        if w != scale_vec(&v, &lam) {
            return Err(Error::NotHomogeneous(lie.label(a).to_string()));
        }
        let j = HalfInt::from_q(&lam)
            .ok_or_else(|| Error::NotHomogeneous(format!("{}: eigenvalue {lam}", lie.label(a))))?;
        degree_of.push(j);
    }
    let mut pieces: BTreeMap<HalfInt, Vec<usize>> = BTreeMap::new();
    for (a, j) in degree_of.iter().enumerate() {
        pieces.entry(*j).or_default().push(a);
    }
    let depth = *pieces.keys().next_back().unwrap();
    let positive: Vec<usize> = (0..n)
        .filter(|&a| !alg.is_cartan(a) && degree_of[a] > HalfInt::ZERO)
        .collect();
    let pos_roots: Vec<&Vec<i64>> = positive.iter().map(|&a| alg.root(a).unwrap()).collect();
    let pi: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&a| {
            let r = alg.root(a).unwrap();
            !pos_roots.iter().any(|p| {
                let rest: Vec<i64> = r.iter().zip(p.iter()).map(|(x, y)| x - y).collect();
                pos_roots.contains(&&rest)
            })
        })
        .collect();
    let pi_half = pi.iter().copied().filter(|&a| degree_of[a] == HalfInt::HALF).collect();
    let pi_1 = pi.iter().copied().filter(|&a| degree_of[a] == HalfInt::ONE).collect();
    let integral = degree_of.iter().all(|j| j.is_integer());
    Ok(AdxGrading {
        degree_of,
        pieces,
        depth,
        positive,
        pi,
        pi_half,
        pi_1,
        integral,
    })
}
