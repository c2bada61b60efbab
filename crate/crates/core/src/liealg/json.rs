//! JSON import/export of Lie algebra data.

use serde::{Deserialize, Serialize};

use super::{CartanType, LieAlgebra, SimpleLieAlgebra, Sparse};
use crate::error::{Error, Result};
use crate::field::{fmt_q, parse_q, Field, Q};

/// Exchange format: labels, roots (null for Cartan elements), structure
/// constants `[a, b, c, value]` meaning `[e_a, e_b] ∋ value·e_c`, and form
/// entries `[a, b, value]`. Values are rational strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraData {
    pub type_label: Option<String>,
    pub rank: usize,
    pub labels: Vec<String>,
    pub roots: Vec<Option<Vec<i64>>>,
    pub structure_constants: Vec<(String, String, String, String)>,
    pub form: Vec<(String, String, String)>,
}

impl LieAlgebraData {
    pub fn from_algebra(alg: &SimpleLieAlgebra) -> Self {
        let lie = alg.lie();
        let n = lie.dim();
        let mut sc = Vec::new();
        let mut form = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (c, v) in lie.bracket_basis(a, b) {
                    sc.push((
                        lie.label(a).to_string(),
                        lie.label(b).to_string(),
                        lie.label(*c).to_string(),
                        fmt_q(v),
                    ));
                }
                let v = lie.form_basis(a, b);
                if !v.is_zero() {
                    form.push((lie.label(a).to_string(), lie.label(b).to_string(), fmt_q(v)));
                }
            }
        }
        LieAlgebraData {
            type_label: alg.cartan_type().map(|t| t.to_string()),
            rank: alg.rank(),
            labels: lie.labels().to_vec(),
            roots: alg.roots().to_vec(),
            structure_constants: sc,
            form,
        }
    }

    pub fn to_algebra(&self) -> Result<SimpleLieAlgebra> {
        let n = self.labels.len();
        let idx = |l: &str| {
            self.labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownGenerator(l.to_string()))
        };
        let val = |s: &str| parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational '{s}'")));
        let mut brackets: Vec<Vec<Vec<Q>>> = vec![vec![vec![Q::zero(); n]; n]; n];
        for (a, b, c, v) in &self.structure_constants {
            let (a, b, c) = (idx(a)?, idx(b)?, idx(c)?);
            brackets[a][b][c] = brackets[a][b][c].plus(&val(v)?);
        }
        let mut form = vec![vec![Q::zero(); n]; n];
        for (a, b, v) in &self.form {
            form[idx(a)?][idx(b)?] = val(v)?;
        }
        let brackets: Vec<Vec<Sparse>> = brackets
            .iter()
            .map(|row| row.iter().map(|v| super::sparse_of(v)).collect())
            .collect();
        let lie = LieAlgebra::new(self.labels.clone(), brackets, form)?;
        let ct = match &self.type_label {
            Some(t) => Some(t.parse::<CartanType>()?),
            None => None,
        };
        SimpleLieAlgebra::from_parts(lie, self.rank, self.roots.clone(), ct)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
