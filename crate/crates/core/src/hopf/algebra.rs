//! Finite-dimensional associative algebras by structure constants.

use crate::error::{Error, Result};
use crate::kernel::{Field, Matrix, Value};

/// Sparse product table: `mult[i][j]` lists `(k, c)` with `e_i e_j = Σ c e_k`.
pub type Table = Vec<Vec<Vec<(usize, Value)>>>;

/// Sorts sparse terms by key, merging repeats and dropping zeros.
pub(crate) fn canonical<K: Ord + Clone>(f: &Field, mut terms: Vec<(K, Value)>) -> Vec<(K, Value)> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(K, Value)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((j, x)) if *j == k => *x = f.add(x, &c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !f.is_zero(c));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    field: Field,
    names: Vec<String>,
    mult: Table,
    unit: Vec<Value>,
}

impl FinAlgebra {
    /// Builds the algebra and checks associativity and the unit law on basis
    /// elements.
    pub fn new(field: &Field, names: Vec<String>, mult: Table, unit: Vec<Value>) -> Result<FinAlgebra> {
        let a = FinAlgebra::new_unchecked(field, names, mult, unit)?;
        a.verify()?;
        Ok(a)
    }

    pub fn new_unchecked(field: &Field, names: Vec<String>, mut mult: Table, unit: Vec<Value>) -> Result<FinAlgebra> {
        let d = names.len();
        for cell in mult.iter_mut().flatten() {
            *cell = canonical(field, std::mem::take(cell));
        }
        if mult.len() != d || mult.iter().any(|r| r.len() != d) || unit.len() != d {
            return Err(Error::Invalid("structure constants do not match the dimension".into()));
        }
        if mult.iter().flatten().flatten().any(|(k, _)| *k >= d) {
            return Err(Error::Invalid("product index out of range".into()));
        }
        Ok(FinAlgebra {
            field: field.clone(),
            names,
            mult,
            unit,
        })
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim();
        let one = self.one();
        for i in 0..d {
            let ei = self.basis(i);
            if self.mul(&one, &ei) != ei || self.mul(&ei, &one) != ei {
                return Err(Error::AxiomViolation(format!("unit law fails on {}", self.names[i])));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul_basis(j, k));
                    if left != right {
                        return Err(Error::AxiomViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Mat_n` with basis `E_rc` at index `r·n + c`.
    pub fn matrix_algebra(field: &Field, n: usize) -> FinAlgebra {
        let d = n * n;
        let mut mult = vec![vec![Vec::new(); d]; d];
        for r in 0..n {
            for c in 0..n {
                for e in 0..n {
                    mult[r * n + c][c * n + e].push((r * n + e, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let names = (0..d).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
        FinAlgebra {
            field: field.clone(),
            names,
            mult,
            unit,
        }
    }

    /// `k^n` with orthogonal idempotents.
    pub fn diagonal(field: &Field, n: usize) -> FinAlgebra {
        let mut mult = vec![vec![Vec::new(); n]; n];
        for (i, row) in mult.iter_mut().enumerate() {
            row[i].push((i, field.one()));
        }
        FinAlgebra {
            field: field.clone(),
            names: (0..n).map(|i| format!("p{i}")).collect(),
            mult,
            unit: vec![field.one(); n],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &Table {
        &self.mult
    }

    pub fn one(&self) -> Vec<Value> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<Value> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Value> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Value> {
        let mut v = self.zero();
        for (k, c) in &self.mult[i][j] {
            self.field.add_assign(&mut v[*k], c);
        }
        v
    }

    pub fn mul(&self, u: &[Value], v: &[Value]) -> Vec<Value> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in &self.mult[i][j] {
                    f.add_assign(&mut out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Product in `A ⊗ A`, tensors indexed `i·d + j`.
    pub fn tensor_mul(&self, u: &[Value], v: &[Value]) -> Vec<Value> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d * d];
        for (p, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            let (i1, j1) = (p / d, p % d);
            for (q, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let (i2, j2) = (q / d, q % d);
                let ab = f.mul(a, b);
                for (k, c) in &self.mult[i1][i2] {
                    let ac = f.mul(&ab, c);
                    for (l, e) in &self.mult[j1][j2] {
                        f.add_assign(&mut out[k * d + l], &f.mul(&ac, e));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ u v` acting on column vectors.
    pub fn left_mult_matrix(&self, u: &[Value]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Value>> = (0..d).map(|j| self.mul(u, &self.basis(j))).collect();
        Matrix::from_columns(&self.field, d, &cols)
    }

    /// Matrix of `v ↦ v u` acting on column vectors.
    pub fn right_mult_matrix(&self, u: &[Value]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Value>> = (0..d).map(|j| self.mul(&self.basis(j), u)).collect();
        Matrix::from_columns(&self.field, d, &cols)
    }

    /// Solutions of `x b = b x` for every basis element `b`.
    pub fn center(&self) -> Result<Vec<Vec<Value>>> {
        let d = self.dim();
        let mut rows = Vec::new();
        for j in 0..d {
            let b = self.basis(j);
            let m = self.right_mult_matrix(&b).sub(&self.left_mult_matrix(&b));
            for i in 0..d {
                rows.push(m.row(i));
            }
        }
        Matrix::from_rows(&self.field, rows).kernel()
    }

    pub fn fmt_element(&self, v: &[Value]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| {
                if self.field.is_one(c) {
                    self.names[i].clone()
                } else {
                    format!("({})·{}", self.field.fmt_value(c), self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
