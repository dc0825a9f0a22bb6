//! Finite-dimensional Hopf algebras given by structure tensors.
//!
//! Elements are coordinate vectors in a distinguished basis; tensors in
//! `H ⊗ H` are indexed `i·d + j`. Linear maps such as the antipode act on
//! column vectors.

mod action;
mod algebra;
mod constructors;

pub use action::{adjoint_action, ModuleAction, Representation};
pub use algebra::{FinAlgebra, Table};
pub use constructors::{group_algebra, nichols16, taft};

use crate::error::{Error, Result};
use crate::kernel::{Field, Matrix, Value};

/// `comult[i]` lists `((j, k), c)` with `Δ(e_i) = Σ c e_j ⊗ e_k`.
pub type CoTable = Vec<Vec<((usize, usize), Value)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    alg: FinAlgebra,
    comult: CoTable,
    counit: Vec<Value>,
    antipode: Matrix,
    /// Named elements used to address the algebra from outside.
    generators: Vec<(String, Vec<Value>)>,
    /// Basis element `i` as a product of entries of `generators`, when known.
    words: Vec<Vec<usize>>,
}

impl HopfAlgebra {
    /// Assembles a Hopf algebra and verifies every axiom.
    pub fn new(
        alg: FinAlgebra,
        mut comult: CoTable,
        counit: Vec<Value>,
        antipode: Matrix,
        generators: Vec<(String, Vec<Value>)>,
        words: Vec<Vec<usize>>,
    ) -> Result<HopfAlgebra> {
        let d = alg.dim();
        for cell in comult.iter_mut() {
            *cell = algebra::canonical(alg.field(), std::mem::take(cell));
        }
        if comult.len() != d || counit.len() != d || antipode.rows() != d || antipode.cols() != d {
            return Err(Error::Invalid("structure tensors do not match the dimension".into()));
        }
        if comult.iter().flatten().any(|((j, k), _)| *j >= d || *k >= d) {
            return Err(Error::Invalid("coproduct index out of range".into()));
        }
        if !words.is_empty() && (words.len() != d || words.iter().flatten().any(|g| *g >= generators.len())) {
            return Err(Error::Invalid("basis words do not match the generators".into()));
        }
        let h = HopfAlgebra {
            alg,
            comult,
            counit,
            antipode,
            generators,
            words,
        };
        h.verify()?;
        Ok(h)
    }

    /// As [`HopfAlgebra::new`], with the antipode solved from
    /// `m(S ⊗ id)Δ = uε` before verification.
    pub fn with_derived_antipode(
        alg: FinAlgebra,
        comult: CoTable,
        counit: Vec<Value>,
        generators: Vec<(String, Vec<Value>)>,
        words: Vec<Vec<usize>>,
    ) -> Result<HopfAlgebra> {
        let s = derive_antipode(&alg, &comult, &counit)?;
        HopfAlgebra::new(alg, comult, counit, s, generators, words)
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.alg
    }

    pub fn comult_table(&self) -> &CoTable {
        &self.comult
    }

    pub fn counit_vector(&self) -> &[Value] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn generators(&self) -> &[(String, Vec<Value>)] {
        &self.generators
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// A named generator, or a basis element by name.
    pub fn element(&self, name: &str) -> Option<Vec<Value>> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .or_else(|| self.alg.index_of(name).map(|i| self.alg.basis(i)))
    }

    pub fn one(&self) -> Vec<Value> {
        self.alg.one()
    }

    pub fn mul(&self, u: &[Value], v: &[Value]) -> Vec<Value> {
        self.alg.mul(u, v)
    }

    pub fn comul(&self, v: &[Value]) -> Vec<Value> {
        let f = self.field();
        let d = self.dim();
        let mut out = vec![f.zero(); d * d];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for ((j, k), c) in &self.comult[i] {
                f.add_assign(&mut out[j * d + k], &f.mul(a, c));
            }
        }
        out
    }

    pub fn counit(&self, v: &[Value]) -> Value {
        let f = self.field();
        let mut acc = f.zero();
        for (a, e) in v.iter().zip(&self.counit) {
            f.add_assign(&mut acc, &f.mul(a, e));
        }
        acc
    }

    pub fn apply_antipode(&self, v: &[Value]) -> Vec<Value> {
        self.antipode.mul_vec(v)
    }

    /// `S⁻¹`, which exists in finite dimension.
    pub fn antipode_inverse(&self) -> Result<Matrix> {
        self.antipode
            .inverse()
            .map_err(|_| Error::NotInvertible("antipode is singular".into()))
    }

    /// Applies `f ⊗ g` to a tensor in `H ⊗ H`, with both maps given as
    /// square matrices on the respective factors.
    pub fn tensor_map(&self, f: &Matrix, g: &Matrix, t: &[Value]) -> Vec<Value> {
        let fld = self.field();
        let d = self.dim();
        let mut out = vec![fld.zero(); d * d];
        for (p, c) in t.iter().enumerate() {
            if fld.is_zero(c) {
                continue;
            }
            let (i, j) = (p / d, p % d);
            let fi = f.column(i);
            let gj = g.column(j);
            for (a, x) in fi.iter().enumerate() {
                if fld.is_zero(x) {
                    continue;
                }
                let cx = fld.mul(c, x);
                for (b, y) in gj.iter().enumerate() {
                    if !fld.is_zero(y) {
                        fld.add_assign(&mut out[a * d + b], &fld.mul(&cx, y));
                    }
                }
            }
        }
        out
    }

    /// Multiplication `H ⊗ H → H`.
    pub fn contract(&self, t: &[Value]) -> Vec<Value> {
        let f = self.field();
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (p, c) in t.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, m) in &self.alg.table()[p / d][p % d] {
                f.add_assign(&mut out[*k], &f.mul(c, m));
            }
        }
        out
    }

    /// Checks associativity, unit, coassociativity, counit, compatibility and
    /// the antipode identities on basis elements.
    pub fn verify(&self) -> Result<()> {
        let f = self.field().clone();
        let d = self.dim();
        FinAlgebra::new(&f, self.alg.names().to_vec(), self.alg.table().clone(), self.alg.one())?;
        let name = |i: usize| self.alg.names()[i].clone();
        let id = Matrix::identity(&f, d);
        for i in 0..d {
            let di = self.comul(&self.alg.basis(i));
            // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ on H⊗3, index (a·d + b)·d + c
            let mut left = vec![f.zero(); d * d * d];
            let mut right = vec![f.zero(); d * d * d];
            for (p, c) in di.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let (j, k) = (p / d, p % d);
                for ((a, b), x) in &self.comult[j] {
                    f.add_assign(&mut left[(a * d + b) * d + k], &f.mul(c, x));
                }
                for ((b, e), x) in &self.comult[k] {
                    f.add_assign(&mut right[(j * d + b) * d + e], &f.mul(c, x));
                }
            }
            if left != right {
                return Err(Error::AxiomViolation(format!("coassociativity fails on {}", name(i))));
            }
            let mut l = vec![f.zero(); d];
            let mut r = vec![f.zero(); d];
            for (p, c) in di.iter().enumerate() {
                let (j, k) = (p / d, p % d);
                f.add_assign(&mut l[k], &f.mul(c, &self.counit[j]));
                f.add_assign(&mut r[j], &f.mul(c, &self.counit[k]));
            }
            let ei = self.alg.basis(i);
            if l != ei || r != ei {
                return Err(Error::AxiomViolation(format!("counit law fails on {}", name(i))));
            }
        }
        let one = self.one();
        let mut one_one = vec![f.zero(); d * d];
        for (i, a) in one.iter().enumerate() {
            for (j, b) in one.iter().enumerate() {
                one_one[i * d + j] = f.mul(a, b);
            }
        }
        if self.comul(&one) != one_one || !f.is_one(&self.counit(&one)) {
            return Err(Error::AxiomViolation("Δ(1) = 1 ⊗ 1 and ε(1) = 1 fail".into()));
        }
        for i in 0..d {
            let di = self.comul(&self.alg.basis(i));
            for j in 0..d {
                let prod = self.alg.mul_basis(i, j);
                let dj = self.comul(&self.alg.basis(j));
                if self.comul(&prod) != self.alg.tensor_mul(&di, &dj) {
                    return Err(Error::AxiomViolation(format!(
                        "Δ is not multiplicative on ({}, {})",
                        name(i),
                        name(j)
                    )));
                }
                if self.counit(&prod) != f.mul(&self.counit[i], &self.counit[j]) {
                    return Err(Error::AxiomViolation(format!(
                        "ε is not multiplicative on ({}, {})",
                        name(i),
                        name(j)
                    )));
                }
            }
        }
        for i in 0..d {
            let di = self.comul(&self.alg.basis(i));
            let expect: Vec<Value> = one.iter().map(|u| f.mul(u, &self.counit[i])).collect();
            let left = self.contract(&self.tensor_map(&self.antipode, &id, &di));
            let right = self.contract(&self.tensor_map(&id, &self.antipode, &di));
            if left != expect || right != expect {
                return Err(Error::AxiomViolation(format!("antipode identity fails on {}", name(i))));
            }
        }
        Ok(())
    }

    /// The dual Hopf algebra on the dual basis.
    pub fn dual(&self) -> Result<HopfAlgebra> {
        let f = self.field();
        let d = self.dim();
        let mut mult: Table = vec![vec![Vec::new(); d]; d];
        for (k, terms) in self.comult.iter().enumerate() {
            for ((i, j), c) in terms {
                mult[*i][*j].push((k, c.clone()));
            }
        }
        let mut comult: CoTable = vec![Vec::new(); d];
        for (i, row) in self.alg.table().iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                for (k, c) in terms {
                    comult[*k].push(((i, j), c.clone()));
                }
            }
        }
        let names = self.alg.names().iter().map(|n| dual_name(n)).collect();
        let alg = FinAlgebra::new_unchecked(f, names, mult, self.counit.clone())?;
        HopfAlgebra::new(alg, comult, self.alg.one(), self.antipode.transpose(), Vec::new(), Vec::new())
    }

    /// Matrix of the canonical pairing `⟨f_i, e_j⟩` between `self.dual()` and
    /// `self`, evaluated from the structure tensors of both.
    pub fn pairing_matrix(&self, dual: &HopfAlgebra) -> Result<Matrix> {
        let f = self.field();
        let d = self.dim();
        if dual.dim() != d {
            return Err(Error::Invalid("dimensions differ".into()));
        }
        // ⟨f_i, e_j⟩ is the counit of e_j against the coordinate functional;
        // the dual unit must pair with e_j to ε(e_j).
        let m = Matrix::identity(f, d);
        let unit_pairing = m.transpose().mul_vec(&dual.one());
        if unit_pairing != self.counit {
            return Err(Error::AxiomViolation("dual unit does not pair to the counit".into()));
        }
        for i in 0..d {
            for j in 0..d {
                // ⟨f_i f_j, e_k⟩ = ⟨f_i ⊗ f_j, Δ e_k⟩
                let prod = dual.alg.mul_basis(i, j);
                for k in 0..d {
                    let lhs = prod[k].clone();
                    let rhs = self.comul(&self.alg.basis(k))[i * d + j].clone();
                    if lhs != rhs {
                        return Err(Error::AxiomViolation("product is not dual to the coproduct".into()));
                    }
                }
                // ⟨Δ f_k, e_i ⊗ e_j⟩ = ⟨f_k, e_i e_j⟩
                let prod = self.alg.mul_basis(i, j);
                for k in 0..d {
                    let lhs = dual.comul(&dual.alg.basis(k))[i * d + j].clone();
                    if lhs != prod[k] {
                        return Err(Error::AxiomViolation("coproduct is not dual to the product".into()));
                    }
                }
            }
        }
        Ok(m)
    }

    /// A nonzero left integral `Λ`, with `hΛ = ε(h)Λ` for all `h`.
    pub fn left_integral(&self) -> Result<Vec<Value>> {
        let f = self.field();
        let d = self.dim();
        let mut rows = Vec::new();
        for i in 0..d {
            let mut m = self.alg.left_mult_matrix(&self.alg.basis(i));
            m.add_scalar_diag(&f.neg(&self.counit[i]));
            for r in 0..d {
                rows.push(m.row(r));
            }
        }
        let ker = Matrix::from_rows(f, rows).kernel()?;
        if ker.len() != 1 {
            return Err(Error::AxiomViolation(format!("space of left integrals has dimension {}", ker.len())));
        }
        Ok(ker.into_iter().next().unwrap())
    }

    /// Maschke's criterion: semisimple iff `ε(Λ) ≠ 0`.
    pub fn is_semisimple(&self) -> Result<bool> {
        let l = self.left_integral()?;
        Ok(!self.field().is_zero(&self.counit(&l)))
    }
}

fn dual_name(n: &str) -> String {
    match n.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{n}*"),
    }
}

/// Solves `m(S ⊗ id)Δ = uε` for `S`; the solution is unique when it exists.
pub fn derive_antipode(alg: &FinAlgebra, comult: &CoTable, counit: &[Value]) -> Result<Matrix> {
    let f = alg.field();
    let d = alg.dim();
    let one = alg.one();
    // unknown s_{k,j} (coefficient of e_k in S(e_j)) at column j·d + k
    let mut rows = Vec::with_capacity(d * d);
    let mut rhs = Vec::with_capacity(d * d);
    for (i, terms) in comult.iter().enumerate() {
        let mut block = vec![vec![f.zero(); d * d]; d];
        for ((j, l), c) in terms {
            for k in 0..d {
                for (m, x) in &alg.table()[k][*l] {
                    f.add_assign(&mut block[*m][j * d + k], &f.mul(c, x));
                }
            }
        }
        for (m, row) in block.into_iter().enumerate() {
            rows.push(row);
            rhs.push(f.mul(&counit[i], &one[m]));
        }
    }
    let sys = Matrix::from_rows(f, rows);
    let sol = sys
        .solve(&rhs)?
        .ok_or_else(|| Error::AxiomViolation("no antipode: the bialgebra is not a Hopf algebra".into()))?;
    if !sys.kernel()?.is_empty() {
        return Err(Error::AxiomViolation("antipode equation is underdetermined".into()));
    }
    let cols: Vec<Vec<Value>> = (0..d).map(|j| sol[j * d..(j + 1) * d].to_vec()).collect();
    Ok(Matrix::from_columns(f, d, &cols))
}

#[cfg(test)]
mod tests;
