//! Representations, module-algebra actions and their coactions.

use crate::coact::FinCoaction;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Value};

use super::{FinAlgebra, HopfAlgebra};

/// An algebra map `π: H → Mat_n`, stored on every basis element.
#[derive(Clone, Debug)]
pub struct Representation {
    hopf: HopfAlgebra,
    dim: usize,
    images: Vec<Matrix>,
}

impl Representation {
    /// Extends generator images along the basis words of `h` and checks
    /// multiplicativity on all basis pairs.
    pub fn from_generators(h: &HopfAlgebra, dim: usize, gens: &[Matrix]) -> Result<Representation> {
        let f = h.field();
        if h.words().is_empty() {
            return Err(Error::Invalid("no basis words: give images of all basis elements".into()));
        }
        if gens.len() != h.generators().len() {
            return Err(Error::Invalid(format!("expected {} generator images", h.generators().len())));
        }
        let images = h
            .words()
            .iter()
            .map(|w| {
                w.iter()
                    .fold(Matrix::identity(f, dim), |acc, &g| acc.mul(&gens[g]))
            })
            .collect();
        Representation::new(h, dim, images)
    }

    pub fn new(h: &HopfAlgebra, dim: usize, images: Vec<Matrix>) -> Result<Representation> {
        let rep = Representation {
            hopf: h.clone(),
            dim,
            images,
        };
        rep.verify()?;
        Ok(rep)
    }

    fn verify(&self) -> Result<()> {
        let d = self.hopf.dim();
        if self.images.len() != d || self.images.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(Error::Invalid("one square image per basis element".into()));
        }
        if !self.apply(&self.hopf.one()).is_identity() {
            return Err(Error::NotAHomomorphism("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.images[i].mul(&self.images[j]);
                let rhs = self.apply(&self.hopf.algebra().mul_basis(i, j));
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!(
                        "π({}) π({}) differs from π of the product",
                        self.hopf.algebra().names()[i],
                        self.hopf.algebra().names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &[Value]) -> Matrix {
        let f = self.hopf.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (c, m) in v.iter().zip(&self.images) {
            if !f.is_zero(c) {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

/// A left action of `H` on a finite-dimensional algebra, one matrix per basis
/// element of `H` acting on column coordinate vectors of `A`.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    hopf: HopfAlgebra,
    algebra: FinAlgebra,
    images: Vec<Matrix>,
}

impl ModuleAction {
    /// Checks that the action is a module structure and that
    /// `h·(ab) = (h₁·a)(h₂·b)` and `h·1 = ε(h)1`.
    pub fn new(h: &HopfAlgebra, a: &FinAlgebra, images: Vec<Matrix>) -> Result<ModuleAction> {
        let act = ModuleAction {
            hopf: h.clone(),
            algebra: a.clone(),
            images,
        };
        act.verify()?;
        Ok(act)
    }

    /// `h·a = ε(h) a`.
    pub fn trivial(h: &HopfAlgebra, a: &FinAlgebra) -> Result<ModuleAction> {
        let images = h
            .counit_vector()
            .iter()
            .map(|e| Matrix::scalar(h.field(), a.dim(), e))
            .collect();
        ModuleAction::new(h, a, images)
    }

    fn verify(&self) -> Result<()> {
        let f = self.hopf.field();
        let dh = self.hopf.dim();
        let da = self.algebra.dim();
        if self.images.len() != dh || self.images.iter().any(|m| m.rows() != da || m.cols() != da) {
            return Err(Error::NotModuleAlgebra("one square image per basis element".into()));
        }
        if !self.act_matrix(&self.hopf.one()).is_identity() {
            return Err(Error::NotModuleAlgebra("1 does not act as the identity".into()));
        }
        for i in 0..dh {
            for j in 0..dh {
                let lhs = self.images[i].mul(&self.images[j]);
                if lhs != self.act_matrix(&self.hopf.algebra().mul_basis(i, j)) {
                    return Err(Error::NotModuleAlgebra("the action is not multiplicative in H".into()));
                }
            }
        }
        let one = self.algebra.one();
        for i in 0..dh {
            let expect: Vec<Value> = one.iter().map(|u| f.mul(u, &self.hopf.counit_vector()[i])).collect();
            if self.images[i].mul_vec(&one) != expect {
                return Err(Error::NotModuleAlgebra(format!(
                    "{} does not act on 1 through the counit",
                    self.hopf.algebra().names()[i]
                )));
            }
            let dterms = &self.hopf.comult_table()[i];
            for p in 0..da {
                let ap = self.algebra.basis(p);
                for q in 0..da {
                    let aq = self.algebra.basis(q);
                    let lhs = self.images[i].mul_vec(&self.algebra.mul(&ap, &aq));
                    let mut rhs = self.algebra.zero();
                    for ((j, k), c) in dterms {
                        let t = self.algebra.mul(&self.images[*j].mul_vec(&ap), &self.images[*k].mul_vec(&aq));
                        for (r, x) in rhs.iter_mut().zip(&t) {
                            f.add_assign(r, &f.mul(c, x));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NotModuleAlgebra(format!(
                            "{} does not act through the coproduct on a product",
                            self.hopf.algebra().names()[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn act_matrix(&self, h: &[Value]) -> Matrix {
        let f = self.hopf.field();
        let da = self.algebra.dim();
        let mut out = Matrix::zeros(f, da, da);
        for (c, m) in h.iter().zip(&self.images) {
            if !f.is_zero(c) {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// `{a : h·a = ε(h) a for all h}`.
    pub fn invariants(&self) -> Result<Vec<Vec<Value>>> {
        let f = self.hopf.field();
        let da = self.algebra.dim();
        let mut rows = Vec::new();
        for (m, e) in self.images.iter().zip(self.hopf.counit_vector()) {
            let mut s = m.clone();
            s.add_scalar_diag(&f.neg(e));
            for r in 0..da {
                rows.push(s.row(r));
            }
        }
        Matrix::from_rows(f, rows).kernel()
    }

    /// The coaction of `H*` with `ρ(a) = Σ_i (e_i·a) ⊗ f_i`, where `f_i` is
    /// the dual basis.
    pub fn to_coaction(&self) -> Result<FinCoaction> {
        let f = self.hopf.field();
        let k = self.hopf.dual()?;
        let dk = k.dim();
        let da = self.algebra.dim();
        let mut rho = Matrix::zeros(f, da * dk, da);
        for (i, m) in self.images.iter().enumerate() {
            for q in 0..da {
                for p in 0..da {
                    rho.set(q * dk + i, p, m.get(q, p).clone());
                }
            }
        }
        FinCoaction::new(&self.algebra, &k, rho)
    }
}

/// `h ∘ M = Σ π(h₁) M π(S h₂)` on `Mat_n`, with `M` at row-major coordinates.
pub fn adjoint_action(rep: &Representation) -> Result<ModuleAction> {
    let h = rep.hopf();
    let f = h.field();
    let n = rep.dim();
    let a = FinAlgebra::matrix_algebra(f, n);
    let images = (0..h.dim())
        .map(|i| {
            let mut acc = Matrix::zeros(f, n * n, n * n);
            for ((j, k), c) in &h.comult_table()[i] {
                let left = rep.apply(&h.algebra().basis(*j));
                let right = rep.apply(&h.apply_antipode(&h.algebra().basis(*k)));
                // vec(A M B) = (A ⊗ Bᵀ) vec(M) for row-major vec
                acc = acc.add(&left.kron(&right.transpose()).scale(c));
            }
            acc
        })
        .collect();
    ModuleAction::new(h, &a, images)
}
