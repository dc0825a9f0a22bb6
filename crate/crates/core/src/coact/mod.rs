//! Comodule algebras: invariants, the bimodule `A ⊗ K`, integrality
//! certificates, the Galois group of a coaction and the counterexample
//! machinery for non-closed central subalgebras.

mod certificate;
mod field;
mod truncated;

pub use certificate::{in_q_x2_x3, lemma_inclo_matrix, matrix_certificate, IntegralityCertificate, MatrixCertificate};
pub use field::{descend, galois_group_of_coaction, CoactionGroup, Divisibility, FieldCoaction, PsiXiReport};
pub use truncated::{truncated_invariants, DegreeRow, MPoly, TruncatedAction};

use crate::error::{Error, Result};
use crate::hopf::{FinAlgebra, HopfAlgebra};
use crate::kernel::{Matrix, Value};

/// Product in `A ⊗ K`, indexed `p·d_K + s`.
pub(crate) fn mixed_mul(a: &FinAlgebra, k: &FinAlgebra, u: &[Value], v: &[Value]) -> Vec<Value> {
    let f = a.field();
    let dk = k.dim();
    let mut out = vec![f.zero(); a.dim() * dk];
    for (p1, x) in u.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        let (i1, s1) = (p1 / dk, p1 % dk);
        for (p2, y) in v.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            let (i2, s2) = (p2 / dk, p2 % dk);
            let xy = f.mul(x, y);
            for (i, c) in &a.table()[i1][i2] {
                let xc = f.mul(&xy, c);
                for (s, e) in &k.table()[s1][s2] {
                    f.add_assign(&mut out[i * dk + s], &f.mul(&xc, e));
                }
            }
        }
    }
    out
}

/// A coaction `ρ: A → A ⊗ K` on a finite-dimensional algebra, stored as a
/// `(d_A·d_K) × d_A` matrix acting on column vectors.
#[derive(Clone, Debug)]
pub struct FinCoaction {
    algebra: FinAlgebra,
    hopf: HopfAlgebra,
    rho: Matrix,
}

impl FinCoaction {
    pub fn new(a: &FinAlgebra, k: &HopfAlgebra, rho: Matrix) -> Result<FinCoaction> {
        if a.field() != k.field() {
            return Err(Error::FieldMismatch);
        }
        if rho.rows() != a.dim() * k.dim() || rho.cols() != a.dim() {
            return Err(Error::Invalid("coaction matrix has the wrong shape".into()));
        }
        let c = FinCoaction {
            algebra: a.clone(),
            hopf: k.clone(),
            rho,
        };
        c.verify()?;
        Ok(c)
    }

    /// `ρ(a) = a ⊗ 1`.
    pub fn trivial(a: &FinAlgebra, k: &HopfAlgebra) -> Result<FinCoaction> {
        let f = a.field();
        let dk = k.dim();
        let one = k.one();
        let mut rho = Matrix::zeros(f, a.dim() * dk, a.dim());
        for p in 0..a.dim() {
            for (s, c) in one.iter().enumerate() {
                rho.set(p * dk + s, p, c.clone());
            }
        }
        FinCoaction::new(a, k, rho)
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn matrix(&self) -> &Matrix {
        &self.rho
    }

    pub fn apply(&self, a: &[Value]) -> Vec<Value> {
        self.rho.mul_vec(a)
    }

    fn verify(&self) -> Result<()> {
        let f = self.algebra.field();
        let (da, dk) = (self.algebra.dim(), self.hopf.dim());
        let kalg = self.hopf.algebra();
        let mut one_one = vec![f.zero(); da * dk];
        for (p, x) in self.algebra.one().iter().enumerate() {
            for (s, y) in self.hopf.one().iter().enumerate() {
                one_one[p * dk + s] = f.mul(x, y);
            }
        }
        if self.apply(&self.algebra.one()) != one_one {
            return Err(Error::AxiomViolation("ρ(1) ≠ 1 ⊗ 1".into()));
        }
        let images: Vec<Vec<Value>> = (0..da).map(|p| self.rho.column(p)).collect();
        for p in 0..da {
            for q in 0..da {
                let lhs = self.apply(&self.algebra.mul_basis(p, q));
                if lhs != mixed_mul(&self.algebra, kalg, &images[p], &images[q]) {
                    return Err(Error::AxiomViolation(format!(
                        "ρ is not multiplicative on ({}, {})",
                        self.algebra.names()[p],
                        self.algebra.names()[q]
                    )));
                }
            }
        }
        for (p, r) in images.iter().enumerate() {
            // (ρ ⊗ 1)ρ and (1 ⊗ Δ)ρ in A ⊗ K ⊗ K, index (q·d_K + s)·d_K + t
            let mut left = vec![f.zero(); da * dk * dk];
            let mut right = vec![f.zero(); da * dk * dk];
            let mut counit = vec![f.zero(); da];
            for (idx, c) in r.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let (q, t) = (idx / dk, idx % dk);
                for (j, x) in images[q].iter().enumerate() {
                    if !f.is_zero(x) {
                        f.add_assign(&mut left[j * dk + t], &f.mul(c, x));
                    }
                }
                for ((s, u), x) in &self.hopf.comult_table()[t] {
                    f.add_assign(&mut right[(q * dk + s) * dk + u], &f.mul(c, x));
                }
                f.add_assign(&mut counit[q], &f.mul(c, &self.hopf.counit_vector()[t]));
            }
            if left != right {
                return Err(Error::AxiomViolation(format!(
                    "coassociativity fails on {}",
                    self.algebra.names()[p]
                )));
            }
            if counit != self.algebra.basis(p) {
                return Err(Error::AxiomViolation(format!("counit law fails on {}", self.algebra.names()[p])));
            }
        }
        Ok(())
    }

    /// A basis of `A^K = {a : ρ(a) = a ⊗ 1}`, checked to be a subalgebra.
    pub fn invariants(&self) -> Result<Vec<Vec<Value>>> {
        let f = self.algebra.field();
        let (da, dk) = (self.algebra.dim(), self.hopf.dim());
        let one = self.hopf.one();
        let mut m = self.rho.clone();
        for p in 0..da {
            for (s, c) in one.iter().enumerate() {
                let v = f.sub(m.get(p * dk + s, p), c);
                m.set(p * dk + s, p, v);
            }
        }
        let basis = m.kernel()?;
        if !basis.is_empty() {
            let span = Matrix::from_columns(f, da, &basis);
            for x in &basis {
                for y in &basis {
                    if span.solve(&self.algebra.mul(x, y))?.is_none() {
                        return Err(Error::AxiomViolation("invariants are not closed under products".into()));
                    }
                }
            }
        }
        Ok(basis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    Holds,
    Fails,
    /// The dual of `K` is not semisimple, so the inequality is not asserted.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleBound {
    pub dim_invariants: usize,
    pub dim_h: usize,
    pub dim_a: usize,
    pub verdict: BoundVerdict,
}

/// `dim A^K · dim H ≥ dim A` for `H = K*` semisimple.
pub fn semisimple_bound(c: &FinCoaction) -> Result<SemisimpleBound> {
    let h = c.hopf().dual()?;
    let dim_invariants = c.invariants()?.len();
    let dim_h = h.dim();
    let dim_a = c.algebra().dim();
    let verdict = if !h.is_semisimple()? {
        BoundVerdict::NotApplicable
    } else if dim_invariants * dim_h >= dim_a {
        BoundVerdict::Holds
    } else {
        BoundVerdict::Fails
    };
    Ok(SemisimpleBound {
        dim_invariants,
        dim_h,
        dim_a,
        verdict,
    })
}
