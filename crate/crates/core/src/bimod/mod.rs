//! Bimodules over a field `L` that are linear over the base `B` of its tower.
//!
//! A bimodule of left rank `d` is stored as the matrix-valued homomorphism
//! `φ: L → Mat_d(L)` with `v_i · a = Σ_j φ(a)_ij v_j`, so the right action on a
//! coordinate row vector `v` is `v · φ(a)`.

mod analysis;
mod derivation;
mod monomial;

pub use analysis::{
    characters, classify, is_galois, is_weakly_galois, split_analysis, tensor_characters, Characters,
    Classification, GaloisVerdict, SplitAnalysis, WeakVerdict,
};
pub use derivation::{
    bracket_tensor_identity, contains_m_of_d, derivation_span, jacobson_tensor_identity, p_power_compatible,
    Derivation,
};
pub use monomial::monomial_splitting_degree;

use crate::error::{Error, Result};
use crate::fields::{AutomorphismGroup, Morphism, RelativeBasis, Subfield};
use crate::kernel::factor::integer_combinations;
use crate::kernel::{Field, Matrix, Poly, Value};
use crate::linalg::{center_kernel, MatRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    rep: MatRep,
}

impl Bimodule {
    /// Builds a bimodule from generator images, verifying the relations.
    pub fn new(l: &Field, rank: usize, images: Vec<Matrix>) -> Result<Bimodule> {
        Ok(Bimodule {
            rep: MatRep::new(l, l, rank, images)?,
        })
    }

    pub fn from_rep(rep: MatRep) -> Result<Bimodule> {
        if rep.source() != rep.target() {
            return Err(Error::FieldMismatch);
        }
        Ok(Bimodule { rep })
    }

    fn unchecked(l: &Field, rank: usize, images: Vec<Matrix>) -> Result<Bimodule> {
        Ok(Bimodule {
            rep: MatRep::new_unchecked(l, l, rank, images)?,
        })
    }

    /// `L^d`.
    pub fn trivial(l: &Field, d: usize) -> Bimodule {
        let images = l
            .generators_above_base()
            .iter()
            .map(|g| Matrix::scalar(l, d, g))
            .collect();
        Bimodule::unchecked(l, d, images).unwrap()
    }

    /// Rank one with the right action twisted by `g`.
    pub fn twist(g: &Morphism) -> Result<Bimodule> {
        let l = g.source();
        if g.target() != l || !g.fixes_base() {
            return Err(Error::Invalid("twist needs an automorphism fixing the base".into()));
        }
        let images = l
            .generators_above_base()
            .iter()
            .map(|x| Matrix::scalar(l, 1, &g.apply(x)))
            .collect();
        Bimodule::unchecked(l, 1, images)
    }

    /// `L ⊗_F L`: right multiplication in a fixed `F`-basis of `L`.
    pub fn regular_over(sub: &Subfield) -> Result<Bimodule> {
        let l = sub.ambient().clone();
        let rb = RelativeBasis::new(sub)?;
        let n = rb.len();
        let images = l
            .generators_above_base()
            .iter()
            .map(|g| rb.mult_matrix(g).map(&l, |c| sub.inclusion().apply(c)))
            .collect();
        Bimodule::unchecked(&l, n, images)
    }

    /// `P(n, L, G)`: `n[i]` copies of the twist by the `i`-th element of `G`.
    pub fn p_n_l_g(n: &[usize], g: &AutomorphismGroup) -> Result<Bimodule> {
        if n.len() != g.order() || n.iter().any(|&k| k == 0) {
            return Err(Error::Invalid("multiplicities must be positive, one per group element".into()));
        }
        let l = g.field();
        let mut out: Option<Bimodule> = None;
        for (i, &k) in n.iter().enumerate() {
            let t = Bimodule::twist(g.element(i))?;
            for _ in 0..k {
                out = Some(match out {
                    None => t.clone(),
                    Some(p) => p.direct_sum(&t)?,
                });
            }
        }
        out.ok_or_else(|| Error::Invalid(format!("empty group on {}", l.describe())))
    }

    pub fn rep(&self) -> &MatRep {
        &self.rep
    }

    pub fn field(&self) -> &Field {
        self.rep.source()
    }

    pub fn base(&self) -> Field {
        self.field().base()
    }

    pub fn rank(&self) -> usize {
        self.rep.dim()
    }

    /// Images of the generators above the base.
    pub fn images(&self) -> &[Matrix] {
        self.rep.images()
    }

    pub fn phi(&self, a: &Value) -> Matrix {
        self.rep.apply(a)
    }

    /// `P ⊗_L Q`, basis `v_i ⊗ w_k` at index `i·d_Q + k`.
    pub fn tensor(&self, q: &Bimodule) -> Result<Bimodule> {
        let l = self.field();
        if q.field() != l {
            return Err(Error::FieldMismatch);
        }
        let (dp, dq) = (self.rank(), q.rank());
        let n = dp * dq;
        let mut images = Vec::new();
        for mq in q.images() {
            let mut m = Matrix::zeros(l, n, n);
            for k in 0..dq {
                for ll in 0..dq {
                    let c = mq.get(k, ll);
                    if l.is_zero(c) {
                        continue;
                    }
                    let pc = self.phi(c);
                    for i in 0..dp {
                        for j in 0..dp {
                            m.set(i * dq + k, j * dq + ll, pc.get(i, j).clone());
                        }
                    }
                }
            }
            images.push(m);
        }
        Bimodule::unchecked(l, n, images)
    }

    /// `k`-fold tensor power (`k ≥ 1`).
    pub fn tensor_power(&self, k: usize) -> Result<Bimodule> {
        let mut p = self.clone();
        for _ in 1..k {
            p = p.tensor(self)?;
        }
        Ok(p)
    }

    pub fn direct_sum(&self, q: &Bimodule) -> Result<Bimodule> {
        Ok(Bimodule {
            rep: self.rep.direct_sum(&q.rep)?,
        })
    }

    /// Conjugated presentation `S φ S⁻¹` of the same bimodule.
    pub fn conjugate(&self, s: &Matrix) -> Result<Bimodule> {
        Ok(Bimodule {
            rep: self.rep.conjugate(s)?,
        })
    }

    /// `E ⊗_L P ⊗_L E` as an `E`-bimodule, for a tower `E` having `L` as a layer.
    pub fn base_change(&self, e: &Field) -> Result<Bimodule> {
        let l = self.field();
        if e == l {
            return Ok(self.clone());
        }
        if !e.contains_layer(l) || e.base() != l.base() {
            return Err(Error::Invalid("the new field must be a tower over L".into()));
        }
        let sub = Subfield::new(Morphism::layer_inclusion(l, e));
        let rb = RelativeBasis::new(&sub)?;
        let d = self.rank();
        let k = rb.len();
        let n = d * k;
        let mut images = Vec::new();
        for g in e.generators_above_base() {
            let me = rb.mult_matrix(&g);
            let mut m = Matrix::zeros(e, n, n);
            for a in 0..k {
                for b in 0..k {
                    let c = me.get(a, b);
                    if l.is_zero(c) {
                        continue;
                    }
                    let pc = self.phi(c);
                    for i in 0..d {
                        for j in 0..d {
                            m.set(i * k + a, j * k + b, e.embed_from(l, pc.get(i, j)));
                        }
                    }
                }
            }
            images.push(m);
        }
        Bimodule::unchecked(e, n, images)
    }

    /// `P` viewed as an `F`-bimodule for a subfield `B ⊆ F ⊆ L`.
    pub fn restrict(&self, sub: &Subfield) -> Result<Bimodule> {
        let l = self.field();
        if sub.ambient() != l {
            return Err(Error::FieldMismatch);
        }
        let f = sub.field().clone();
        let rb = RelativeBasis::new(sub)?;
        let d = self.rank();
        let k = rb.len();
        let n = d * k;
        let mut images = Vec::new();
        for g in f.generators_above_base() {
            let pg = self.phi(&sub.inclusion().apply(&g));
            let mut m = Matrix::zeros(&f, n, n);
            for i in 0..d {
                for j in 0..d {
                    let c = rb.mult_matrix(pg.get(i, j));
                    for a in 0..k {
                        for b in 0..k {
                            m.set(i * k + a, j * k + b, c.get(a, b).clone());
                        }
                    }
                }
            }
            images.push(m);
        }
        Bimodule::unchecked(&f, n, images)
    }

    /// `M(D)` for a derivation in positive characteristic.
    pub fn m_of_d(d: &Derivation) -> Result<Bimodule> {
        d.m_of_d()
    }

    pub fn center(&self) -> Result<Subfield> {
        center_kernel(&self.rep)
    }

    /// Minimal polynomial of the right action of `a`.
    pub fn min_poly_right(&self, a: &Value) -> Result<Poly> {
        self.phi(a).min_poly()
    }

    /// Characteristic polynomial of the right action of `a`, checked to be a
    /// power of the minimal polynomial.
    pub fn char_poly_right(&self, a: &Value) -> Result<Poly> {
        let m = self.phi(a);
        let chi = m.char_poly()?;
        let mu = m.min_poly()?;
        let dm = mu.degree().unwrap();
        if dm == 0 || self.rank() % dm != 0 || mu.pow((self.rank() / dm) as u64) != chi {
            return Err(Error::NotAPower);
        }
        Ok(chi)
    }

    /// Basis of `Hom(P, Q)`: matrices `T` with `φ_P(a) T = T φ_Q(a)`.
    pub fn hom_space(&self, q: &Bimodule) -> Result<Vec<Matrix>> {
        let l = self.field();
        if q.field() != l {
            return Err(Error::FieldMismatch);
        }
        let (dp, dq) = (self.rank(), q.rank());
        let mut rows = Vec::new();
        for (mp, mq) in self.images().iter().zip(q.images()) {
            for i in 0..dp {
                for c in 0..dq {
                    let mut row = vec![l.zero(); dp * dq];
                    for j in 0..dp {
                        l.add_assign(&mut row[j * dq + c], mp.get(i, j));
                    }
                    for j in 0..dq {
                        l.sub_assign(&mut row[i * dq + j], mq.get(j, c));
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            let n = dp * dq;
            return Ok((0..n)
                .map(|i| {
                    let mut v = vec![l.zero(); n];
                    v[i] = l.one();
                    Matrix::from_vec(l, dp, dq, v)
                })
                .collect());
        }
        let sys = Matrix::from_rows(l, rows);
        Ok(sys
            .kernel()?
            .into_iter()
            .map(|v| Matrix::from_vec(l, dp, dq, v))
            .collect())
    }

    /// Searches the hom space for an invertible element over a grid of sample
    /// coefficients from the base; `None` when the search is exhausted.
    pub fn find_isomorphism(&self, q: &Bimodule) -> Result<Option<Matrix>> {
        if self.rank() != q.rank() {
            return Ok(None);
        }
        let homs = self.hom_space(q)?;
        if homs.is_empty() {
            return Ok(if self.rank() == 0 { Some(Matrix::zeros(self.field(), 0, 0)) } else { None });
        }
        let l = self.field();
        let scalars = sample_scalars(&self.base(), 8);
        for combo in integer_combinations(homs.len()).take(4000) {
            if combo.iter().any(|&c| c.unsigned_abs() as usize >= scalars.len()) {
                continue;
            }
            let mut t = Matrix::zeros(l, self.rank(), self.rank());
            for (c, h) in combo.iter().zip(&homs) {
                if *c != 0 {
                    let s = l.embed_from(&self.base(), &scalars[c.unsigned_abs() as usize]);
                    let s = if *c < 0 { l.neg(&s) } else { s };
                    t = t.add(&h.scale(&s));
                }
            }
            if !l.is_zero(&t.det()?) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

/// Distinct base elements `0, 1, …`: integers in characteristic zero, and in
/// characteristic `p` also polynomials in the base variable when there is one.
fn sample_scalars(b: &Field, count: usize) -> Vec<Value> {
    let p = b.characteristic();
    let mut out = vec![b.zero()];
    let t = b.generator();
    let mut k: i64 = 1;
    while out.len() < count {
        let mut cand = b.from_i64(k);
        if p > 0 && (k as u64) >= p {
            if let Some(t) = &t {
                cand = b.add(&b.pow(t, k as u64 / p), &b.from_i64(k % p as i64));
            } else {
                break;
            }
        }
        if !out.contains(&cand) {
            out.push(cand);
        }
        k += 1;
    }
    out
}
