//! Bimodules over `⊕ Mat_{m_i}(L_i)` and their corner reductions.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fields::Subfield;
use crate::kernel::{Matrix, Poly, Value};
use crate::linalg::MatRep;

use super::{commsem_classify, CommsemData, MultiBimodule, MultiField};

/// One block `Q_ij`, left free over `L_i`. All maps act on row vectors:
/// `E·v = v Λ(E)`, `v·E = v R(E)` and `v·y = v φ(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBlock {
    /// `Λ(E_ab)` at `a·m_i + b`.
    pub left_units: Vec<Matrix>,
    /// `R(E_ab)` at `a·m_j + b`.
    pub right_units: Vec<Matrix>,
    pub action: MatRep,
}

impl MatrixBlock {
    pub fn rank(&self) -> usize {
        self.action.dim()
    }

    /// Change of left basis by an invertible `S`.
    pub fn conjugate(&self, s: &Matrix) -> Result<MatrixBlock> {
        let inv = s.inverse()?;
        let c = |m: &Matrix| s.mul(m).mul(&inv);
        Ok(MatrixBlock {
            left_units: self.left_units.iter().map(c).collect(),
            right_units: self.right_units.iter().map(c).collect(),
            action: self.action.conjugate(s)?,
        })
    }

    fn verify(&self, mi: usize, mj: usize) -> Result<()> {
        let f = self.action.target();
        let n = self.rank();
        if self.left_units.len() != mi * mi || self.right_units.len() != mj * mj {
            return Err(Error::Invalid("one matrix per elementary matrix".into()));
        }
        let units = |u: &[Matrix], m: usize, anti: bool| -> Result<()> {
            let mut sum = Matrix::zeros(f, n, n);
            for a in 0..m {
                sum = sum.add(&u[a * m + a]);
                for b in 0..m {
                    for c in 0..m {
                        for e in 0..m {
                            let prod = if anti {
                                u[c * m + e].mul(&u[a * m + b])
                            } else {
                                u[a * m + b].mul(&u[c * m + e])
                            };
                            let expect = if b == c { u[a * m + e].clone() } else { Matrix::zeros(f, n, n) };
                            if prod != expect {
                                return Err(Error::NotAHomomorphism("matrix units are not respected".into()));
                            }
                        }
                    }
                }
            }
            if !sum.is_identity() {
                return Err(Error::NotAHomomorphism("Σ E_aa does not act as 1".into()));
            }
            Ok(())
        };
        units(&self.left_units, mi, true)?;
        units(&self.right_units, mj, false)?;
        for l in &self.left_units {
            if !self.right_units.iter().chain(self.action.images()).all(|m| l.commutes_with(m)) {
                return Err(Error::NotAHomomorphism("left and right actions do not commute".into()));
            }
        }
        for r in &self.right_units {
            if !self.action.images().iter().all(|m| r.commutes_with(m)) {
                return Err(Error::NotAHomomorphism("right actions do not commute".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebraBimodule {
    fields: MultiField,
    sizes: Vec<usize>,
    blocks: Vec<Vec<Option<MatrixBlock>>>,
}

impl MatrixAlgebraBimodule {
    pub fn new(fields: MultiField, sizes: Vec<usize>, blocks: Vec<Vec<Option<MatrixBlock>>>) -> Result<Self> {
        let n = fields.len();
        if sizes.len() != n || sizes.contains(&0) {
            return Err(Error::Invalid("one positive size per component".into()));
        }
        if blocks.len() != n || blocks.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("expected an {n}×{n} array of blocks")));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    if b.action.source() != fields.component(j) || b.action.target() != fields.component(i) {
                        return Err(Error::FieldMismatch);
                    }
                    b.verify(sizes[i], sizes[j])?;
                }
            }
        }
        Ok(MatrixAlgebraBimodule { fields, sizes, blocks })
    }

    /// `Q_ij = L_i^{m_i} ⊗ P_ij ⊗ L_j^{m_j}`, basis `e_c ⊗ w_k ⊗ f_e` at
    /// `(c·p + k)·m_j + e`.
    pub fn inflate(p: &MultiBimodule, sizes: &[usize]) -> Result<MatrixAlgebraBimodule> {
        let n = p.n();
        if sizes.len() != n {
            return Err(Error::Invalid("one size per component".into()));
        }
        let mut blocks = vec![vec![None; n]; n];
        for (i, row) in blocks.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let Some(rep) = p.block(i, j) else { continue };
                let f = rep.target();
                let (mi, mj, k) = (sizes[i], sizes[j], rep.dim());
                let size = mi * k * mj;
                let idx = |c: usize, w: usize, e: usize| (c * k + w) * mj + e;
                let mut left_units = Vec::with_capacity(mi * mi);
                for a in 0..mi {
                    for b in 0..mi {
                        let mut m = Matrix::zeros(f, size, size);
                        for w in 0..k {
                            for e in 0..mj {
                                m.set(idx(b, w, e), idx(a, w, e), f.one());
                            }
                        }
                        left_units.push(m);
                    }
                }
                let mut right_units = Vec::with_capacity(mj * mj);
                for a in 0..mj {
                    for b in 0..mj {
                        let mut m = Matrix::zeros(f, size, size);
                        for c in 0..mi {
                            for w in 0..k {
                                m.set(idx(c, w, a), idx(c, w, b), f.one());
                            }
                        }
                        right_units.push(m);
                    }
                }
                let (ii, ij) = (Matrix::identity(f, mi), Matrix::identity(f, mj));
                let images = rep.images().iter().map(|g| ii.kron(g).kron(&ij)).collect();
                *cell = Some(MatrixBlock {
                    left_units,
                    right_units,
                    action: MatRep::new_unchecked(rep.source(), f, size, images)?,
                });
            }
        }
        MatrixAlgebraBimodule::new(p.fields().clone(), sizes.to_vec(), blocks)
    }

    pub fn fields(&self) -> &MultiField {
        &self.fields
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&MatrixBlock> {
        self.blocks[i][j].as_ref()
    }

    pub fn m_star(&self) -> usize {
        self.sizes.iter().fold(0, |g, m| g.gcd(m))
    }

    /// The same bimodule with block `(i, j)` presented in another left basis.
    pub fn conjugate_block(&self, i: usize, j: usize, s: &Matrix) -> Result<MatrixAlgebraBimodule> {
        let mut blocks = self.blocks.clone();
        if let Some(b) = &self.blocks[i][j] {
            blocks[i][j] = Some(b.conjugate(s)?);
        }
        MatrixAlgebraBimodule::new(self.fields.clone(), self.sizes.clone(), blocks)
    }

    /// Rank over `B`: `Σ_j dim_{L_i} Q_ij = d·m_i²` for every `i` and
    /// `Σ_i dim_{L_j} Q_ij = d·m_j²` for every `j`, with the same `d`.
    pub fn rank(&self) -> Result<usize> {
        let n = self.fields.len();
        let deg: Vec<usize> = self.fields.components().iter().map(|f| f.degree_over_base()).collect();
        let left = |i: usize, j: usize| self.block(i, j).map_or(0, |b| b.rank());
        let mut d = None;
        let mut check = |total: usize, m: usize| -> Result<()> {
            let m2 = m * m;
            if total % m2 != 0 || d.is_some_and(|x| x != total / m2) {
                return Err(Error::Invalid("Q is not free of one rank d on both sides".into()));
            }
            d = Some(total / m2);
            Ok(())
        };
        for i in 0..n {
            check((0..n).map(|j| left(i, j)).sum(), self.sizes[i])?;
        }
        for j in 0..n {
            check((0..n).map(|i| left(i, j) * deg[i] / deg[j]).sum(), self.sizes[j])?;
        }
        Ok(d.unwrap_or(0))
    }

    /// `E_11 Q_ij E_11` with the induced right action of `L_j`.
    pub fn morita_reduce(&self) -> Result<MultiBimodule> {
        let n = self.fields.len();
        let mut blocks = vec![vec![None; n]; n];
        for (i, row) in blocks.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let Some(b) = self.block(i, j) else { continue };
                let proj = b.left_units[0].mul(&b.right_units[0]);
                let rr = proj.rref()?;
                let k = rr.pivots.len();
                if k == 0 {
                    continue;
                }
                let basis: Vec<Vec<Value>> = (0..k).map(|r| rr.matrix.row(r)).collect();
                let f = b.action.target();
                let images = b
                    .action
                    .images()
                    .iter()
                    .map(|g| {
                        // the rref basis has identity columns at the pivots
                        let rows = basis
                            .iter()
                            .map(|v| {
                                let w = g.vec_mul(v);
                                rr.pivots.iter().map(|&c| w[c].clone()).collect()
                            })
                            .collect();
                        Matrix::from_rows(f, rows)
                    })
                    .collect();
                *cell = Some(MatRep::new(b.action.source(), f, k, images)?);
            }
        }
        MultiBimodule::new(self.fields.clone(), blocks)
    }
}

#[derive(Clone, Debug)]
pub struct CharPolyFamily {
    /// `χ_{φ_i(a)}^{m²/m_i²}` over `L_i`.
    pub polys: Vec<Poly>,
    pub exponents: Vec<usize>,
    /// The common polynomial over the center, when every coefficient of
    /// every component descends and the descents agree.
    pub over_center: Option<Poly>,
    pub in_center: bool,
    pub agree: bool,
    pub classification: CommsemData,
}

/// The family `χ_a` for `a = (a_1, …, a_n)` with `a_j ∈ L_j`.
pub fn char_poly_family(q: &MatrixAlgebraBimodule, a: &[Value]) -> Result<CharPolyFamily> {
    let n = q.fields.len();
    if a.len() != n {
        return Err(Error::Invalid("one element per component".into()));
    }
    let data = commsem_classify(&q.morita_reduce()?)?;
    let m = q.sizes.iter().fold(1, |l, x| l.lcm(x));
    let mut polys = Vec::with_capacity(n);
    let mut exponents = Vec::with_capacity(n);
    let mut descents = Vec::with_capacity(n);
    for i in 0..n {
        let li = q.fields.component(i);
        let mut chi = Poly::one(li);
        for (j, aj) in a.iter().enumerate() {
            if let Some(b) = q.block(i, j) {
                chi = chi.mul(&b.action.apply(aj).char_poly()?);
            }
        }
        let e = (m / q.sizes[i]).pow(2);
        let p = chi.pow(e as u64);
        let sub = Subfield::new(data.embeddings[i].clone());
        let mut coeffs = Vec::new();
        for c in p.coeffs() {
            coeffs.push(sub.preimage(c)?);
        }
        descents.push(coeffs);
        polys.push(p);
        exponents.push(e);
    }
    let in_center = descents.iter().flatten().all(|c| c.is_some());
    let agree = in_center && descents.windows(2).all(|w| w[0] == w[1]);
    let over_center = if agree {
        Some(Poly::new(&data.center, descents[0].iter().map(|c| c.clone().unwrap()).collect()))
    } else {
        None
    };
    Ok(CharPolyFamily {
        polys,
        exponents,
        over_center,
        in_center,
        agree,
        classification: data,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixDivisibility {
    /// `Σ d_i (m_i/m_*)²`.
    pub sum: usize,
    pub d: usize,
    pub quotient: usize,
}

/// `Σ d_i (m_i/m_*)²` divides the rank `d`.
pub fn divisibility_check(q: &MatrixAlgebraBimodule) -> Result<MatrixDivisibility> {
    let data = commsem_classify(&q.morita_reduce()?)?;
    let ms = q.m_star();
    let sum: usize = data
        .degrees
        .iter()
        .zip(&q.sizes)
        .map(|(d, m)| d * (m / ms) * (m / ms))
        .sum();
    let d = q.rank()?;
    if d % sum != 0 {
        return Err(Error::Violated(format!("Σ d_i (m_i/m_*)² = {sum} does not divide d = {d}")));
    }
    Ok(MatrixDivisibility { sum, d, quotient: d / sum })
}
