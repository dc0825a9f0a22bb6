//! Bimodules over finite products of fields `L = L_1 ⊕ … ⊕ L_n`, and over
//! products of matrix algebras `⊕ Mat_{m_i}(L_i)` through corner reduction.
//!
//! Block `(i, j)` is an `(L_i, L_j)`-bimodule, left free over `L_i`, stored as
//! a homomorphism `L_j → Mat_{p_ij}(L_i)` in the row convention of
//! [`crate::bimod`]. Isomorphism of blocks is decided by characteristic
//! polynomials of a primitive element, which is complete for separable
//! extensions.

mod fp;
mod matrix;

pub use fp::{lemma_fp, random_idempotent_block, RationalMatrix};
pub use matrix::{char_poly_family, divisibility_check, CharPolyFamily, MatrixAlgebraBimodule, MatrixBlock, MatrixDivisibility};

use num_integer::Integer;

use crate::bimod::Bimodule;
use crate::error::{Error, Result};
use crate::fields::{Morphism, Primitive, RelativeBasis, Subfield};
use crate::kernel::{Field, Matrix, Poly};
use crate::linalg::MatRep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiField {
    components: Vec<Field>,
}

impl MultiField {
    pub fn new(components: Vec<Field>) -> Result<MultiField> {
        let Some(first) = components.first() else {
            return Err(Error::Invalid("a multifield needs at least one component".into()));
        };
        if components.iter().any(|f| f.characteristic() != first.characteristic()) {
            return Err(Error::Invalid("components have different characteristics".into()));
        }
        Ok(MultiField { components })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize) -> &Field {
        &self.components[i]
    }

    pub fn components(&self) -> &[Field] {
        &self.components
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiBimodule {
    fields: MultiField,
    /// `blocks[i][j]`: `L_j → Mat(L_i)`, `None` for a zero block.
    blocks: Vec<Vec<Option<MatRep>>>,
}

impl MultiBimodule {
    /// Checks the shape of every block; each nonzero block is verified as a
    /// homomorphism when it is built through [`MatRep::new`].
    pub fn new(fields: MultiField, blocks: Vec<Vec<Option<MatRep>>>) -> Result<MultiBimodule> {
        let n = fields.len();
        if blocks.len() != n || blocks.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("expected an {n}×{n} array of blocks")));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(rep) = b {
                    if rep.source() != fields.component(j) || rep.target() != fields.component(i) {
                        return Err(Error::Invalid(format!("block ({i}, {j}) is over the wrong fields")));
                    }
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|row| row.into_iter().map(|b| b.filter(|r| r.dim() > 0)).collect())
            .collect();
        Ok(MultiBimodule { fields, blocks })
    }

    /// A bimodule over a single field.
    pub fn from_bimodule(p: &Bimodule) -> Result<MultiBimodule> {
        MultiBimodule::new(MultiField::new(vec![p.field().clone()])?, vec![vec![Some(p.rep().clone())]])
    }

    pub fn fields(&self) -> &MultiField {
        &self.fields
    }

    pub fn n(&self) -> usize {
        self.fields.len()
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&MatRep> {
        self.blocks[i][j].as_ref()
    }

    /// `[P]`: left dimension of `P_ij` over `L_i`.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|row| row.iter().map(|b| b.as_ref().map_or(0, |r| r.dim())).collect())
            .collect()
    }

    /// Right dimension of `P_ij` over `L_j`, from base dimensions.
    pub fn right_dims(&self) -> Result<Vec<Vec<usize>>> {
        let dims = self.dims();
        let deg: Vec<usize> = self.fields.components().iter().map(|f| f.degree_over_base()).collect();
        let mut out = vec![vec![0; self.n()]; self.n()];
        for i in 0..self.n() {
            for j in 0..self.n() {
                let total = dims[i][j] * deg[i];
                if total % deg[j] != 0 {
                    return Err(Error::Invalid(format!("block ({i}, {j}) has fractional right dimension")));
                }
                out[i][j] = total / deg[j];
            }
        }
        Ok(out)
    }

    /// `P ⊗_L Q`, with `(P ⊗ Q)_ij = ⊕_k P_ik ⊗_{L_k} Q_kj`.
    pub fn tensor(&self, q: &MultiBimodule) -> Result<MultiBimodule> {
        if self.fields != q.fields {
            return Err(Error::FieldMismatch);
        }
        let n = self.n();
        let mut blocks = vec![vec![None; n]; n];
        for (i, row) in blocks.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc: Option<MatRep> = None;
                for k in 0..n {
                    if let (Some(a), Some(b)) = (self.block(i, k), q.block(k, j)) {
                        let t = tensor_reps(a, b)?;
                        acc = Some(match acc {
                            None => t,
                            Some(s) => s.direct_sum(&t)?,
                        });
                    }
                }
                *cell = acc;
            }
        }
        MultiBimodule::new(self.fields.clone(), blocks)
    }

    /// The sub-bimodule on the components listed in `idx`.
    pub fn restrict_to(&self, idx: &[usize]) -> Result<MultiBimodule> {
        let fields = MultiField::new(idx.iter().map(|&i| self.fields.component(i).clone()).collect())?;
        let blocks = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.blocks[i][j].clone()).collect())
            .collect();
        MultiBimodule::new(fields, blocks)
    }
}

/// `P ⊗_{L_k} Q` for `P: L_k → Mat(L_i)` and `Q: L_j → Mat(L_k)`, with basis
/// `v_a ⊗ w_b` at `a·q + b`.
pub fn tensor_reps(p: &MatRep, q: &MatRep) -> Result<MatRep> {
    if q.target() != p.source() {
        return Err(Error::FieldMismatch);
    }
    let li = p.target();
    let (dp, dq) = (p.dim(), q.dim());
    let n = dp * dq;
    let lk = q.target();
    let mut images = Vec::new();
    for mq in q.images() {
        let mut m = Matrix::zeros(li, n, n);
        for b in 0..dq {
            for c in 0..dq {
                let x = mq.get(b, c);
                if lk.is_zero(x) {
                    continue;
                }
                let px = p.apply(x);
                for a in 0..dp {
                    for e in 0..dp {
                        m.set(a * dq + b, e * dq + c, px.get(a, e).clone());
                    }
                }
            }
        }
        images.push(m);
    }
    MatRep::new_unchecked(q.source(), li, n, images)
}

/// Characteristic polynomial of a primitive element of the source, acting on
/// the right. Equal values mean isomorphic blocks over separable fields.
pub fn block_signature(rep: &MatRep) -> Result<Poly> {
    let theta = Primitive::find(rep.source())?.theta().clone();
    rep.apply(&theta).char_poly()
}

fn blocks_isomorphic(a: Option<&MatRep>, b: Option<&MatRep>) -> Result<bool> {
    match (a, b) {
        (None, None) => Ok(true),
        (Some(x), Some(y)) => Ok(x.dim() == y.dim() && block_signature(x)? == block_signature(y)?),
        _ => Ok(false),
    }
}

/// Blockwise comparison of composition factors.
pub fn multi_isomorphic(p: &MultiBimodule, q: &MultiBimodule) -> Result<bool> {
    if p.fields != q.fields {
        return Ok(false);
    }
    for i in 0..p.n() {
        for j in 0..p.n() {
            if !blocks_isomorphic(p.block(i, j), q.block(i, j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `P ⊗_L P ≅ P^d` at the level of composition factors.
pub fn tensor_square_is_multiple(p: &MultiBimodule, d: usize) -> Result<bool> {
    let pp = p.tensor(p)?;
    for i in 0..p.n() {
        for j in 0..p.n() {
            match (p.block(i, j), pp.block(i, j)) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    if y.dim() != d * x.dim() || block_signature(y)? != block_signature(x)?.pow(d as u64) {
                        return Ok(false);
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    /// `(i, j)` whenever `P_ji ≠ 0`.
    pub edges: Vec<(usize, usize)>,
    /// Connected components, each sorted.
    pub components: Vec<Vec<usize>>,
}

pub fn incidence_graph(p: &MultiBimodule) -> IncidenceGraph {
    let n = p.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p.block(j, i).is_some() {
                edges.push((i, j));
            }
        }
    }
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while l[r] != r {
            r = l[r];
        }
        l[x] = r;
        r
    }
    for &(i, j) in &edges {
        let (a, b) = (find(&mut label, i), find(&mut label, j));
        label[a.max(b)] = a.min(b);
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..n {
        let r = find(&mut label, v);
        match roots.iter().position(|&x| x == r) {
            Some(k) => components[k].push(v),
            None => {
                roots.push(r);
                components.push(vec![v]);
            }
        }
    }
    IncidenceGraph { edges, components }
}

/// Connected pieces of `P` as bimodules over the corresponding components.
pub fn split_components(p: &MultiBimodule) -> Result<Vec<MultiBimodule>> {
    incidence_graph(p)
        .components
        .iter()
        .map(|c| p.restrict_to(c))
        .collect()
}

/// `(L_i ⊗_Z L_j)`, left basis a `Z`-basis of `L_j`.
fn regular_block(psi_i: &Morphism, psi_j: &Morphism) -> Result<MatRep> {
    let li = psi_i.target();
    let lj = psi_j.target();
    let rb = RelativeBasis::new(&Subfield::new(psi_j.clone()))?;
    let images = lj
        .generators_above_base()
        .iter()
        .map(|g| rb.mult_matrix(g).map(li, |c| psi_i.apply(c)))
        .collect();
    MatRep::new(lj, li, rb.len(), images)
}

fn repeat(rep: &MatRep, k: usize) -> Result<Option<MatRep>> {
    let mut acc: Option<MatRep> = None;
    for _ in 0..k {
        acc = Some(match acc {
            None => rep.clone(),
            Some(s) => s.direct_sum(rep)?,
        });
    }
    Ok(acc)
}

/// `⊕_{i,j} (L_i ⊗_Z L_j)^{a_i r_j}` for embeddings `ψ_i: Z → L_i`.
pub fn quasi_galois_construct(z: &Field, psi: &[Morphism], a: &[usize], r: &[usize]) -> Result<MultiBimodule> {
    let n = psi.len();
    if n == 0 || a.len() != n || r.len() != n {
        return Err(Error::Invalid("one embedding, one a_i and one r_j per component".into()));
    }
    if a.iter().chain(r).any(|&x| x == 0) {
        return Err(Error::Invalid("multiplicities must be positive".into()));
    }
    if psi.iter().any(|m| m.source() != z) {
        return Err(Error::FieldMismatch);
    }
    let fields = MultiField::new(psi.iter().map(|m| m.target().clone()).collect())?;
    let mut blocks = vec![vec![None; n]; n];
    for (i, row) in blocks.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = repeat(&regular_block(&psi[i], &psi[j])?, a[i] * r[j])?;
        }
    }
    let p = MultiBimodule::new(fields, blocks)?;
    // type check: p_i = a_i Σ r_j d_j and q_j = r_j Σ a_i d_i
    let d: Vec<usize> = psi.iter().map(|m| m.target().degree_over_base() / z.degree_over_base()).collect();
    let dims = p.dims();
    let right = p.right_dims()?;
    let sum_rd: usize = r.iter().zip(&d).map(|(x, y)| x * y).sum();
    let sum_ad: usize = a.iter().zip(&d).map(|(x, y)| x * y).sum();
    for i in 0..n {
        if dims[i].iter().sum::<usize>() != a[i] * sum_rd || (0..n).map(|k| right[k][i]).sum::<usize>() != r[i] * sum_ad {
            return Err(Error::Invalid("constructed bimodule has the wrong type".into()));
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiGaloisData {
    pub d: usize,
    pub dims: Vec<Vec<usize>>,
    /// `[P]_ij = a_i b_j` with `gcd(a) = 1`.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Checks `[P]² = d[P]` with `[P]` positive of rank one, and factors it.
pub fn verify_quasi_galois(p: &MultiBimodule) -> Result<QuasiGaloisData> {
    let dims = p.dims();
    let n = p.n();
    let d: usize = (0..n).map(|i| dims[i][i]).sum();
    for i in 0..n {
        for j in 0..n {
            let sq: usize = (0..n).map(|k| dims[i][k] * dims[k][j]).sum();
            if sq != d * dims[i][j] {
                return Err(Error::NotQuasiGalois(format!(
                    "[P]² ≠ d[P] at ({i}, {j}): {sq} against {d}·{}",
                    dims[i][j]
                )));
            }
        }
    }
    if dims.iter().flatten().any(|&x| x == 0) {
        return Err(Error::NotQuasiGalois("[P] has a zero entry".into()));
    }
    let g = dims.iter().fold(0, |g, row| g.gcd(&row[0]));
    let a: Vec<usize> = dims.iter().map(|row| row[0] / g).collect();
    let b: Vec<usize> = dims[0].iter().map(|x| x / a[0]).collect();
    if dims[0].iter().any(|x| x % a[0] != 0) {
        return Err(Error::NotQuasiGalois("[P] has no integral rank-one factorization".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if dims[i][j] != a[i] * b[j] {
                return Err(Error::NotQuasiGalois("[P] does not have rank one".into()));
            }
        }
    }
    Ok(QuasiGaloisData { d, dims, a, b })
}

#[derive(Clone, Debug)]
pub struct CommsemData {
    /// The center, as the abstract field `Z` of `ψ_i: Z → L_i`.
    pub center: Field,
    pub embeddings: Vec<Morphism>,
    /// `d_i = [L_i : Z]`.
    pub degrees: Vec<usize>,
    pub a: Vec<usize>,
    pub r: Vec<usize>,
    pub d: usize,
}

/// Recovers `Z`, `ψ`, `a` and `r` with `P ≅ ⊕ (L_i ⊗_Z L_j)^{a_i r_j}`.
pub fn commsem_classify(p: &MultiBimodule) -> Result<CommsemData> {
    let g = incidence_graph(p);
    if g.components.len() != 1 {
        return Err(Error::ClassificationFailed(format!(
            "the bimodule has {} connected components",
            g.components.len()
        )));
    }
    let qg = verify_quasi_galois(p).map_err(|e| Error::ClassificationFailed(e.to_string()))?;
    let n = p.n();
    let p11 = Bimodule::from_rep(p.block(0, 0).unwrap().clone())?;
    let z1 = p11.center()?;
    let z = z1.field().clone();
    let mut embeddings = vec![z1.inclusion().clone()];
    for i in 1..n {
        // z acts on P_i1 from the right as the scalar ψ_i(z) from the left
        let rep = p.block(i, 0).unwrap();
        let li = p.fields().component(i);
        let images = z
            .generators()
            .iter()
            .map(|gen| {
                let m = rep.apply(&z1.inclusion().apply(gen));
                let c = m.get(0, 0).clone();
                if m.is_scalar(&c) {
                    Ok(c)
                } else {
                    Err(Error::ClassificationFailed(format!(
                        "the center does not act by scalars on block ({i}, 0)"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        embeddings.push(Morphism::new(&z, li, images)?);
    }
    let degrees: Vec<usize> = (0..n)
        .map(|i| p.fields().component(i).degree_over_base() / z.degree_over_base())
        .collect();
    let mut r = Vec::with_capacity(n);
    for j in 0..n {
        if qg.b[j] % degrees[j] != 0 {
            return Err(Error::ClassificationFailed(format!(
                "b_{j} = {} is not a multiple of d_{j} = {}",
                qg.b[j], degrees[j]
            )));
        }
        r.push(qg.b[j] / degrees[j]);
    }
    let model = quasi_galois_construct(&z, &embeddings, &qg.a, &r)?;
    if !multi_isomorphic(p, &model)? {
        return Err(Error::ClassificationFailed(
            "composition factors differ from the quasi-Galois model".into(),
        ));
    }
    Ok(CommsemData {
        center: z,
        embeddings,
        degrees,
        a: qg.a,
        r,
        d: qg.d,
    })
}
