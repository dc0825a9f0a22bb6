//! Coactions on a field `L` finite over an invariant base `B`.

use crate::bimod::Bimodule;
use crate::error::{Error, Result};
use crate::fields::{automorphisms, AutomorphismGroup, Morphism, SplitContext, Subfield};
use crate::hopf::HopfAlgebra;
use crate::kernel::{Field, Matrix, Poly, Value};

use super::certificate::IntegralityCertificate;

/// `ρ` on the generators of `L` above `B`, each given as its coordinates in
/// `L ⊗ K` along the basis of `K`; `ρ(b) = b ⊗ 1` on the base.
#[derive(Clone, Debug)]
pub struct FieldCoaction {
    l: Field,
    hopf: HopfAlgebra,
    gens: Vec<Vec<Value>>,
    // K's tensors with scalars moved into L
    kmult: Vec<Vec<Vec<(usize, Value)>>>,
    kunit: Vec<Value>,
    sinv: Matrix,
}

impl FieldCoaction {
    pub fn new(l: &Field, k: &HopfAlgebra, gens: Vec<Vec<Value>>) -> Result<FieldCoaction> {
        let c = FieldCoaction::new_unchecked(l, k, gens)?;
        c.verify()?;
        Ok(c)
    }

    pub fn new_unchecked(l: &Field, k: &HopfAlgebra, gens: Vec<Vec<Value>>) -> Result<FieldCoaction> {
        let kf = k.field();
        if !l.contains_layer(kf) {
            return Err(Error::FieldMismatch);
        }
        if gens.len() != l.layers_above_base().len() || gens.iter().any(|g| g.len() != k.dim()) {
            return Err(Error::Invalid("one vector in L ⊗ K per generator above the base".into()));
        }
        let up = |c: &Value| l.embed_from(kf, c);
        let kmult = k
            .algebra()
            .table()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|(r, c)| (*r, up(c))).collect())
                    .collect()
            })
            .collect();
        let kunit = k.one().iter().map(up).collect();
        let sinv = k.antipode_inverse()?.map(l, up);
        Ok(FieldCoaction {
            l: l.clone(),
            hopf: k.clone(),
            gens,
            kmult,
            kunit,
            sinv,
        })
    }

    /// `ρ(a) = a ⊗ 1`.
    pub fn trivial(l: &Field, k: &HopfAlgebra) -> Result<FieldCoaction> {
        let kf = k.field();
        let one: Vec<Value> = k.one().iter().map(|c| l.embed_from(kf, c)).collect();
        let gens = l
            .generators_above_base()
            .iter()
            .map(|g| one.iter().map(|c| l.mul(c, g)).collect())
            .collect();
        FieldCoaction::new(l, k, gens)
    }

    /// The coaction of the function algebra `Fun(G)` induced by automorphisms:
    /// `ρ(a) = Σ_g g(a) ⊗ δ_g`, with `Fun(G)` over the base of `L`.
    pub fn from_automorphisms(g: &AutomorphismGroup) -> Result<FieldCoaction> {
        let l = g.field();
        let b = l.base();
        let k = crate::hopf::group_algebra(&b, g.group())?.dual()?;
        let gens = l
            .generators_above_base()
            .iter()
            .map(|x| g.elements().iter().map(|s| s.apply(x)).collect())
            .collect();
        FieldCoaction::new(l, &k, gens)
    }

    pub fn field(&self) -> &Field {
        &self.l
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn generator_images(&self) -> &[Vec<Value>] {
        &self.gens
    }

    fn dk(&self) -> usize {
        self.hopf.dim()
    }

    /// Product in `L ⊗ K`.
    pub fn lk_mul(&self, u: &[Value], v: &[Value]) -> Vec<Value> {
        let l = &self.l;
        let mut out = vec![l.zero(); self.dk()];
        for (s, a) in u.iter().enumerate() {
            if l.is_zero(a) {
                continue;
            }
            for (t, b) in v.iter().enumerate() {
                if l.is_zero(b) {
                    continue;
                }
                let ab = l.mul(a, b);
                for (r, c) in &self.kmult[s][t] {
                    l.add_assign(&mut out[*r], &l.mul(&ab, c));
                }
            }
        }
        out
    }

    /// `a ⊗ 1`.
    pub fn scalar(&self, a: &Value) -> Vec<Value> {
        self.kunit.iter().map(|c| self.l.mul(a, c)).collect()
    }

    /// `ρ` on an element of a layer of `L`, by Horner evaluation of its
    /// polynomial representative; well defined once the relations vanish.
    fn rho_in(&self, layer: &Field, a: &Value) -> Vec<Value> {
        let l = &self.l;
        let base_depth = l.base().depth();
        match (layer.kind(), a) {
            (crate::kernel::Kind::Extension { parent, .. }, Value::Ext(coords)) => {
                let k = layer.depth() - base_depth - 1;
                let g = &self.gens[k];
                let mut acc = vec![l.zero(); self.dk()];
                for c in coords.iter().rev() {
                    acc = self.lk_mul(&acc, g);
                    let rc = self.rho_in(parent, c);
                    for (x, y) in acc.iter_mut().zip(&rc) {
                        l.add_assign(x, y);
                    }
                }
                acc
            }
            _ => self.scalar(&l.embed_from(layer, a)),
        }
    }

    pub fn apply(&self, a: &Value) -> Vec<Value> {
        self.rho_in(&self.l, a)
    }

    fn verify(&self) -> Result<()> {
        let l = &self.l;
        let dk = self.dk();
        let kf = self.hopf.field();
        for (k, layer) in l.layers_above_base().iter().enumerate() {
            let (parent, modulus) = match layer.kind() {
                crate::kernel::Kind::Extension { parent, modulus, .. } => (parent, modulus),
                _ => unreachable!(),
            };
            let g = &self.gens[k];
            let mut acc = vec![l.zero(); dk];
            for c in modulus.iter().rev() {
                acc = self.lk_mul(&acc, g);
                let rc = self.rho_in(parent, c);
                for (x, y) in acc.iter_mut().zip(&rc) {
                    l.add_assign(x, y);
                }
            }
            if acc.iter().any(|x| !l.is_zero(x)) {
                let shown: Vec<String> = acc
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !l.is_zero(x))
                    .map(|(s, x)| format!("({})⊗{}", l.fmt_value(x), self.hopf.algebra().names()[s]))
                    .collect();
                return Err(Error::AxiomViolation(format!(
                    "ρ does not kill the relation of {}: it maps to {}",
                    layer.var_name().unwrap_or("?"),
                    shown.join(" + ")
                )));
            }
        }
        let up = |c: &Value| l.embed_from(kf, c);
        for (k, (g, img)) in l.generators_above_base().iter().zip(&self.gens).enumerate() {
            let name = l.layers_above_base()[k].var_name().unwrap_or("?").to_string();
            let mut left = vec![l.zero(); dk * dk];
            let mut right = vec![l.zero(); dk * dk];
            let mut counit = l.zero();
            for (t, a) in img.iter().enumerate() {
                if l.is_zero(a) {
                    continue;
                }
                for (s, x) in self.apply(a).iter().enumerate() {
                    l.add_assign(&mut left[s * dk + t], x);
                }
                for ((s, u), c) in &self.hopf.comult_table()[t] {
                    l.add_assign(&mut right[s * dk + u], &l.mul(a, &up(c)));
                }
                l.add_assign(&mut counit, &l.mul(a, &up(&self.hopf.counit_vector()[t])));
            }
            if left != right {
                return Err(Error::AxiomViolation(format!("coassociativity fails on {name}")));
            }
            if &counit != g {
                return Err(Error::AxiomViolation(format!("counit law fails on {name}")));
            }
        }
        Ok(())
    }

    /// Expands a vector of `L ⊗ K` into base coordinates, index `j·d_K + r`.
    fn base_expand(&self, v: &[Value]) -> Vec<Value> {
        let n = self.l.degree_over_base();
        let dk = self.dk();
        let mut out = vec![self.l.base().zero(); n * dk];
        for (r, x) in v.iter().enumerate() {
            for (j, c) in self.l.to_base_coords(x).into_iter().enumerate() {
                out[j * dk + r] = c;
            }
        }
        out
    }

    /// `L^K` as a subfield of `L`.
    pub fn invariants(&self) -> Result<Subfield> {
        let l = &self.l;
        let b = l.base();
        let basis = l.base_basis();
        let cols: Vec<Vec<Value>> = basis
            .iter()
            .map(|m| {
                let mut r = self.apply(m);
                for (x, y) in r.iter_mut().zip(self.scalar(m)) {
                    *x = l.sub(x, &y);
                }
                self.base_expand(&r)
            })
            .collect();
        let m = Matrix::from_columns(&b, basis.len() * self.dk(), &cols);
        let ker = m.kernel()?;
        Subfield::from_subspace(l, &ker, "inv")
    }

    /// `P = L ⊗ K` with left basis `1 ⊗ k_t` and right action through `ρ`:
    /// `φ(a)_{t,r} = Σ_s a_s m_{ts}^r`.
    pub fn bimodule(&self) -> Result<Bimodule> {
        let images = self.gens.iter().map(|g| self.phi_of_image(g)).collect();
        Bimodule::new(&self.l, self.dk(), images)
    }

    fn phi_of_image(&self, a: &[Value]) -> Matrix {
        let l = &self.l;
        let dk = self.dk();
        let mut m = Matrix::zeros(l, dk, dk);
        for t in 0..dk {
            let mut e = vec![l.zero(); dk];
            e[t] = l.one();
            let row = self.lk_mul(&e, a);
            for (r, x) in row.into_iter().enumerate() {
                m.set(t, r, x);
            }
        }
        m
    }

    /// `ψ(a ⊗ y) = (1 ⊗ y)ρ(a)` and `ξ(a ⊗ y) = (1 ⊗ y)(1 ⊗ S⁻¹)ρ(a)` as
    /// base-linear maps on `L ⊗ K`, basis `m_i ⊗ k_t` at `i·d_K + t`.
    pub fn psi_xi(&self) -> Result<(Matrix, Matrix)> {
        let l = &self.l;
        let dk = self.dk();
        let basis = l.base_basis();
        let n = basis.len();
        let mut psi_cols = Vec::with_capacity(n * dk);
        let mut xi_cols = Vec::with_capacity(n * dk);
        for m in &basis {
            let r = self.apply(m);
            let r_s: Vec<Value> = {
                // (1 ⊗ S⁻¹) on the K factor
                let mut out = vec![l.zero(); dk];
                for (s, a) in r.iter().enumerate() {
                    if l.is_zero(a) {
                        continue;
                    }
                    for (u, x) in self.sinv.column(s).iter().enumerate() {
                        if !l.is_zero(x) {
                            l.add_assign(&mut out[u], &l.mul(a, x));
                        }
                    }
                }
                out
            };
            for t in 0..dk {
                let mut e = vec![l.zero(); dk];
                e[t] = l.one();
                psi_cols.push(self.base_expand(&self.lk_mul(&e, &r)));
                xi_cols.push(self.base_expand(&self.lk_mul(&e, &r_s)));
            }
        }
        let b = l.base();
        Ok((
            Matrix::from_columns(&b, n * dk, &psi_cols),
            Matrix::from_columns(&b, n * dk, &xi_cols),
        ))
    }

    /// `τ(a ⊗ y ⊗ y') = a ⊗ y₁ ⊗ y' S⁻¹(y₂)` from `P ⊗_L P` (basis
    /// `e_s ⊗ e_t` at `s·d + t`) to `P ⊗ K`, as a row-convention matrix over `L`.
    pub fn tau(&self) -> Matrix {
        let l = &self.l;
        let kf = self.hopf.field();
        let d = self.dk();
        let mut m = Matrix::zeros(l, d * d, d * d);
        for s in 0..d {
            for ((a, b), c) in &self.hopf.comult_table()[s] {
                let c = l.embed_from(kf, c);
                let sb = self.sinv.column(*b);
                for t in 0..d {
                    let mut e = vec![l.zero(); d];
                    e[t] = l.one();
                    let prod = self.lk_mul(&e, &sb);
                    for (r, x) in prod.iter().enumerate() {
                        if !l.is_zero(x) {
                            let cur = m.get(s * d + t, a * d + r).clone();
                            m.set(s * d + t, a * d + r, l.add(&cur, &l.mul(&c, x)));
                        }
                    }
                }
            }
        }
        m
    }

    /// Checks `ψξ = ξψ = id` and that `τ` is a bijective bimodule map.
    pub fn verify_psi_xi_tau(&self) -> Result<PsiXiReport> {
        let (psi, xi) = self.psi_xi()?;
        let psi_xi = psi.mul(&xi).is_identity();
        let xi_psi = xi.mul(&psi).is_identity();
        if !psi_xi || !xi_psi {
            return Err(Error::NotInvertible("ξ is not inverse to ψ".into()));
        }
        let p = self.bimodule()?;
        let pp = p.tensor(&p)?;
        let t = self.tau();
        let d = self.dk();
        let tau_rank = t.rank()?;
        let id = Matrix::identity(&self.l, d);
        let tau_intertwines = pp
            .images()
            .iter()
            .zip(p.images())
            .all(|(a, b)| a.mul(&t) == t.mul(&b.kron(&id)));
        if tau_rank != d * d {
            return Err(Error::NotInvertible(format!("τ has rank {tau_rank} < {}", d * d)));
        }
        Ok(PsiXiReport {
            dimension: psi.rows(),
            psi_xi,
            xi_psi,
            tau_rank,
            tau_intertwines,
        })
    }

    /// Minimal polynomial of `φ(z)` on `P`, with coefficients tested against
    /// `L^K`.
    pub fn integrality_certificate(&self, z: &Value) -> Result<IntegralityCertificate> {
        let l = &self.l;
        let inv = self.invariants()?;
        let p = self.bimodule()?;
        let mu = p.min_poly_right(z)?;
        let mut invariant = true;
        for c in mu.coeffs() {
            invariant &= inv.contains(c)?;
        }
        let annihilates = l.is_zero(&mu.eval(z));
        Ok(IntegralityCertificate {
            element: l.fmt_value(z),
            monic: mu.is_monic(),
            poly: mu,
            coefficients_in_z: true,
            coefficients_invariant: invariant,
            annihilates,
        })
    }

    /// `[L : L^K]` divides `dim K`.
    pub fn divisibility(&self) -> Result<Divisibility> {
        let index = self.invariants()?.index();
        let dim = self.dk();
        if dim % index != 0 {
            return Err(Error::Violated(format!("[L : L^K] = {index} does not divide dim K = {dim}")));
        }
        Ok(Divisibility {
            index,
            dim,
            quotient: dim / index,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiXiReport {
    /// Dimension over the base of `L ⊗ K`.
    pub dimension: usize,
    pub psi_xi: bool,
    pub xi_psi: bool,
    pub tau_rank: usize,
    pub tau_intertwines: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub index: usize,
    pub dim: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug)]
pub struct CoactionGroup {
    pub invariants: Subfield,
    pub group: AutomorphismGroup,
    /// `|G| = [E : L^K]`.
    pub normal: bool,
}

/// `Gal(E/L^K)` for `E` the context field, a normal closure of `L` over `L^K`.
pub fn galois_group_of_coaction(c: &FieldCoaction, ctx: &SplitContext) -> Result<CoactionGroup> {
    let e = ctx.field();
    let l = c.field();
    if !e.contains_layer(l) {
        return Err(Error::FieldMismatch);
    }
    let inv = c.invariants()?;
    let into_e = Morphism::layer_inclusion(l, e);
    let inv_e = Subfield::new(into_e.compose(inv.inclusion())?);
    let group = automorphisms(e, Some(&inv_e), ctx)?;
    let normal = group.order() * inv.degree_over_base() == e.degree_over_base();
    if !normal {
        return Err(Error::Invalid(format!(
            "the supplied field is not normal over the invariants: {} automorphisms, degree {}",
            group.order(),
            e.degree_over_base() / inv.degree_over_base()
        )));
    }
    Ok(CoactionGroup {
        invariants: inv,
        group,
        normal,
    })
}

/// Coefficients of `f` as a polynomial over `sub`, if they all lie there.
pub fn descend(f: &Poly, sub: &Subfield) -> Result<Option<Poly>> {
    let mut out = Vec::new();
    for c in f.coeffs() {
        match sub.preimage(c)? {
            Some(x) => out.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Poly::new(sub.field(), out)))
}
