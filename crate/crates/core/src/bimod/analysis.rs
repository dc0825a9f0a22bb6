//! Composition factors through characters.
//!
//! After extending scalars on the left to a field `E` containing the
//! eigenvalues, `E ⊗_L P` has a filtration whose factors are `E` with the right
//! action through base-linear homomorphisms `λ: L → E`. With θ primitive for
//! `L` over the base, `λ` is determined by `λ(θ)`, and the values `λ(θ)` are
//! the roots of the characteristic polynomial of `φ(θ)` with multiplicity. For
//! a tensor product the factors of `E_λ ⊗_L Q` are read off from the roots of
//! `λ(χ_Q)`, so `P ⊗ Q` never has to be formed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::{automorphisms, closure, embeddings, AutomorphismGroup, Morphism, Primitive, SplitContext, Subfield};
use crate::kernel::{Field, Matrix, Poly, Value};

use super::Bimodule;

/// A multiset of homomorphisms `L → E`, kept sorted by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characters {
    target: Field,
    entries: Vec<(Morphism, usize)>,
}

impl Characters {
    fn from_entries(target: &Field, mut entries: Vec<(Morphism, usize)>) -> Characters {
        entries.sort_by(|a, b| a.0.images().cmp(b.0.images()));
        let mut merged: Vec<(Morphism, usize)> = Vec::new();
        for (m, k) in entries {
            match merged.last_mut() {
                Some((prev, n)) if prev.images() == m.images() => *n += k,
                _ => merged.push((m, k)),
            }
        }
        Characters {
            target: target.clone(),
            entries: merged,
        }
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn entries(&self) -> &[(Morphism, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn multiplicity(&self, lam: &Morphism) -> usize {
        self.entries
            .iter()
            .find(|(m, _)| m.images() == lam.images())
            .map_or(0, |e| e.1)
    }

    pub fn scaled(&self, k: usize) -> Characters {
        Characters {
            target: self.target.clone(),
            entries: self.entries.iter().map(|(m, n)| (m.clone(), n * k)).collect(),
        }
    }

    /// Every character of `self` occurs in `other`.
    pub fn support_within(&self, other: &Characters) -> bool {
        self.entries.iter().all(|(m, _)| other.multiplicity(m) > 0)
    }
}

/// Characters of `E ⊗_L P` for `E` the context field.
pub fn characters(p: &Bimodule, ctx: &SplitContext) -> Result<Characters> {
    let e = ctx.field();
    let l = p.field();
    if !e.contains_layer(l) {
        return Err(Error::FieldMismatch);
    }
    let prim = Primitive::find(l)?;
    let chi = p.phi(prim.theta()).char_poly()?;
    let chi_e = chi.map(e, |c| e.embed_from(l, c));
    let embeds = embeddings(l, ctx)?;
    let entries = match_roots(&chi_e, &prim, &embeds, 1)?;
    Ok(Characters::from_entries(e, entries))
}

/// Pairs each embedding `λ` with the multiplicity of `λ(θ)` as a root of `f`;
/// the multiplicities must exhaust the degree.
fn match_roots(f: &Poly, prim: &Primitive, embeds: &[Morphism], scale: usize) -> Result<Vec<(Morphism, usize)>> {
    let e = f.field();
    let mut out = Vec::new();
    let mut total = 0;
    for lam in embeds {
        let r = lam.apply(prim.theta());
        if e.is_zero(&f.eval(&r)) {
            let m = f.root_multiplicity(&r)?;
            total += m;
            out.push((lam.clone(), m * scale));
        }
    }
    let deg = f.degree().unwrap_or(0);
    if total < deg {
        return Err(Error::EigenvalueOutsideField(format!(
            "{} of {} roots of {} lie in the field",
            total,
            deg,
            f.to_string_var("x")
        )));
    }
    Ok(out)
}

/// Characters of `E ⊗_L P ⊗_L Q` from the characters of `P` and the
/// characteristic polynomial of `Q`.
pub fn tensor_characters(ch_p: &Characters, q: &Bimodule, ctx: &SplitContext) -> Result<Characters> {
    let e = ctx.field();
    let l = q.field();
    let prim = Primitive::find(l)?;
    let chi = q.phi(prim.theta()).char_poly()?;
    let embeds = embeddings(l, ctx)?;
    let mut entries = Vec::new();
    for (lam, k) in ch_p.entries() {
        let f = lam.apply_poly(&chi);
        entries.extend(match_roots(&f, &prim, &embeds, *k)?);
    }
    Ok(Characters::from_entries(e, entries))
}

/// Factor comparison between `P ⊗ P` and `P`.
#[derive(Clone, Debug)]
pub struct WeakVerdict {
    pub weakly_galois: bool,
    /// `(character, multiplicity in P, multiplicity in P ⊗ P)`.
    pub table: Vec<(Morphism, usize, usize)>,
}

pub fn is_weakly_galois(p: &Bimodule, ctx: &SplitContext) -> Result<WeakVerdict> {
    let ch = characters(p, ctx)?;
    let ch2 = tensor_characters(&ch, p, ctx)?;
    let mut table: Vec<(Morphism, usize, usize)> = ch
        .entries()
        .iter()
        .map(|(m, k)| (m.clone(), *k, ch2.multiplicity(m)))
        .collect();
    for (m, k) in ch2.entries() {
        if ch.multiplicity(m) == 0 {
            table.push((m.clone(), 0, *k));
        }
    }
    Ok(WeakVerdict {
        weakly_galois: ch2.support_within(&ch),
        table,
    })
}

#[derive(Clone, Debug)]
pub struct GaloisVerdict {
    pub galois: bool,
    /// Multiplicity `r` with `P ≅ (L ⊗_Z L)^r`, when Galois.
    pub r: Option<usize>,
}

/// Compares the factors of `P ⊗ P` with `d` copies of those of `P`.
pub fn is_galois(p: &Bimodule, ctx: &SplitContext) -> Result<GaloisVerdict> {
    let ch = characters(p, ctx)?;
    let ch2 = tensor_characters(&ch, p, ctx)?;
    let galois = ch2 == ch.scaled(p.rank());
    let r = if galois {
        let z = p.center()?;
        Some(p.rank() / z.index())
    } else {
        None
    };
    Ok(GaloisVerdict { galois, r })
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub center: Subfield,
    pub r: usize,
}

/// Verifies `P ≅ (L ⊗_Z L)^r` at the level of composition factors.
pub fn classify(p: &Bimodule, ctx: &SplitContext) -> Result<Classification> {
    let z = p.center()?;
    let n = z.index();
    let d = p.rank();
    if d % n != 0 {
        return Err(Error::ClassificationFailed(format!("[L:Z] = {n} does not divide the rank {d}")));
    }
    let r = d / n;
    let reg = Bimodule::regular_over(&z)?;
    if characters(p, ctx)? != characters(&reg, ctx)?.scaled(r) {
        return Err(Error::ClassificationFailed(
            "composition factors differ from a multiple of L ⊗_Z L".into(),
        ));
    }
    Ok(Classification { center: z, r })
}

/// Splitting data for a weakly Galois bimodule over a supplied normal `E`.
#[derive(Clone, Debug)]
pub struct SplitAnalysis {
    pub field: Field,
    pub characters: Characters,
    pub center: Subfield,
    /// `{σ ∈ Gal(E/Z) : σ|_L is a character}`.
    pub group: AutomorphismGroup,
    /// Indices in `group` of `Gal(E/L)`.
    pub gal_over_l: BTreeSet<usize>,
    /// `(index in group, n_σ)`.
    pub multiplicities: Vec<(usize, usize)>,
    pub is_split: bool,
    /// Row vector `v` with `v · φ(a) = a v`.
    pub trivial_witness: Vec<Value>,
}

pub fn split_analysis(p: &Bimodule, ctx: &SplitContext) -> Result<SplitAnalysis> {
    let e = ctx.field();
    let l = p.field();
    let ch = characters(p, ctx)?;
    let z = p.center()?;
    let into_e = Morphism::layer_inclusion(l, e);
    let z_e = Subfield::new(into_e.compose(z.inclusion())?);
    let gal = automorphisms(e, Some(&z_e), ctx)?;
    if e.characteristic() == 0 && gal.order() * z.degree_over_base() != e.degree_over_base() {
        return Err(Error::Invalid(format!(
            "the supplied field is not normal over the center: {} automorphisms for degree {}",
            gal.order(),
            e.degree_over_base() / z.degree_over_base()
        )));
    }
    let mut members = Vec::new();
    let mut mults = Vec::new();
    for s in gal.elements() {
        let n = ch.multiplicity(&s.compose(&into_e)?);
        if n > 0 {
            members.push(s.clone());
            mults.push(n);
        }
    }
    let group = closure(e, &members)?;
    if group.order() != members.len() {
        return Err(Error::Invalid("restrictions to L do not form a group: P is not weakly Galois".into()));
    }
    let multiplicities = members
        .iter()
        .zip(&mults)
        .map(|(s, n)| (group.index_of(s).unwrap(), *n))
        .collect();
    let l_in_e = Subfield::new(into_e.clone());
    let gal_over_l: BTreeSet<usize> = group.stabilizer(&l_in_e).into_iter().collect();
    let is_split = group.group().is_normal(&gal_over_l);
    let trivial_witness = trivial_vector(p)?
        .ok_or_else(|| Error::Invalid("no trivial subbimodule: P is not weakly Galois".into()))?;
    Ok(SplitAnalysis {
        field: e.clone(),
        characters: ch,
        center: z,
        group,
        gal_over_l,
        multiplicities,
        is_split,
        trivial_witness,
    })
}

/// A nonzero row vector `v` with `v · φ(γ) = γ v` for every generator.
pub fn trivial_vector(p: &Bimodule) -> Result<Option<Vec<Value>>> {
    let l = p.field();
    let d = p.rank();
    let mut rows = Vec::new();
    for (g, m) in l.generators_above_base().iter().zip(p.images()) {
        let mut s = m.clone();
        s.add_scalar_diag(&l.neg(g));
        let t = s.transpose();
        for i in 0..d {
            rows.push(t.row(i));
        }
    }
    if rows.is_empty() {
        let mut v = vec![l.zero(); d];
        if d == 0 {
            return Ok(None);
        }
        v[0] = l.one();
        return Ok(Some(v));
    }
    Ok(Matrix::from_rows(l, rows).kernel()?.into_iter().next())
}
