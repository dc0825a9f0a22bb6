use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::kernel::{Field, Kind, Matrix, Poly, Value};

use super::morphism::Morphism;
use super::splitting::SplitContext;
use super::subfield::Subfield;

/// Default cap on closure size.
pub const DEFAULT_GROUP_BOUND: usize = 1024;

/// A finite group of automorphisms of one tower. Element 0 is the identity; the
/// rest are sorted by generator images so the listing is canonical.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    field: Field,
    elements: Vec<Morphism>,
    group: FiniteGroup,
}

impl AutomorphismGroup {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Morphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Morphism {
        &self.elements[i]
    }

    /// Abstract group with `mul(a, b)` the index of `a ∘ b`.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn index_of(&self, g: &Morphism) -> Option<usize> {
        self.elements.iter().position(|h| h.images() == g.images())
    }

    /// Subgroup of elements fixing every element of the subfield.
    pub fn stabilizer(&self, sub: &Subfield) -> Vec<usize> {
        let gens: Vec<Value> = sub
            .field()
            .generators()
            .iter()
            .map(|g| sub.inclusion().apply(g))
            .collect();
        (0..self.order())
            .filter(|&i| gens.iter().all(|x| &self.elements[i].apply(x) == x))
            .collect()
    }
}

/// Closes a set of automorphisms under composition (bound 1024).
pub fn closure(field: &Field, gens: &[Morphism]) -> Result<AutomorphismGroup> {
    closure_with_bound(field, gens, DEFAULT_GROUP_BOUND)
}

pub fn closure_with_bound(field: &Field, gens: &[Morphism], bound: usize) -> Result<AutomorphismGroup> {
    for g in gens {
        if g.source() != field || g.target() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let id = Morphism::identity(field);
    let mut seen: HashMap<Vec<Value>, Morphism> = HashMap::new();
    seen.insert(id.images().to_vec(), id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g)?;
            if !seen.contains_key(y.images()) {
                if seen.len() >= bound {
                    return Err(Error::ClosureBound(bound));
                }
                seen.insert(y.images().to_vec(), y.clone());
                frontier.push(y);
            }
        }
    }
    let mut rest: Vec<Morphism> = seen
        .into_values()
        .filter(|m| m.images() != id.images())
        .collect();
    rest.sort_by(|a, b| a.images().cmp(b.images()));
    let mut elements = vec![id];
    elements.extend(rest);
    let index: HashMap<&[Value], usize> =
        elements.iter().enumerate().map(|(i, m)| (m.images(), i)).collect();
    let mut table = Vec::with_capacity(elements.len());
    for a in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in &elements {
            let c = a.compose(b)?;
            row.push(*index.get(c.images()).ok_or_else(|| {
                Error::Invalid("composition left the closed set".into())
            })?);
        }
        table.push(row);
    }
    let group = FiniteGroup::from_table(table)
        .map_err(|_| Error::Invalid("inputs are not automorphisms".into()))?;
    Ok(AutomorphismGroup {
        field: field.clone(),
        elements,
        group,
    })
}

/// All automorphisms of `e` over its base that fix `fixed` (when given),
/// enumerated layer by layer from roots of conjugated moduli.
pub fn automorphisms(e: &Field, fixed: Option<&Subfield>, ctx: &SplitContext) -> Result<AutomorphismGroup> {
    if ctx.field() != e {
        return Err(Error::FieldMismatch);
    }
    let fixed_gens: Vec<Value> = match fixed {
        Some(s) => s.field().generators().iter().map(|g| s.inclusion().apply(g)).collect(),
        None => Vec::new(),
    };
    let found: Vec<Morphism> = embeddings(e, ctx)?
        .into_iter()
        .filter(|m| fixed_gens.iter().all(|x| &m.apply(x) == x))
        .collect();
    if found.len() > DEFAULT_GROUP_BOUND {
        return Err(Error::ClosureBound(DEFAULT_GROUP_BOUND));
    }
    closure(e, &found)
}

/// All homomorphisms from `l` into the context field that fix the common
/// base, found layer by layer among the roots of conjugated moduli.
pub fn embeddings(l: &Field, ctx: &SplitContext) -> Result<Vec<Morphism>> {
    let e = ctx.field();
    let b = l.base();
    if !e.contains_layer(&b) {
        return Err(Error::FieldMismatch);
    }
    let mut images: Vec<Value> = b.generators().iter().map(|g| e.embed_from(&b, g)).collect();
    let layers = l.layers_above_base();
    let n_base = images.len();
    images.resize(l.depth(), e.zero());
    let mut found = Vec::new();
    extend_partial(l, e, &layers, n_base, &mut images, 0, ctx, &mut found)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn extend_partial(
    l: &Field,
    e: &Field,
    layers: &[Field],
    n_base: usize,
    images: &mut Vec<Value>,
    k: usize,
    ctx: &SplitContext,
    out: &mut Vec<Morphism>,
) -> Result<()> {
    if k == layers.len() {
        out.push(Morphism::new_unchecked(l, e, images.clone())?);
        return Ok(());
    }
    let layer = &layers[k];
    let (parent, modulus) = match layer.kind() {
        Kind::Extension { parent, modulus, .. } => (parent.clone(), modulus.clone()),
        _ => unreachable!(),
    };
    let partial = Morphism::new_unchecked(l, e, images.clone())?;
    let conj = Poly::new(e, modulus.iter().map(|c| partial.apply_in(&parent, c)).collect());
    for (r, _) in ctx.roots(&conj)? {
        images[n_base + k] = r;
        extend_partial(l, e, layers, n_base, images, k + 1, ctx, out)?;
    }
    images[n_base + k] = e.zero();
    Ok(())
}

/// Fixed field of a group of base-fixing automorphisms.
pub fn fixed_field(g: &AutomorphismGroup) -> Result<Subfield> {
    let l = g.field();
    let b = l.base();
    let n = l.degree_over_base();
    let mut rows: Vec<Vec<Value>> = Vec::new();
    for m in g.elements() {
        if !m.fixes_base() {
            return Err(Error::UnsupportedBase(
                "the group must act trivially on the base of the tower".into(),
            ));
        }
        let mut d = m.base_matrix()?;
        d.add_scalar_diag(&b.from_i64(-1));
        for i in 0..n {
            rows.push(d.row(i));
        }
    }
    let sys = Matrix::from_rows(&b, rows);
    let ker = sys.kernel()?;
    Subfield::from_subspace(l, &ker, "c")
}
