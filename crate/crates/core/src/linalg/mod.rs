//! Linear algebra of field representations: matrix-valued homomorphisms,
//! centers, simultaneous triangularization and composition factors.

mod rep;
mod triangular;

pub use rep::MatRep;
pub use triangular::{simultaneous_triangularize, Triangularization};

use crate::bimod::{characters, Bimodule, Characters};
use crate::error::{Error, Result};
use crate::fields::{Morphism, SplitContext, Subfield};
use crate::kernel::{Matrix, Value};

/// The subfield `{z : φ(z) = z·Id}` of an endomorphic representation.
pub fn center_kernel(rep: &MatRep) -> Result<Subfield> {
    let l = rep.source();
    if rep.target() != l {
        return Err(Error::FieldMismatch);
    }
    let b = l.base();
    let d = rep.dim();
    let basis = l.base_basis();
    let mut cols = Vec::with_capacity(basis.len());
    for e in &basis {
        let mut m = rep.apply(e);
        m.add_scalar_diag(&l.neg(e));
        let mut col = Vec::new();
        for x in m.data() {
            col.extend(l.to_base_coords(x));
        }
        cols.push(col);
    }
    let sys = Matrix::from_columns(&b, d * d * basis.len(), &cols);
    let ker = sys.kernel()?;
    // the kernel of a multiplicative map is closed under products
    let elems: Vec<Value> = ker.iter().map(|c| l.from_base_coords(c)).collect();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            let xy = l.mul(x, y);
            if !rep.apply(&xy).is_scalar(&xy) {
                return Err(Error::NotAField);
            }
        }
    }
    Subfield::from_subspace(l, &ker, "c")
}

/// Composition factors of a bimodule split over its own field: automorphisms
/// of `L` with multiplicities.
pub fn composition_factors(p: &Bimodule, ctx: &SplitContext) -> Result<Vec<(Morphism, usize)>> {
    let l = p.field();
    let ch: Characters = characters(p, ctx)?;
    let mut out = Vec::new();
    for (lam, n) in ch.entries() {
        let imgs: Option<Vec<Value>> = lam
            .images()
            .iter()
            .map(|v| preimage_in_layer(ctx, l, v))
            .collect();
        match imgs {
            Some(imgs) => out.push((Morphism::new_unchecked(l, l, imgs)?, *n)),
            None => {
                return Err(Error::NotSplit(format!(
                    "character {} does not preserve the field",
                    lam.describe()
                )))
            }
        }
    }
    Ok(out)
}

fn preimage_in_layer(ctx: &SplitContext, l: &crate::kernel::Field, v: &Value) -> Option<Value> {
    let e = ctx.field();
    if e == l {
        return Some(v.clone());
    }
    let sub = Subfield::new(Morphism::layer_inclusion(l, e));
    sub.preimage(v).ok().flatten()
}
