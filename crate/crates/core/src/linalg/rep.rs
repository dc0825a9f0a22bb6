use crate::error::{Error, Result};
use crate::kernel::{Field, Kind, Matrix, Value};

/// A base-linear ring homomorphism `source → Mat_dim(target)`, fixed by the
/// images of the generators of `source` above its base. The base acts by
/// scalars and must be a layer of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRep {
    source: Field,
    target: Field,
    dim: usize,
    images: Vec<Matrix>,
}

impl MatRep {
    /// Builds and verifies: moduli vanish at the images, and the images commute.
    pub fn new(source: &Field, target: &Field, dim: usize, images: Vec<Matrix>) -> Result<MatRep> {
        let r = MatRep::new_unchecked(source, target, dim, images)?;
        r.verify()?;
        Ok(r)
    }

    pub fn new_unchecked(source: &Field, target: &Field, dim: usize, images: Vec<Matrix>) -> Result<MatRep> {
        if !target.contains_layer(&source.base()) {
            return Err(Error::FieldMismatch);
        }
        if images.len() != source.layers_above_base().len() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                source.layers_above_base().len(),
                images.len()
            )));
        }
        for m in &images {
            if m.field() != target || m.rows() != dim || m.cols() != dim {
                return Err(Error::Invalid("generator image has the wrong shape or field".into()));
            }
        }
        Ok(MatRep {
            source: source.clone(),
            target: target.clone(),
            dim,
            images,
        })
    }

    fn verify(&self) -> Result<()> {
        for (i, a) in self.images.iter().enumerate() {
            for b in &self.images[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::NotAHomomorphism("generator images do not commute".into()));
                }
            }
        }
        for (k, layer) in self.source.layers_above_base().iter().enumerate() {
            if let Kind::Extension { parent, modulus, .. } = layer.kind() {
                let mut acc = Matrix::zeros(&self.target, self.dim, self.dim);
                for c in modulus.iter().rev() {
                    acc = acc.mul(&self.images[k]);
                    acc = acc.add(&self.apply_in(parent, c));
                }
                if !acc.is_zero() {
                    return Err(Error::NotAHomomorphism(format!(
                        "relation of {} is not respected",
                        layer.var_name().unwrap_or("?")
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn apply(&self, a: &Value) -> Matrix {
        self.apply_in(&self.source, a)
    }

    fn apply_in(&self, layer: &Field, a: &Value) -> Matrix {
        match (layer.kind(), a) {
            (Kind::Extension { parent, .. }, Value::Ext(coords)) => {
                let k = layer.depth() - self.source.base().depth() - 1;
                let g = &self.images[k];
                let mut acc = Matrix::zeros(&self.target, self.dim, self.dim);
                for c in coords.iter().rev() {
                    acc = acc.mul(g);
                    if !parent.is_zero(c) {
                        if parent.is_extension() {
                            acc = acc.add(&self.apply_in(parent, c));
                        } else {
                            acc.add_scalar_diag(&self.target.embed_from(parent, c));
                        }
                    }
                }
                acc
            }
            _ => Matrix::scalar(&self.target, self.dim, &self.target.embed_from(layer, a)),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &MatRep) -> Result<MatRep> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::FieldMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()]))
            .collect();
        MatRep::new_unchecked(&self.source, &self.target, self.dim + other.dim, images)
    }

    /// Conjugates every image: `S φ S⁻¹`.
    pub fn conjugate(&self, s: &Matrix) -> Result<MatRep> {
        let inv = s.inverse()?;
        let images = self.images.iter().map(|m| s.mul(m).mul(&inv)).collect();
        MatRep::new_unchecked(&self.source, &self.target, self.dim, images)
    }
}
