use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{Field, Kind, Matrix, Poly, Value};

/// A ring homomorphism between presented fields, fixed by the images of the
/// source generators (bottom to top, transcendental included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Field,
    target: Field,
    images: Vec<Value>,
}

impl Morphism {
    /// Builds and verifies a morphism.
    pub fn new(source: &Field, target: &Field, images: Vec<Value>) -> Result<Morphism> {
        let m = Morphism::new_unchecked(source, target, images)?;
        m.verify()?;
        Ok(m)
    }

    /// Builds a morphism without checking relations; arity is still checked.
    pub fn new_unchecked(source: &Field, target: &Field, images: Vec<Value>) -> Result<Morphism> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::NotAHomomorphism("characteristics differ".into()));
        }
        if images.len() != source.depth() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                source.depth(),
                images.len()
            )));
        }
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(f: &Field) -> Morphism {
        Morphism {
            source: f.clone(),
            target: f.clone(),
            images: f.generators(),
        }
    }

    /// Inclusion of a lower layer of a tower.
    pub fn layer_inclusion(sub: &Field, tower: &Field) -> Morphism {
        let images = sub.generators().iter().map(|g| tower.embed_from(sub, g)).collect();
        Morphism {
            source: sub.clone(),
            target: tower.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn images(&self) -> &[Value] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images == self.source.generators()
    }

    fn verify(&self) -> Result<()> {
        let chain: Vec<Field> = self.source.layers().into_iter().rev().collect();
        for (k, layer) in chain.iter().enumerate().skip(1) {
            let img = &self.images[k - 1];
            match layer.kind() {
                Kind::Extension { parent, modulus, .. } => {
                    let mut acc = self.target.zero();
                    for c in modulus.iter().rev() {
                        acc = self.target.mul(&acc, img);
                        let ci = self.apply_in(parent, c);
                        self.target.add_assign(&mut acc, &ci);
                    }
                    if !self.target.is_zero(&acc) {
                        return Err(Error::NotAHomomorphism(format!(
                            "relation of {} maps to {}",
                            layer.var_name().unwrap_or("?"),
                            self.target.fmt_value(&acc)
                        )));
                    }
                }
                Kind::Function { .. } => {
                    if !is_transcendental(&self.target, img)? {
                        return Err(Error::NotAHomomorphism(format!(
                            "image {} of {} is algebraic",
                            self.target.fmt_value(img),
                            layer.var_name().unwrap_or("?")
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Image of an element of the source.
    pub fn apply(&self, a: &Value) -> Value {
        self.apply_in(&self.source, a)
    }

    /// Image of an element of a layer of the source tower.
    pub fn apply_in(&self, layer: &Field, a: &Value) -> Value {
        let t = &self.target;
        match (layer.kind(), a) {
            (Kind::Rationals, Value::Q(q)) => t.from_rational(q).expect("rational image"),
            (Kind::Prime(_), Value::P(x)) => t.from_i64(*x as i64),
            (Kind::Extension { parent, .. }, Value::Ext(coords)) => {
                let img = &self.images[layer.depth() - 1];
                let mut acc = t.zero();
                for c in coords.iter().rev() {
                    acc = t.mul(&acc, img);
                    if !parent.is_zero(c) {
                        let ci = self.apply_in(parent, c);
                        t.add_assign(&mut acc, &ci);
                    }
                }
                acc
            }
            (Kind::Function { constants, .. }, Value::Rat(r)) => {
                let img = &self.images[layer.depth() - 1];
                let horner = |cs: &[Value]| {
                    let mut acc = t.zero();
                    for c in cs.iter().rev() {
                        acc = t.mul(&acc, img);
                        if !constants.is_zero(c) {
                            let ci = self.apply_in(constants, c);
                            t.add_assign(&mut acc, &ci);
                        }
                    }
                    acc
                };
                let n = horner(&r.num);
                if r.den.len() == 1 {
                    return n;
                }
                t.div(&n, &horner(&r.den)).expect("transcendental image")
            }
            _ => panic!("value does not belong to the layer"),
        }
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        f.map(&self.target, |c| self.apply(c))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.target != self.source {
            return Err(Error::FieldMismatch);
        }
        Ok(Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|v| self.apply(v)).collect(),
        })
    }

    /// True if the morphism is the identity on the common base.
    pub fn fixes_base(&self) -> bool {
        let b = self.source.base();
        self.source.base() == self.target.base()
            && b.generators()
                .iter()
                .enumerate()
                .all(|(i, g)| self.images[i] == self.target.embed_from(&b, g))
    }

    /// Matrix over the base (columns are images of basis vectors); requires
    /// both ends to share the base and the map to fix it.
    pub fn base_matrix(&self) -> Result<Matrix> {
        if !self.fixes_base() {
            return Err(Error::Invalid("morphism does not fix the base".into()));
        }
        let b = self.source.base();
        let n = self.source.degree_over_base();
        let cols: Vec<Vec<Value>> = self
            .source
            .base_basis()
            .iter()
            .map(|e| self.target.to_base_coords(&self.apply(e)))
            .collect();
        Ok(Matrix::from_columns(&b, self.target.degree_over_base(), &cols[..n]))
    }

    pub fn describe(&self) -> String {
        let names = self.source.generator_names();
        let parts: Vec<String> = names
            .iter()
            .zip(&self.images)
            .map(|(n, v)| format!("{n} ↦ {}", self.target.fmt_value(v)))
            .collect();
        parts.join(", ")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Minimal polynomial over the base of the tower (Krylov on base coordinates).
pub fn min_poly_over_base(f: &Field, a: &Value) -> Result<Poly> {
    let b = f.base();
    let n = f.degree_over_base();
    let mut cols: Vec<Vec<Value>> = Vec::new();
    let mut pw = f.one();
    for _ in 0..=n {
        let c = f.to_base_coords(&pw);
        let m = Matrix::from_columns(&b, n, &cols);
        if let Some(sol) = m.solve(&c)? {
            let mut coeffs: Vec<Value> = sol.iter().map(|x| b.neg(x)).collect();
            coeffs.push(b.one());
            return Ok(Poly::new(&b, coeffs));
        }
        cols.push(c);
        pw = f.mul(&pw, a);
    }
    Err(Error::Invalid("no minimal polynomial found".into()))
}

/// Decides whether `a` is transcendental over the constants of the tower:
/// its minimal polynomial over the function-field base must involve the variable.
pub fn is_transcendental(f: &Field, a: &Value) -> Result<bool> {
    if !matches!(f.base().kind(), Kind::Function { .. }) {
        return Ok(false);
    }
    let mp = min_poly_over_base(f, a)?;
    Ok(mp.coeffs().iter().any(|c| match c {
        Value::Rat(r) => r.den.len() > 1 || r.num.len() > 1,
        _ => false,
    }))
}
