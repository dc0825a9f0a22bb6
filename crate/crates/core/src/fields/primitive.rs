use crate::error::{Error, Result};
use crate::kernel::factor::integer_combinations;
use crate::kernel::{Field, Matrix, Poly, Value};

use super::morphism::{min_poly_over_base, Morphism};
use super::subfield::{Subfield, PRIMITIVE_BUDGET};

/// A primitive element θ of a tower over its base, with every generator above
/// the base written as a polynomial in θ.
#[derive(Clone, Debug)]
pub struct Primitive {
    field: Field,
    theta: Value,
    min_poly: Poly,
    gen_polys: Vec<Poly>,
}

impl Primitive {
    /// Deterministic search over integer combinations of the generators.
    pub fn find(l: &Field) -> Result<Primitive> {
        let b = l.base();
        let n = l.degree_over_base();
        let gens = l.generators_above_base();
        if gens.is_empty() {
            return Ok(Primitive {
                field: l.clone(),
                theta: l.zero(),
                min_poly: Poly::x(&b),
                gen_polys: Vec::new(),
            });
        }
        for combo in integer_combinations(gens.len()).take(PRIMITIVE_BUDGET) {
            let mut theta = l.zero();
            for (c, g) in combo.iter().zip(&gens) {
                if *c != 0 {
                    theta = l.add(&theta, &l.mul(&l.from_i64(*c), g));
                }
            }
            let mp = min_poly_over_base(l, &theta)?;
            if mp.degree() != Some(n) {
                continue;
            }
            let mut cols = Vec::with_capacity(n);
            let mut pw = l.one();
            for _ in 0..n {
                cols.push(l.to_base_coords(&pw));
                pw = l.mul(&pw, &theta);
            }
            let inv = Matrix::from_columns(&b, n, &cols).inverse()?;
            let gen_polys = gens
                .iter()
                .map(|g| Poly::new(&b, inv.mul_vec(&l.to_base_coords(g))))
                .collect();
            return Ok(Primitive {
                field: l.clone(),
                theta,
                min_poly: mp,
                gen_polys,
            });
        }
        Err(Error::PrimitiveElementNotFound(PRIMITIVE_BUDGET))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn theta(&self) -> &Value {
        &self.theta
    }

    /// Minimal polynomial of θ over the base.
    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    /// The base-linear homomorphism into `e` sending θ to `rho`. The base of the
    /// tower must be a layer of `e`.
    pub fn character(&self, e: &Field, rho: &Value) -> Result<Morphism> {
        let b = self.field.base();
        if !e.contains_layer(&b) {
            return Err(Error::FieldMismatch);
        }
        let mut images: Vec<Value> = b.generators().iter().map(|g| e.embed_from(&b, g)).collect();
        for h in &self.gen_polys {
            let he = h.map(e, |c| e.embed_from(&b, c));
            images.push(he.eval(rho));
        }
        Morphism::new_unchecked(&self.field, e, images)
    }
}

/// A basis of a tower over a subfield containing its base, with coordinates.
#[derive(Clone, Debug)]
pub struct RelativeBasis {
    sub: Subfield,
    basis: Vec<Value>,
    inv: Matrix,
}

impl RelativeBasis {
    /// Picks basis vectors greedily among the base basis of the ambient field.
    pub fn new(sub: &Subfield) -> Result<RelativeBasis> {
        let l = sub.ambient();
        let b = l.base();
        let n = l.degree_over_base();
        if sub.field().base() != b || !sub.inclusion().fixes_base() {
            return Err(Error::Invalid("subfield must contain the base".into()));
        }
        let fb = sub.basis_in_ambient();
        let mut basis = Vec::new();
        let mut cols: Vec<Vec<Value>> = Vec::new();
        for s in l.base_basis() {
            if cols.len() == n {
                break;
            }
            let mut trial = cols.clone();
            for e in &fb {
                trial.push(l.to_base_coords(&l.mul(e, &s)));
            }
            if Matrix::from_columns(&b, n, &trial).rank()? == trial.len() {
                cols = trial;
                basis.push(s);
            }
        }
        let inv = Matrix::from_columns(&b, n, &cols).inverse()?;
        Ok(RelativeBasis {
            sub: sub.clone(),
            basis,
            inv,
        })
    }

    pub fn subfield(&self) -> &Subfield {
        &self.sub
    }

    pub fn basis(&self) -> &[Value] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `x` as elements of the subfield.
    pub fn coords(&self, x: &Value) -> Vec<Value> {
        let l = self.sub.ambient();
        let f = self.sub.field();
        let m = f.degree_over_base();
        let c = self.inv.mul_vec(&l.to_base_coords(x));
        c.chunks(m).map(|ch| f.from_base_coords(ch)).collect()
    }

    /// Right multiplication by `x` in this basis: row `i` holds the coordinates
    /// of `f_i · x`.
    pub fn mult_matrix(&self, x: &Value) -> Matrix {
        let l = self.sub.ambient();
        let rows = self.basis.iter().map(|f| self.coords(&l.mul(f, x))).collect();
        Matrix::from_rows(self.sub.field(), rows)
    }
}
