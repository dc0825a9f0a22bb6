use crate::error::{Error, Result};
use crate::kernel::factor::integer_combinations;
use crate::kernel::{Field, Matrix, Poly, Value};

use super::morphism::{min_poly_over_base, Morphism};

/// Candidates tried by the primitive-element search.
pub const PRIMITIVE_BUDGET: usize = 1000;

/// A subfield of an ambient tower, carried as its own tower plus an inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    field: Field,
    inclusion: Morphism,
}

impl Subfield {
    pub fn new(inclusion: Morphism) -> Subfield {
        Subfield {
            field: inclusion.source().clone(),
            inclusion,
        }
    }

    pub fn whole(l: &Field) -> Subfield {
        Subfield::new(Morphism::identity(l))
    }

    /// The base layer of `l`.
    pub fn base_of(l: &Field) -> Subfield {
        Subfield::new(Morphism::layer_inclusion(&l.base(), l))
    }

    /// Packages a base-subspace of `l` (given by base coordinate vectors) that is
    /// closed under products as `B[var]/(M_θ)` for a primitive element θ.
    pub fn from_subspace(l: &Field, basis: &[Vec<Value>], var: &str) -> Result<Subfield> {
        let b = l.base();
        let n = l.degree_over_base();
        let span = Matrix::from_columns(&b, n, basis);
        let k = span.rank()?;
        if k == 0 {
            return Err(Error::NotAField);
        }
        if k == 1 {
            let one = l.to_base_coords(&l.one());
            if span.solve(&one)?.is_none() {
                return Err(Error::NotAField);
            }
            return Ok(Subfield::base_of(l));
        }
        let elems: Vec<Value> = basis.iter().map(|c| l.from_base_coords(c)).collect();
        for (tried, combo) in integer_combinations(elems.len()).enumerate() {
            if tried >= PRIMITIVE_BUDGET {
                break;
            }
            let mut theta = l.zero();
            for (c, e) in combo.iter().zip(&elems) {
                if *c != 0 {
                    theta = l.add(&theta, &l.mul(&l.from_i64(*c), e));
                }
            }
            let mp = min_poly_over_base(l, &theta)?;
            let deg = mp.degree().unwrap();
            let mut pw = l.one();
            for _ in 0..deg {
                if span.solve(&l.to_base_coords(&pw))?.is_none() {
                    return Err(Error::NotAField);
                }
                pw = l.mul(&pw, &theta);
            }
            if deg == k {
                let f = Field::extension_unchecked(&b, var, mp.into_coeffs())?;
                let mut images: Vec<Value> =
                    b.generators().iter().map(|g| l.embed_from(&b, g)).collect();
                images.push(theta);
                return Ok(Subfield::new(Morphism::new_unchecked(&f, l, images)?));
            }
        }
        Err(Error::PrimitiveElementNotFound(PRIMITIVE_BUDGET))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn inclusion(&self) -> &Morphism {
        &self.inclusion
    }

    pub fn ambient(&self) -> &Field {
        self.inclusion.target()
    }

    pub fn degree_over_base(&self) -> usize {
        self.field.degree_over_base()
    }

    /// `[ambient : self]`.
    pub fn index(&self) -> usize {
        self.ambient().degree_over_base() / self.degree_over_base()
    }

    /// Images in the ambient field of the base basis of the subfield.
    pub fn basis_in_ambient(&self) -> Vec<Value> {
        self.field.base_basis().iter().map(|e| self.inclusion.apply(e)).collect()
    }

    /// Preimage of an ambient element, if it lies in the subfield.
    pub fn preimage(&self, a: &Value) -> Result<Option<Value>> {
        let l = self.ambient();
        let cols: Vec<Vec<Value>> = self.basis_in_ambient().iter().map(|e| l.to_base_coords(e)).collect();
        let m = Matrix::from_columns(&l.base(), l.degree_over_base(), &cols);
        Ok(m.solve(&l.to_base_coords(a))?.map(|c| self.field.from_base_coords(&c)))
    }

    pub fn contains(&self, a: &Value) -> Result<bool> {
        Ok(self.preimage(a)?.is_some())
    }

    fn check_common_base(&self) -> Result<()> {
        if self.field.base() != self.ambient().base() || !self.inclusion.fixes_base() {
            return Err(Error::Invalid("subfield must contain the base of the ambient tower".into()));
        }
        Ok(())
    }
}

/// Minimal polynomial of `a` over a subfield `F` of its tower.
pub fn min_poly_over(a: &Value, sub: &Subfield) -> Result<Poly> {
    sub.check_common_base()?;
    let l = sub.ambient();
    let b = l.base();
    let f = sub.field();
    let fb = sub.basis_in_ambient();
    let m = fb.len();
    let n = l.degree_over_base();
    let mut powers = vec![l.one()];
    for k in 1..=sub.index() {
        powers.push(l.mul(&powers[k - 1], a));
        let mut cols = Vec::with_capacity(k * m);
        for p in &powers[..k] {
            for e in &fb {
                cols.push(l.to_base_coords(&l.mul(e, p)));
            }
        }
        let sys = Matrix::from_columns(&b, n, &cols);
        let rhs: Vec<Value> = l.to_base_coords(&powers[k]).iter().map(|x| b.neg(x)).collect();
        if let Some(x) = sys.solve(&rhs)? {
            let mut coeffs: Vec<Value> = x.chunks(m).map(|c| f.from_base_coords(c)).collect();
            coeffs.push(f.one());
            return Ok(Poly::new(f, coeffs));
        }
    }
    Err(Error::Invalid("element is not algebraic over the subfield".into()))
}
