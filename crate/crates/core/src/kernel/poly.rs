use std::fmt;

use super::field::{Field, Value};
use super::matrix::Matrix;
use super::upoly;
use crate::error::{Error, Result};

/// Univariate polynomial over one field, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Value>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Value>) -> Poly {
        let mut coeffs = coeffs;
        upoly::trim(field, &mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64s(field: &Field, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&n| field.from_i64(n)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Value) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial x.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// x − a
    pub fn linear(field: &Field, a: &Value) -> Poly {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Value> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        upoly::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| self.field.is_one(c)).unwrap_or(false)
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, upoly::add(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, upoly::sub(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, upoly::mul(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, upoly::neg(&self.field, &self.coeffs))
    }

    pub fn scale(&self, c: &Value) -> Poly {
        Poly::new(&self.field, upoly::scale(&self.field, c, &self.coeffs))
    }

    pub fn pow(&self, e: u64) -> Poly {
        Poly::new(&self.field, upoly::pow(&self.field, &self.coeffs, e))
    }

    pub fn divrem(&self, o: &Poly) -> Result<(Poly, Poly)> {
        self.check(o)?;
        let (q, r) = upoly::divrem(&self.field, &self.coeffs, &o.coeffs)?;
        Ok((Poly::new(&self.field, q), Poly::new(&self.field, r)))
    }

    /// Exact quotient; fails if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(o)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, o: &Poly) -> Result<bool> {
        Ok(o.divrem(self)?.1.is_zero())
    }

    pub fn monic(&self) -> Result<Poly> {
        Ok(Poly::new(&self.field, upoly::monic(&self.field, &self.coeffs)?))
    }

    pub fn gcd(&self, o: &Poly) -> Result<Poly> {
        poly_gcd(self, o)
    }

    pub fn lcm(&self, o: &Poly) -> Result<Poly> {
        if self.is_zero() || o.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(o)?;
        self.div_exact(&g)?.mul(o).monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(&self.field, upoly::deriv(&self.field, &self.coeffs))
    }

    pub fn eval(&self, x: &Value) -> Value {
        upoly::eval(&self.field, &self.coeffs, x)
    }

    pub fn compose(&self, g: &Poly) -> Poly {
        Poly::new(&self.field, upoly::compose(&self.field, &self.coeffs, &g.coeffs))
    }

    /// Evaluates at a square matrix over the same field.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc.add_scalar_diag(c);
        }
        acc
    }

    /// True when gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    /// Applies a coefficient map into another field.
    pub fn map(&self, target: &Field, f: impl Fn(&Value) -> Value) -> Poly {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Value) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Invalid("zero polynomial has every root".into()));
        }
        let lin = Poly::linear(&self.field, a);
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin)?;
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    pub fn to_string_var(&self, var: &str) -> String {
        super::field::fmt_poly(&self.field, &self.coeffs, var)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

/// Monic greatest common divisor of two polynomials over the same field.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    f.check(g)?;
    Ok(Poly::new(&f.field, upoly::gcd(&f.field, &f.coeffs, &g.coeffs)?))
}
