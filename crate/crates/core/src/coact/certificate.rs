//! Integrality certificates, and the minimal-versus-characteristic polynomial
//! check over a central subalgebra that is not integrally closed.

use crate::error::{Error, Result};
use crate::kernel::{Field, Matrix, Poly, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub element: String,
    pub poly: Poly,
    pub coefficients_in_z: bool,
    pub coefficients_invariant: bool,
    pub monic: bool,
    pub annihilates: bool,
}

impl IntegralityCertificate {
    pub fn is_valid(&self) -> bool {
        self.coefficients_in_z && self.coefficients_invariant && self.monic && self.annihilates
    }
}

/// Minimal and characteristic polynomials of a matrix whose entries lie in a
/// subring `Z`, with the coefficients of each tested for membership in `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCertificate {
    pub min_poly: Poly,
    pub char_poly: Poly,
    /// Degrees of the coefficients of `min_poly` that fall outside `Z`.
    pub min_escapes: Vec<usize>,
    pub char_in_z: bool,
}

impl MatrixCertificate {
    /// Escaping coefficients as an error, for callers that treat them as one.
    pub fn require_in_z(&self) -> Result<()> {
        if self.min_escapes.is_empty() {
            return Ok(());
        }
        let f = self.min_poly.field();
        let shown: Vec<String> = self
            .min_escapes
            .iter()
            .map(|&k| format!("t^{k}: {}", f.fmt_value(&self.min_poly.coeff(k))))
            .collect();
        Err(Error::CoefficientEscapesZ(shown.join(", ")))
    }
}

pub fn matrix_certificate(m: &Matrix, in_z: impl Fn(&Value) -> bool) -> Result<MatrixCertificate> {
    if !m.data().iter().all(&in_z) {
        return Err(Error::Invalid("matrix entries must lie in Z".into()));
    }
    let min_poly = m.min_poly()?;
    let char_poly = m.char_poly()?;
    if !min_poly.eval_matrix(m).is_zero() {
        return Err(Error::Invalid("minimal polynomial does not annihilate".into()));
    }
    let min_escapes = (0..min_poly.coeffs().len())
        .filter(|&k| !in_z(&min_poly.coeff(k)))
        .collect();
    let char_in_z = char_poly.coeffs().iter().all(&in_z);
    Ok(MatrixCertificate {
        min_poly,
        char_poly,
        min_escapes,
        char_in_z,
    })
}

/// Membership in `Q[x², x³] ⊂ Q(x)`: a polynomial with no linear term.
pub fn in_q_x2_x3(f: &Field, v: &Value) -> bool {
    match v {
        Value::Rat(r) => {
            r.den.len() == 1 && r.num.get(1).map_or(true, |c| is_zero_const(f, c))
        }
        _ => false,
    }
}

fn is_zero_const(f: &Field, c: &Value) -> bool {
    match f.kind() {
        crate::kernel::Kind::Function { constants, .. } => constants.is_zero(c),
        _ => false,
    }
}

/// The 5×5 matrix over `Q(x)` with `a₁₂ = 1`, `a₂₁ = x²`, `a₃₄ = a₄₅ = 1`,
/// `a₅₃ = x³` and zeros elsewhere.
pub fn lemma_inclo_matrix(f: &Field) -> Result<Matrix> {
    let x = f
        .generator()
        .ok_or_else(|| Error::Invalid("expected a rational function field".into()))?;
    let mut m = Matrix::zeros(f, 5, 5);
    m.set(0, 1, f.one());
    m.set(1, 0, f.pow(&x, 2));
    m.set(2, 3, f.one());
    m.set(3, 4, f.one());
    m.set(4, 2, f.pow(&x, 3));
    Ok(m)
}
