use crate::error::{Error, Result};
use crate::kernel::factor::{factor_base_with_bound, roots_in_field};
use crate::kernel::{Field, Kind, Poly, Value};

use super::{extend_with_cap, DEFAULT_DEGREE_CAP};

/// A field in which roots are looked up, optionally from a supplied pool of
/// candidate elements (needed over rational-function bases).
#[derive(Clone, Debug)]
pub struct SplitContext {
    field: Field,
    pool: Option<Vec<Value>>,
}

impl SplitContext {
    pub fn new(field: &Field) -> SplitContext {
        SplitContext {
            field: field.clone(),
            pool: None,
        }
    }

    pub fn with_pool(field: &Field, pool: Vec<Value>) -> SplitContext {
        let mut p = pool;
        p.sort();
        p.dedup();
        SplitContext {
            field: field.clone(),
            pool: Some(p),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn pool(&self) -> Option<&[Value]> {
        self.pool.as_deref()
    }

    /// Coerces a polynomial over a layer of the context field.
    pub fn lift(&self, f: &Poly) -> Result<Poly> {
        if f.field() == &self.field {
            return Ok(f.clone());
        }
        if !self.field.contains_layer(f.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(f.map(&self.field, |c| self.field.embed_from(f.field(), c)))
    }

    /// Roots in the context field with multiplicities.
    pub fn roots(&self, f: &Poly) -> Result<Vec<(Value, usize)>> {
        let f = self.lift(f)?;
        if f.degree().is_none() {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        match &self.pool {
            Some(pool) => {
                let mut out = Vec::new();
                for r in pool {
                    if self.field.is_zero(&f.eval(r)) {
                        out.push((r.clone(), f.root_multiplicity(r)?));
                    }
                }
                Ok(out)
            }
            None => {
                if self.field.has_transcendental() {
                    return Err(Error::UnsupportedBase(
                        "roots over a rational-function base need a candidate pool".into(),
                    ));
                }
                roots_in_field(&f)
            }
        }
    }

    /// Roots that account for the full degree, or `EigenvalueOutsideField`.
    pub fn split(&self, f: &Poly) -> Result<Vec<(Value, usize)>> {
        let roots = self.roots(f)?;
        let total: usize = roots.iter().map(|r| r.1).sum();
        let deg = f.degree().unwrap_or(0);
        if total < deg {
            return Err(Error::EigenvalueOutsideField(format!(
                "{} of {} roots of {} lie in the field",
                total,
                deg,
                f.to_string_var("x")
            )));
        }
        Ok(roots)
    }
}

/// A field over which a polynomial splits, with its roots.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub field: Field,
    pub roots: Vec<(Value, usize)>,
    /// False when the field was supplied rather than built; minimality is then
    /// not established.
    pub minimality_verified: bool,
}

/// Builds a splitting field by adjoining roots of irreducible factors.
pub fn splitting_field(f: &Poly, prefix: &str) -> Result<SplittingField> {
    splitting_field_with_cap(f, prefix, DEFAULT_DEGREE_CAP)
}

pub fn splitting_field_with_cap(f: &Poly, prefix: &str, cap: usize) -> Result<SplittingField> {
    let fld = f.field();
    if fld.has_transcendental() {
        return Err(Error::UnsupportedBase(
            "splitting fields over rational-function bases must be supplied".into(),
        ));
    }
    if fld.characteristic() != 0 && !matches!(fld.kind(), Kind::Prime(_)) {
        return Err(Error::UnsupportedBase(
            "factorization over extensions of prime fields is not provided".into(),
        ));
    }
    let mut e = fld.clone();
    let mut step = 0;
    loop {
        let g = f.map(&e, |c| e.embed_from(fld, c));
        let factors = factor_base_with_bound(&g, cap)?;
        match factors.iter().find(|(h, _)| h.degree().unwrap() > 1) {
            None => {
                let roots = factors
                    .iter()
                    .map(|(h, m)| (e.neg(&h.coeff(0)), *m))
                    .collect();
                return Ok(SplittingField {
                    field: e,
                    roots,
                    minimality_verified: true,
                });
            }
            Some((h, _)) => {
                step += 1;
                e = extend_with_cap(&e, &format!("{prefix}{step}"), h, cap)?;
            }
        }
    }
}

/// Checks that a supplied field splits `f`.
pub fn verify_splitting_field(f: &Poly, ctx: &SplitContext) -> Result<SplittingField> {
    let roots = ctx.split(f)?;
    Ok(SplittingField {
        field: ctx.field().clone(),
        roots,
        minimality_verified: false,
    })
}
