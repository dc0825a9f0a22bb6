//! Derivations and the rank-two bimodules `M(D)` in positive characteristic.

use crate::error::{Error, Result};
use crate::kernel::{Field, Kind, Matrix, Value};

use super::Bimodule;

/// A base-linear derivation of `L`, given on the generators above the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    field: Field,
    values: Vec<Value>,
}

impl Derivation {
    /// Builds a derivation and checks the Leibniz rule on every relation.
    pub fn new(l: &Field, values: Vec<Value>) -> Result<Derivation> {
        let d = Derivation::new_unchecked(l, values)?;
        for (k, layer) in l.layers_above_base().iter().enumerate() {
            let (parent, modulus) = match layer.kind() {
                Kind::Extension { parent, modulus, .. } => (parent, modulus),
                _ => unreachable!(),
            };
            // D(f(γ)) = f^D(γ) + f'(γ) D(γ)
            let g = l.embed_from(layer, &layer.generator().unwrap());
            let mut acc = l.zero();
            let mut pw = l.one();
            for (i, c) in modulus.iter().enumerate() {
                let dc = d.apply_in(parent, c);
                acc = l.add(&acc, &l.mul(&dc, &pw));
                if i > 0 {
                    let ce = l.embed_from(parent, c);
                    let term = l.mul(&l.mul(&l.from_i64(i as i64), &ce), &l.pow(&g, i as u64 - 1));
                    acc = l.add(&acc, &l.mul(&term, &d.values[k]));
                }
                pw = l.mul(&pw, &g);
            }
            if !l.is_zero(&acc) {
                return Err(Error::AxiomViolation(format!(
                    "Leibniz rule fails on the relation of {}",
                    layer.var_name().unwrap_or("?")
                )));
            }
        }
        Ok(d)
    }

    pub fn new_unchecked(l: &Field, values: Vec<Value>) -> Result<Derivation> {
        if values.len() != l.layers_above_base().len() {
            return Err(Error::Invalid("one value per generator above the base".into()));
        }
        Ok(Derivation {
            field: l.clone(),
            values,
        })
    }

    pub fn zero(l: &Field) -> Derivation {
        Derivation {
            field: l.clone(),
            values: vec![l.zero(); l.layers_above_base().len()],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }

    pub fn apply(&self, a: &Value) -> Value {
        self.apply_in(&self.field, a)
    }

    fn apply_in(&self, layer: &Field, a: &Value) -> Value {
        let l = &self.field;
        match (layer.kind(), a) {
            (Kind::Extension { parent, .. }, Value::Ext(coords)) => {
                let k = layer.depth() - l.base().depth() - 1;
                let g = l.embed_from(layer, &layer.generator().unwrap());
                let mut acc = l.zero();
                // Horner on Σ c_i γ^i for both the coefficient part and the γ part
                let mut pw = l.one();
                for (i, c) in coords.iter().enumerate() {
                    if !parent.is_zero(c) {
                        acc = l.add(&acc, &l.mul(&self.apply_in(parent, c), &pw));
                        if i > 0 {
                            let ce = l.embed_from(parent, c);
                            let t = l.mul(&l.from_i64(i as i64), &l.mul(&ce, &l.pow(&g, i as u64 - 1)));
                            acc = l.add(&acc, &l.mul(&t, &self.values[k]));
                        }
                    }
                    pw = l.mul(&pw, &g);
                }
                acc
            }
            _ => l.zero(),
        }
    }

    pub fn scale(&self, a: &Value) -> Derivation {
        Derivation {
            field: self.field.clone(),
            values: self.values.iter().map(|v| self.field.mul(a, v)).collect(),
        }
    }

    pub fn add(&self, o: &Derivation) -> Derivation {
        Derivation {
            field: self.field.clone(),
            values: self.values.iter().zip(&o.values).map(|(a, b)| self.field.add(a, b)).collect(),
        }
    }

    /// `[X, Y] = XY − YX`.
    pub fn bracket(&self, o: &Derivation) -> Derivation {
        let l = &self.field;
        let values = l
            .generators_above_base()
            .iter()
            .map(|g| l.sub(&self.apply(&o.apply(g)), &o.apply(&self.apply(g))))
            .collect();
        Derivation {
            field: l.clone(),
            values,
        }
    }

    /// The `n`-fold composite on generators; a derivation when `n` is a power
    /// of the characteristic.
    pub fn power(&self, n: usize) -> Derivation {
        let l = &self.field;
        let values = l
            .generators_above_base()
            .iter()
            .map(|g| {
                let mut x = g.clone();
                for _ in 0..n {
                    x = self.apply(&x);
                }
                x
            })
            .collect();
        Derivation {
            field: l.clone(),
            values,
        }
    }

    /// `a` with `other = a · self`, if one exists.
    pub fn proportionality(&self, other: &Derivation) -> Option<Value> {
        let l = &self.field;
        let k = self.values.iter().position(|v| !l.is_zero(v));
        match k {
            None => other.is_zero().then(|| l.one()),
            Some(k) => {
                let a = l.div(&other.values[k], &self.values[k]).ok()?;
                (self.scale(&a) == *other).then_some(a)
            }
        }
    }

    /// `M(D)`: `φ(a) = [[a, D(a)], [0, a]]`.
    pub fn m_of_d(&self) -> Result<Bimodule> {
        let l = &self.field;
        if l.characteristic() == 0 {
            return Err(Error::Invalid("M(D) is used in positive characteristic".into()));
        }
        let images = l
            .generators_above_base()
            .iter()
            .zip(&self.values)
            .map(|(g, dg)| Matrix::from_rows(l, vec![vec![g.clone(), dg.clone()], vec![l.zero(), g.clone()]]))
            .collect();
        Bimodule::new(l, 2, images)
    }
}

/// Generators of `D(P)`: for `v` in the second socle layer, the components of
/// `a ↦ v·a − a v` along a basis of the trivial layer.
pub fn derivation_span(p: &Bimodule) -> Result<Vec<Derivation>> {
    let l = p.field();
    let d = p.rank();
    let gens = l.generators_above_base();
    let shifted: Vec<Matrix> = gens
        .iter()
        .zip(p.images())
        .map(|(g, m)| {
            let mut s = m.clone();
            s.add_scalar_diag(&l.neg(g));
            s
        })
        .collect();
    if gens.is_empty() || d == 0 {
        return Ok(Vec::new());
    }
    let stack = |ms: &[Matrix]| -> Result<Vec<Vec<Value>>> {
        let mut rows = Vec::new();
        for m in ms {
            let t = m.transpose();
            for i in 0..t.rows() {
                rows.push(t.row(i));
            }
        }
        Matrix::from_rows(l, rows).kernel()
    };
    let f1 = stack(&shifted)?;
    if f1.is_empty() {
        return Ok(Vec::new());
    }
    let w = Matrix::from_rows(l, f1.clone());
    // columns annihilating the trivial layer
    let ann = w.kernel()?;
    let f2 = if ann.is_empty() {
        (0..d)
            .map(|i| {
                let mut v = vec![l.zero(); d];
                v[i] = l.one();
                v
            })
            .collect()
    } else {
        let n = Matrix::from_columns(l, d, &ann);
        stack(&shifted.iter().map(|s| s.mul(&n)).collect::<Vec<_>>())?
    };
    let wt = w.transpose();
    let mut out = Vec::new();
    for v in &f2 {
        let deltas: Vec<Vec<Value>> = shifted
            .iter()
            .map(|s| {
                let dv = s.vec_mul(v);
                wt.solve(&dv).map(|c| c.expect("second layer maps into the first"))
            })
            .collect::<Result<_>>()?;
        for k in 0..f1.len() {
            let values: Vec<Value> = deltas.iter().map(|c| c[k].clone()).collect();
            let der = Derivation::new_unchecked(l, values)?;
            if !der.is_zero() {
                out.push(der);
            }
        }
    }
    Ok(out)
}

/// Membership of `D` in `D(P)`, the `L`-span of [`derivation_span`].
pub fn contains_m_of_d(p: &Bimodule, dd: &Derivation) -> Result<bool> {
    if dd.is_zero() {
        return Ok(true);
    }
    let l = p.field();
    let span = derivation_span(p)?;
    if span.is_empty() {
        return Ok(false);
    }
    let cols: Vec<Vec<Value>> = span.iter().map(|x| x.values().to_vec()).collect();
    let m = Matrix::from_columns(l, dd.values().len(), &cols);
    Ok(m.solve(dd.values())?.is_some())
}

fn elementary(l: &Field, factors: usize, k: usize) -> Vec<Value> {
    (0..1usize << factors)
        .map(|i| if i.count_ones() as usize == k { l.one() } else { l.zero() })
        .collect()
}

fn check_extension_vector(p: &Bimodule, v2: &[Value], v1: &[Value], dd: &Derivation) -> bool {
    let l = p.field();
    l.generators_above_base()
        .iter()
        .zip(p.images())
        .zip(dd.values())
        .all(|((g, m), dg)| {
            let lhs = m.vec_mul(v2);
            let triv = m.vec_mul(v1);
            lhs.iter()
                .zip(v2)
                .zip(v1)
                .all(|((x, a), b)| *x == l.add(&l.mul(g, a), &l.mul(dg, b)))
                && triv.iter().zip(v1).all(|(x, b)| *x == l.mul(g, b))
        })
}

/// In `M(X) ⊗ M(Y) ⊗ M(X) ⊗ M(Y)` the span of `x1 y1 x2 y2` and
/// `(x1 − x2)(y1 − y2)` is `M([X, Y])`.
pub fn bracket_tensor_identity(x: &Derivation, y: &Derivation) -> Result<bool> {
    let l = x.field();
    let mx = x.m_of_d()?;
    let my = y.m_of_d()?;
    let p = mx.tensor(&my)?.tensor(&mx)?.tensor(&my)?;
    // factor order x1, y1, x2, y2 with x1 most significant; bit set = x
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * 2 + b) * 2 + c) * 2 + d;
    let mut v2 = vec![l.zero(); 16];
    v2[idx(1, 1, 0, 0)] = l.one();
    v2[idx(0, 0, 1, 1)] = l.one();
    v2[idx(1, 0, 0, 1)] = l.from_i64(-1);
    v2[idx(0, 1, 1, 0)] = l.from_i64(-1);
    let mut v1 = vec![l.zero(); 16];
    v1[idx(1, 1, 1, 1)] = l.one();
    Ok(check_extension_vector(&p, &v2, &v1, &x.bracket(y)))
}

/// In `M(D)^{⊗(2p−1)}` the span of `e_{2p−1}` and `e_{p−1}` is `M(D^p)`.
pub fn jacobson_tensor_identity(dd: &Derivation) -> Result<bool> {
    let l = dd.field();
    let p = l.characteristic() as usize;
    let n = 2 * p - 1;
    let t = dd.m_of_d()?.tensor_power(n)?;
    let v1 = elementary(l, n, n);
    let v2 = elementary(l, n, p - 1);
    Ok(check_extension_vector(&t, &v2, &v1, &dd.power(p)))
}

/// The tensor identity for `D^p` holds, and `D ∈ D(P)` implies `D^p ∈ D(P)`.
pub fn p_power_compatible(p: &Bimodule, dd: &Derivation) -> Result<bool> {
    if !jacobson_tensor_identity(dd)? {
        return Ok(false);
    }
    let q = p.field().characteristic() as usize;
    Ok(!contains_m_of_d(p, dd)? || contains_m_of_d(p, &dd.power(q))?)
}
