//! Invariants of substitution actions on polynomial rings, degree by degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::{Field, Matrix, Value};

/// Multivariate polynomial as exponent vector → coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Value>,
}

impl MPoly {
    pub fn zero(field: &Field, nvars: usize) -> MPoly {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Value) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn int(field: &Field, nvars: usize, c: i64) -> MPoly {
        MPoly::constant(field, nvars, field.from_i64(c))
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.add_term(e, field.one());
        p
    }

    pub fn monomial(field: &Field, exps: Vec<u32>) -> MPoly {
        let mut p = MPoly::zero(field, exps.len());
        p.add_term(exps, field.one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Value) {
        let f = &self.field;
        let cur = self.terms.remove(&e).unwrap_or_else(|| f.zero());
        let s = f.add(&cur, &c);
        if !f.is_zero(&s) {
            self.terms.insert(e, s);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Value> {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), self.field.neg(c));
        }
        p
    }

    pub fn scale(&self, c: &Value) -> MPoly {
        let mut p = MPoly::zero(&self.field, self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), self.field.mul(c, x));
        }
        p
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut p = MPoly::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, self.field.mul(c1, c2));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::int(&self.field, self.nvars, 1), |acc, _| acc.mul(self))
    }

    /// `f(s_1, …, s_n)`.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        let nv = subs.first().map_or(self.nvars, |s| s.nvars);
        let mut out = MPoly::zero(&self.field, nv);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&self.field, nv, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&s.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

/// Linear constraints `f ∘ σ = f ∘ τ` on polynomials in `nvars` variables, and
/// an optional restriction map whose image is measured.
#[derive(Clone, Debug)]
pub struct TruncatedAction {
    pub field: Field,
    pub nvars: usize,
    pub constraints: Vec<(Vec<MPoly>, Vec<MPoly>)>,
    pub restriction: Option<Vec<MPoly>>,
}

impl TruncatedAction {
    pub fn trivial(field: &Field, nvars: usize) -> TruncatedAction {
        TruncatedAction {
            field: field.clone(),
            nvars,
            constraints: Vec::new(),
            restriction: None,
        }
    }

    /// Invariance under substitutions generating a group.
    pub fn from_substitutions(field: &Field, nvars: usize, gens: Vec<Vec<MPoly>>) -> TruncatedAction {
        let id: Vec<MPoly> = (0..nvars).map(|i| MPoly::var(field, nvars, i)).collect();
        TruncatedAction {
            field: field.clone(),
            nvars,
            constraints: gens.into_iter().map(|g| (id.clone(), g)).collect(),
            restriction: None,
        }
    }

    /// `f(t) = f(−t) = f(1 − t)` in one variable.
    pub fn condition_two() -> TruncatedAction {
        let q = Field::rationals();
        let t = MPoly::var(&q, 1, 0);
        let one = MPoly::int(&q, 1, 1);
        TruncatedAction::from_substitutions(&q, 1, vec![vec![t.scale(&q.from_i64(-1))], vec![one.sub(&t)]])
    }

    /// `f(0, y) = f(1, y)` and `f(x, y) = f(x, x − y)`, restricted to `x = 0`.
    pub fn condition_four() -> TruncatedAction {
        let q = Field::rationals();
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let zero = MPoly::zero(&q, 2);
        let one = MPoly::int(&q, 2, 1);
        TruncatedAction {
            field: q.clone(),
            nvars: 2,
            constraints: vec![
                (vec![zero.clone(), y.clone()], vec![one, y.clone()]),
                (vec![x.clone(), y.clone()], vec![x.clone(), x.sub(&y)]),
            ],
            restriction: Some(vec![zero, y]),
        }
    }
}

fn monomials(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..=max_deg {
        for mut rest in monomials(nvars - 1, max_deg - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u32,
    /// Dimension of all polynomials of degree at most `degree`.
    pub dim_space: usize,
    pub dim_invariants: usize,
    /// Dimension of the image of the invariants under the restriction map.
    pub dim_restricted: Option<usize>,
}

/// For each `D ≤ cap`, the dimension of `{f : deg f ≤ D, constraints hold}`.
pub fn truncated_invariants(action: &TruncatedAction, cap: u32) -> Result<Vec<DegreeRow>> {
    if cap > 12 {
        return Err(Error::DegreeBound(format!("degree cap {cap} exceeds 12")));
    }
    let f = &action.field;
    let mut rows_out = Vec::new();
    for deg in 0..=cap {
        let mons = monomials(action.nvars, deg);
        let images: Vec<Vec<MPoly>> = mons
            .iter()
            .map(|e| {
                let m = MPoly::monomial(f, e.clone());
                action
                    .constraints
                    .iter()
                    .map(|(s, t)| m.substitute(s).sub(&m.substitute(t)))
                    .collect()
            })
            .collect();
        let invariants = if action.constraints.is_empty() {
            (0..mons.len())
                .map(|i| (0..mons.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                .collect()
        } else {
            kernel_of(f, &images)?
        };
        let dim_restricted = match &action.restriction {
            None => None,
            Some(r) => {
                let restricted: Vec<Vec<MPoly>> = invariants
                    .iter()
                    .map(|v: &Vec<Value>| {
                        let mut acc = MPoly::zero(f, action.nvars);
                        for (c, e) in v.iter().zip(&mons) {
                            if !f.is_zero(c) {
                                acc = acc.add(&MPoly::monomial(f, e.clone()).substitute(r).scale(c));
                            }
                        }
                        vec![acc]
                    })
                    .collect();
                Some(rank_of(f, &restricted)?)
            }
        };
        rows_out.push(DegreeRow {
            degree: deg,
            dim_space: mons.len(),
            dim_invariants: invariants.len(),
            dim_restricted,
        });
    }
    Ok(rows_out)
}

/// Columns are the concatenated coefficient vectors of each entry.
fn coefficient_matrix(f: &Field, cols: &[Vec<MPoly>]) -> Matrix {
    let mut keys: Vec<(usize, Vec<u32>)> = Vec::new();
    for col in cols {
        for (k, p) in col.iter().enumerate() {
            for e in p.terms().keys() {
                keys.push((k, e.clone()));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let data: Vec<Vec<Value>> = cols
        .iter()
        .map(|col| {
            keys.iter()
                .map(|(k, e)| col[*k].terms().get(e).cloned().unwrap_or_else(|| f.zero()))
                .collect()
        })
        .collect();
    Matrix::from_columns(f, keys.len(), &data)
}

fn kernel_of(f: &Field, cols: &[Vec<MPoly>]) -> Result<Vec<Vec<Value>>> {
    let m = coefficient_matrix(f, cols);
    if m.rows() == 0 {
        return Ok((0..cols.len())
            .map(|i| (0..cols.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect());
    }
    m.kernel()
}

fn rank_of(f: &Field, cols: &[Vec<MPoly>]) -> Result<usize> {
    let m = coefficient_matrix(f, cols);
    if m.rows() == 0 {
        return Ok(0);
    }
    m.rank()
}
