//! Group algebras, generalized Taft algebras and the 16-dimensional Nichols
//! Hopf algebra.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::kernel::{qbinom, Field, Matrix, Value};

use super::{CoTable, FinAlgebra, HopfAlgebra, Table};

/// `k[G]` with `Δ(g) = g ⊗ g` and `S(g) = g⁻¹`.
pub fn group_algebra(field: &Field, g: &FiniteGroup) -> Result<HopfAlgebra> {
    let n = g.order();
    let mut mult: Table = vec![vec![Vec::new(); n]; n];
    for (a, row) in mult.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            cell.push((g.mul(a, b), field.one()));
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[g.identity()] = field.one();
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let alg = FinAlgebra::new_unchecked(field, names.clone(), mult, unit)?;
    let comult: CoTable = (0..n).map(|a| vec![((a, a), field.one())]).collect();
    let mut s = Matrix::zeros(field, n, n);
    for a in 0..n {
        s.set(g.inv(a), a, field.one());
    }
    let generators = names.iter().enumerate().map(|(i, nm)| (nm.clone(), alg.basis(i))).collect();
    let words = (0..n).map(|i| vec![i]).collect();
    HopfAlgebra::new(alg, comult, vec![field.one(); n], s, generators, words)
}

fn check_primitive_root(field: &Field, m: usize, q: &Value) -> Result<()> {
    let mut p = field.one();
    for k in 1..=m {
        p = field.mul(&p, q);
        if field.is_one(&p) != (k == m) {
            return Err(Error::NotPrimitiveRoot(format!(
                "{} is not a primitive {m}-th root of unity",
                field.fmt_value(q)
            )));
        }
    }
    Ok(())
}

/// The generalized Taft algebra of dimension `m²n`: `g^{mn} = 1`,
/// `gx = qxg`, `x^m = g^m − 1`, `Δ(g) = g ⊗ g`, `Δ(x) = x ⊗ g + 1 ⊗ x`.
/// Basis `g^a x^b` sits at index `a·m + b`.
pub fn taft(field: &Field, m: usize, n: usize, q: &Value) -> Result<HopfAlgebra> {
    if m < 2 || n < 1 {
        return Err(Error::Invalid("taft needs m ≥ 2 and n ≥ 1".into()));
    }
    check_primitive_root(field, m, q)?;
    let order = m * n;
    let d = order * m;
    let idx = |a: usize, b: usize| (a % order) * m + b;
    let qinv = field.inv(q)?;
    let qpow: Vec<Value> = (0..m).map(|k| field.pow(&qinv, k as u64)).collect();
    let mut mult: Table = vec![vec![Vec::new(); d]; d];
    for a in 0..order {
        for b in 0..m {
            for c in 0..order {
                for e in 0..m {
                    // x^b g^c = q^{-bc} g^c x^b
                    let s = qpow[(b * c) % m].clone();
                    let cell = &mut mult[idx(a, b)][idx(c, e)];
                    if b + e < m {
                        cell.push((idx(a + c, b + e), s));
                    } else {
                        let r = b + e - m;
                        cell.push((idx(a + c + m, r), s.clone()));
                        cell.push((idx(a + c, r), field.neg(&s)));
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let names: Vec<String> = (0..d).map(|i| taft_name(i / m, i % m)).collect();
    let alg = FinAlgebra::new_unchecked(field, names, mult, unit)?;
    // Δ(g^a x^b) = Σ_i [b, i]_{q⁻¹} g^a x^i ⊗ g^{a+i} x^{b-i}
    let mut comult: CoTable = vec![Vec::new(); d];
    for a in 0..order {
        for b in 0..m {
            for i in 0..=b {
                let c = qbinom(field, b, i, &qinv);
                comult[idx(a, b)].push(((idx(a, i), idx(a + i, b - i)), c));
            }
        }
    }
    let counit = (0..d).map(|i| if i % m == 0 { field.one() } else { field.zero() }).collect();
    let generators = vec![("g".to_string(), alg.basis(idx(1, 0))), ("x".to_string(), alg.basis(idx(0, 1)))];
    let words = (0..d)
        .map(|i| {
            let mut w = vec![0; i / m];
            w.extend(std::iter::repeat(1).take(i % m));
            w
        })
        .collect();
    HopfAlgebra::with_derived_antipode(alg, comult, counit, generators, words)
}

fn taft_name(a: usize, b: usize) -> String {
    let g = match a {
        0 => String::new(),
        1 => "g".into(),
        _ => format!("g^{a}"),
    };
    let x = match b {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{b}"),
    };
    match (g.is_empty(), x.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => g,
        (true, false) => x,
        (false, false) => format!("{g}{x}"),
    }
}

/// Product of `g^a x^S` and `g^b x^T` in the Nichols algebra as `(index, sign)`.
fn nichols_product(a: usize, s: usize, b: usize, t: usize) -> Option<(usize, i64)> {
    if s & t != 0 {
        return None;
    }
    let mut sign = if (s.count_ones() as usize * b) % 2 == 1 { -1 } else { 1 };
    // x^S x^T: each pair (i ∈ S, j ∈ T) with i > j needs one swap
    for i in 0..3 {
        if s >> i & 1 == 1 {
            let below = t & ((1 << i) - 1);
            if below.count_ones() % 2 == 1 {
                sign = -sign;
            }
        }
    }
    Some((((a + b) % 2) * 8 + (s | t), sign))
}

/// The 16-dimensional Nichols Hopf algebra: `g² = 1`, `x_i² = 0`,
/// `g x_i = −x_i g`, `x_i x_j = −x_j x_i`, `Δ(x_i) = 1 ⊗ x_i + x_i ⊗ g`.
/// Basis `g^a x^S` at index `a·8 + S`, with `S` a bit mask over `x_0, x_1, x_2`.
pub fn nichols16(field: &Field) -> Result<HopfAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedBase("the Nichols algebra needs characteristic ≠ 2".into()));
    }
    let d = 16;
    let mut mult: Table = vec![vec![Vec::new(); d]; d];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if let Some((k, s)) = nichols_product(i / 8, i % 8, j / 8, j % 8) {
                cell.push((k, field.from_i64(s)));
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let names: Vec<String> = (0..d).map(nichols_name).collect();
    let alg = FinAlgebra::new_unchecked(field, names, mult, unit)?;
    let g = alg.basis(8);
    let xs: Vec<Vec<Value>> = (0..3).map(|i| alg.basis(1 << i)).collect();
    // Δ on generators, extended multiplicatively along each basis word
    let pure = |u: &[Value], v: &[Value]| -> Vec<Value> {
        let mut t = vec![field.zero(); d * d];
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                t[i * d + j] = field.mul(a, b);
            }
        }
        t
    };
    let one = alg.one();
    let dg = pure(&g, &g);
    let dx: Vec<Vec<Value>> = xs.iter().map(|x| {
        let a = pure(&one, x);
        let b = pure(x, &g);
        a.iter().zip(&b).map(|(p, q)| field.add(p, q)).collect()
    }).collect();
    let words = nichols_words();
    let mut comult: CoTable = vec![Vec::new(); d];
    for (i, w) in words.iter().enumerate() {
        let mut t = pure(&one, &one);
        for &letter in w {
            let factor = if letter == 0 { &dg } else { &dx[letter - 1] };
            t = alg.tensor_mul(&t, factor);
        }
        comult[i] = t
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(p, c)| ((p / d, p % d), c.clone()))
            .collect();
    }
    let counit = (0..d).map(|i| if i % 8 == 0 { field.one() } else { field.zero() }).collect();
    let mut generators = vec![("g".to_string(), g)];
    for (i, x) in xs.into_iter().enumerate() {
        generators.push((format!("x{i}"), x));
    }
    HopfAlgebra::with_derived_antipode(alg, comult, counit, generators, words)
}

/// `g^a x_{i1} x_{i2} …` with increasing indices, as letters over
/// `[g, x0, x1, x2]`.
fn nichols_words() -> Vec<Vec<usize>> {
    (0..16)
        .map(|i| {
            let mut w = vec![0; i / 8];
            for b in 0..3 {
                if (i % 8) >> b & 1 == 1 {
                    w.push(b + 1);
                }
            }
            w
        })
        .collect()
}

fn nichols_name(i: usize) -> String {
    let mut s = String::new();
    if i / 8 == 1 {
        s.push('g');
    }
    for b in 0..3 {
        if (i % 8) >> b & 1 == 1 {
            s.push_str(&format!("x{b}"));
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}
