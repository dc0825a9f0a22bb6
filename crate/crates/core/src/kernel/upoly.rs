//! Dense univariate polynomial routines on raw coefficient vectors.
//!
//! Coefficients are stored lowest degree first and interpreted over the
//! supplied field. Every routine returns a trimmed vector (no trailing zeros).

use super::field::{Field, Value};
use crate::error::{Error, Result};

pub fn trim(f: &Field, v: &mut Vec<Value>) {
    while let Some(last) = v.last() {
        if f.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

pub fn degree(v: &[Value]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(f.add(x, y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(y.clone()),
            (None, None) => unreachable!(),
        }
    }
    trim(f, &mut out);
    out
}

pub fn neg(f: &Field, a: &[Value]) -> Vec<Value> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(f.sub(x, y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(f.neg(y)),
            (None, None) => unreachable!(),
        }
    }
    trim(f, &mut out);
    out
}

pub fn scale(f: &Field, c: &Value, a: &[Value]) -> Vec<Value> {
    if f.is_zero(c) {
        return Vec::new();
    }
    if f.is_one(c) {
        return a.to_vec();
    }
    let mut out: Vec<Value> = a.iter().map(|x| f.mul(c, x)).collect();
    trim(f, &mut out);
    out
}

pub fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            let t = f.mul(x, y);
            f.add_assign(&mut out[i + j], &t);
        }
    }
    trim(f, &mut out);
    out
}

/// Multiplies by x^k.
pub fn shift(f: &Field, a: &[Value], k: usize) -> Vec<Value> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); k];
    out.extend_from_slice(a);
    out
}

/// Quotient and remainder; fails only if the leading coefficient of `b` is a zero divisor.
pub fn divrem(f: &Field, a: &[Value], b: &[Value]) -> Result<(Vec<Value>, Vec<Value>)> {
    if b.is_empty() {
        return Err(Error::Invalid("division by the zero polynomial".into()));
    }
    let lc_inv = f.try_inv(b.last().unwrap()).ok_or(Error::ZeroDivisor)?;
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &lc_inv);
        for (j, bj) in b.iter().enumerate() {
            if f.is_zero(bj) {
                continue;
            }
            let t = f.mul(&c, bj);
            f.sub_assign(&mut r[k + j], &t);
        }
        q[k] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

/// Remainder modulo a monic polynomial; no inversion needed.
pub fn rem_monic(f: &Field, a: &[Value], m: &[Value]) -> Vec<Value> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    trim(f, &mut r);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r.pop().unwrap();
        if !f.is_zero(&c) {
            for j in 0..dm {
                if f.is_zero(&m[j]) {
                    continue;
                }
                let t = f.mul(&c, &m[j]);
                f.sub_assign(&mut r[k + j], &t);
            }
        }
        trim(f, &mut r);
    }
    r
}

pub fn monic(f: &Field, a: &[Value]) -> Result<Vec<Value>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => {
            if f.is_one(lc) {
                return Ok(a.to_vec());
            }
            let inv = f.try_inv(lc).ok_or(Error::ZeroDivisor)?;
            Ok(scale(f, &inv, a))
        }
    }
}

/// Monic greatest common divisor (zero if both inputs vanish).
pub fn gcd(f: &Field, a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y)?;
        x = y;
        y = monic(f, &r)?;
    }
    monic(f, &x)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g and g monic.
pub fn xgcd(
    f: &Field,
    a: &[Value],
    b: &[Value],
) -> Result<(Vec<Value>, Vec<Value>, Vec<Value>)> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(f, &mut r0);
    trim(f, &mut r1);
    let mut s0 = vec![f.one()];
    let mut s1: Vec<Value> = Vec::new();
    let mut t0: Vec<Value> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => Ok((r0, s0, t0)),
        Some(lc) => {
            let inv = f.try_inv(lc).ok_or(Error::ZeroDivisor)?;
            Ok((scale(f, &inv, &r0), scale(f, &inv, &s0), scale(f, &inv, &t0)))
        }
    }
}

pub fn deriv(f: &Field, a: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(1));
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(&f.from_i64(i as i64), c));
    }
    trim(f, &mut out);
    out
}

pub fn eval(f: &Field, a: &[Value], x: &Value) -> Value {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.mul(&acc, x);
        f.add_assign(&mut acc, c);
    }
    acc
}

pub fn pow(f: &Field, a: &[Value], mut e: u64) -> Vec<Value> {
    let mut base = a.to_vec();
    let mut acc = vec![f.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// Computes a(b(x)).
pub fn compose(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let mut acc: Vec<Value> = Vec::new();
    for c in a.iter().rev() {
        acc = mul(f, &acc, b);
        acc = add(f, &acc, &[c.clone()]);
    }
    acc
}
