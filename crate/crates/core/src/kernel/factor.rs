//! Polynomial factorization over prime fields, the rationals and number fields.
//!
//! Prime fields use square-free, distinct-degree and Cantor–Zassenhaus
//! equal-degree splitting. The rationals use a modular factorization lifted
//! by Hensel's lemma followed by subset recombination. Number fields reduce
//! to the rationals through the norm of a shifted polynomial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Kind, Value};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Default degree bound for [`factor_base`].
pub const FACTOR_DEGREE_BOUND: usize = 24;

/// Factors into monic irreducibles with multiplicities (degree bound 24).
pub fn factor_base(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    factor_base_with_bound(f, FACTOR_DEGREE_BOUND)
}

pub fn factor_base_with_bound(f: &Poly, bound: usize) -> Result<Vec<(Poly, usize)>> {
    let fld = f.field();
    let deg = f
        .degree()
        .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?;
    if deg > bound {
        return Err(Error::DegreeBound(format!("degree {deg} exceeds factoring bound {bound}")));
    }
    if fld.has_transcendental() {
        return Err(Error::UnsupportedBase(
            "factorization over rational-function fields is verification-only".into(),
        ));
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let mut out = match fld.kind() {
        Kind::Prime(p) => factor_fp_poly(f, *p)?,
        Kind::Rationals => factor_q_poly(f)?,
        Kind::Extension { .. } if fld.characteristic() == 0 => factor_number_field(f)?,
        _ => {
            return Err(Error::UnsupportedBase(
                "factorization over extensions of prime fields is not provided".into(),
            ))
        }
    };
    sort_factors(&mut out);
    Ok(out)
}

/// Roots lying in the coefficient field, with multiplicities.
pub fn roots_in_field(f: &Poly) -> Result<Vec<(Value, usize)>> {
    let fld = f.field();
    let mut out = Vec::new();
    for (g, m) in factor_base_with_bound(f, 64)? {
        if g.degree() == Some(1) {
            out.push((fld.neg(&g.coeff(0)), m));
        }
    }
    Ok(out)
}

fn sort_factors(v: &mut [(Poly, usize)]) {
    v.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
}

// ---------------------------------------------------------------------------
// Square-free decomposition in characteristic zero (Yun).

fn squarefree_char0(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let f = f.monic()?;
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.div_exact(&a0)?;
    let c = df.div_exact(&a0)?;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d)?;
        let nb = b.div_exact(&a)?;
        let nc = d.div_exact(&a)?;
        d = nc.sub(&nb.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p on u64 residues.

type Fp = Vec<u64>;

fn fp_trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(acc, base, p);
        }
        base = fp_mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + fp_mulmod(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    fp_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = fp_mulmod(*r.last().unwrap(), inv, p);
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - fp_mulmod(c, bj, p)) % p;
        }
        q[k] = c;
        r.pop();
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = fp_inv(lc, p);
            a.iter().map(|&x| fp_mulmod(x, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = fp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns (g, s, t) with s a + t b = g monic.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| {
        let mut o: Fp = v.iter().map(|&x| fp_mulmod(x, inv, p)).collect();
        fp_trim(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| fp_mulmod(c, (i as u64) % p, p))
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let b = fp_divrem(base, m, p).1;
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

fn fp_is_one(a: &Fp) -> bool {
    a.len() == 1 && a[0] == 1
}

fn fp_squarefree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut i = 1;
    let df = fp_deriv(f, p);
    let mut c = fp_gcd(f, &df, p);
    let mut w = fp_divrem(f, &c, p).0;
    while !fp_is_one(&w) {
        let y = fp_gcd(&w, &c, p);
        let z = fp_divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = fp_divrem(&c, &y, p).0;
    }
    if c.len() > 1 {
        let root: Fp = c.iter().step_by(p as usize).copied().collect();
        for (g, j) in fp_squarefree(&root, p) {
            out.push((g, j * p as usize));
        }
    }
    out
}

fn fp_ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut fs = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 1;
    while fs.len() - 1 >= 2 * i {
        h = fp_powmod(&h, &pe, &fs, p);
        let g = fp_gcd(&fs, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            fs = fp_divrem(&fs, &g, p).0;
            h = fp_divrem(&h, &fs, p).1;
            out.push((g, i));
        }
        i += 1;
    }
    if fs.len() > 1 {
        let d = fs.len() - 1;
        out.push((fs, d));
    }
    out
}

fn fp_edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = fp_divrem(&fp_mul(&cur, &cur, p), f, p).1;
                acc = fp_add(&acc, &cur, p);
            }
            acc
        } else {
            fp_sub(&fp_powmod(&a, &exp, f, p), &vec![1], p)
        };
        let g = fp_gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            fp_edf(&g, d, p, rng, out);
            fp_edf(&fp_monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicity of a nonzero polynomial mod p.
fn factor_fp(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let f = fp_monic(f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (sf, m) in fp_squarefree(&f, p) {
        for (g, d) in fp_ddf(&sf, p) {
            let mut parts = Vec::new();
            fp_edf(&g, d, p, &mut rng, &mut parts);
            for q in parts {
                out.push((q, m));
            }
        }
    }
    out.sort();
    out
}

fn factor_fp_poly(f: &Poly, p: u64) -> Result<Vec<(Poly, usize)>> {
    let fld = f.field();
    let raw: Fp = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Value::P(x) => *x,
            _ => unreachable!(),
        })
        .collect();
    Ok(factor_fp(&raw, p)
        .into_iter()
        .map(|(g, m)| (Poly::new(fld, g.into_iter().map(Value::P).collect()), m))
        .collect())
}

// ---------------------------------------------------------------------------
// Integer polynomials.

type Zp = Vec<BigInt>;

fn z_trim(a: &mut Zp) {
    while a.last().map(|x| x.is_zero()).unwrap_or(false) {
        a.pop();
    }
}

fn z_mul(a: &Zp, b: &Zp) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

fn z_content(a: &Zp) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn z_primitive(a: &Zp) -> Zp {
    let c = z_content(a);
    let mut out: Zp = if c.is_zero() { a.clone() } else { a.iter().map(|x| x / &c).collect() };
    if out.last().map(|x| x.is_negative()).unwrap_or(false) {
        out = out.iter().map(|x| -x).collect();
    }
    out
}

/// Exact quotient over Z, if it exists.
fn z_divide(a: &Zp, b: &Zp) -> Option<Zp> {
    let mut r = a.clone();
    z_trim(&mut r);
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        z_trim(&mut r);
    }
    if r.is_empty() {
        z_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn z_mod(a: &Zp, m: &BigInt) -> Zp {
    let mut out: Zp = a.iter().map(|x| x.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn z_symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m / 2;
    let mut out: Zp = a
        .iter()
        .map(|x| {
            let r = x.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

fn z_to_fp(a: &Zp, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut out: Fp = a.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
    fp_trim(&mut out);
    out
}

fn fp_to_z(a: &Fp) -> Zp {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts f ≡ g·h (mod p), g monic, to a factorization modulo p^k.
fn hensel_pair(f: &Zp, g: &Fp, h: &Fp, p: u64, k: u32) -> (Zp, Zp) {
    let pb = BigInt::from(p);
    let (_, s, t) = fp_xgcd(g, h, p);
    let _ = s;
    let mut gz = fp_to_z(g);
    let mut hz = fp_to_z(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let diff = {
            let prod = z_mul(&gz, &hz);
            let n = f.len().max(prod.len());
            let mut d: Zp = (0..n)
                .map(|i| {
                    f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
                })
                .collect();
            z_trim(&mut d);
            d
        };
        let e: Zp = diff.iter().map(|x| x / &pj).collect();
        let e = z_to_fp(&e, p);
        // δg = t·e mod g, δh = (e − δg·h)/g
        let dg = fp_divrem(&fp_mul(&t, &e, p), g, p).1;
        let rest = fp_sub(&e, &fp_mul(&dg, h, p), p);
        let dh = fp_divrem(&rest, g, p).0;
        let add = |base: &Zp, d: &Fp| {
            let dz = fp_to_z(d);
            let n = base.len().max(dz.len());
            let mut out: Zp = (0..n)
                .map(|i| {
                    base.get(i).cloned().unwrap_or_default()
                        + &pj * dz.get(i).cloned().unwrap_or_default()
                })
                .collect();
            out = z_mod(&out, &pj1);
            out
        };
        gz = add(&gz, &dg);
        hz = add(&hz, &dh);
        pj = pj1;
    }
    (gz, hz)
}

/// Lifts lc·∏ f_i ≡ f (mod p) to modulo p^k; returns the lifted monic factors.
fn hensel_multi(f: &Zp, factors: &[Fp], p: u64, k: u32) -> Vec<Zp> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        let lc = f.last().unwrap().clone();
        let inv = lc.modinv(&m).expect("leading coefficient invertible mod p");
        return vec![z_mod(&f.iter().map(|x| x * &inv).collect(), &m)];
    }
    let g = factors[0].clone();
    let mut h = fp_monic(&z_to_fp(f, p), p);
    h = fp_divrem(&h, &g, p).0;
    let lcp = z_to_fp(&vec![f.last().unwrap().clone()], p)[0];
    let h: Fp = h.iter().map(|&x| fp_mulmod(x, lcp, p)).collect();
    let (gz, hz) = hensel_pair(f, &g, &h, p, k);
    let mut out = vec![gz];
    out.extend(hensel_multi(&hz, &factors[1..], p, k));
    out
}

fn factor_squarefree_z(f: &Zp) -> Vec<Zp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // choose the prime giving the fewest modular factors among the first good ones
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut good = 0;
    let mut p = 2u64;
    while good < 6 {
        p += 1;
        if !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            continue;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_monic(&z_to_fp(f, p), p);
        let d = fp_deriv(&fp, p);
        if fp_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        good += 1;
        let facs: Vec<Fp> = factor_fp(&fp, p).into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().map(|b| facs.len() < b.1.len()).unwrap_or(true) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.unwrap();
    // coefficient bound for factors: 2^n · ‖f‖₂ · |lc|
    let norm2: BigInt = f.iter().map(|x| x * x).sum();
    let bound = (norm2.sqrt() + 1u32) * BigInt::from(2u32).pow(n as u32) * lc.abs() * 2u32;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = hensel_multi(f, &facs, p, k);
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        for combo in combinations(remaining.len(), s) {
            let lcg = g.last().unwrap().clone();
            let mut cand: Zp = vec![lcg.clone()];
            for &c in &combo {
                cand = z_mod(&z_mul(&cand, &lifted[remaining[c]]), &pk);
            }
            let cand = z_primitive(&z_symmetric(&cand, &pk));
            if let Some(q) = z_divide(&g, &cand) {
                out.push(cand);
                g = q;
                let chosen: Vec<usize> = combo.iter().map(|&c| remaining[c]).collect();
                remaining.retain(|i| !chosen.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    out.push(z_primitive(&g));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn q_to_z(f: &Poly) -> Zp {
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Value::Q(x) => x.clone(),
            _ => unreachable!(),
        })
        .collect();
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: Zp = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    z_primitive(&z)
}

fn z_to_q(fld: &Field, z: &Zp) -> Poly {
    Poly::new(
        fld,
        z.iter().map(|x| Value::Q(BigRational::from_integer(x.clone()))).collect(),
    )
}

fn factor_q_poly(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let fld = f.field();
    let mut out = Vec::new();
    for (sf, m) in squarefree_char0(f)? {
        let z = q_to_z(&sf);
        for g in factor_squarefree_z(&z) {
            out.push((z_to_q(fld, &g).monic()?, m));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Number fields.

/// A number field presented as a single extension Q[y]/(m), with the change
/// of coordinates to and from the original tower.
struct SimpleModel {
    tower: Field,
    simple: Field,
    /// columns: tower coordinates of θ^i
    to_tower: Matrix,
    from_tower: Matrix,
}

impl SimpleModel {
    fn new(tower: &Field) -> Result<SimpleModel> {
        let q = tower.base();
        let n = tower.degree_over_base();
        let gens = tower.generators_above_base();
        let mut budget = 0;
        for cand in integer_combinations(gens.len()) {
            budget += 1;
            if budget > 1000 {
                break;
            }
            let mut theta = tower.zero();
            for (c, g) in cand.iter().zip(&gens) {
                theta = tower.add(&theta, &tower.mul(&tower.from_i64(*c), g));
            }
            let mut cols = Vec::with_capacity(n);
            let mut pw = tower.one();
            for _ in 0..n {
                cols.push(tower.to_base_coords(&pw));
                pw = tower.mul(&pw, &theta);
            }
            let t = Matrix::from_columns(&q, n, &cols);
            if t.rank()? < n {
                continue;
            }
            let inv = t.inverse()?;
            // θ^n in the power basis gives the minimal polynomial
            let top = inv.mul_vec(&tower.to_base_coords(&pw));
            let mut modulus: Vec<Value> = top.iter().map(|c| q.neg(c)).collect();
            modulus.push(q.one());
            let simple = if tower.layers_above_base().len() == 1 && cand == vec![1] {
                tower.clone()
            } else {
                Field::extension_unchecked(&q, "θ", modulus)?
            };
            return Ok(SimpleModel {
                tower: tower.clone(),
                simple,
                to_tower: t,
                from_tower: inv,
            });
        }
        Err(Error::PrimitiveElementNotFound(1000))
    }

    fn to_simple(&self, a: &Value) -> Value {
        if self.simple.ptr_eq(&self.tower) {
            return a.clone();
        }
        let c = self.from_tower.mul_vec(&self.tower.to_base_coords(a));
        self.simple.from_base_coords(&c)
    }

    fn to_tower(&self, a: &Value) -> Value {
        if self.simple.ptr_eq(&self.tower) {
            return a.clone();
        }
        let c = self.to_tower.mul_vec(&self.simple.to_base_coords(a));
        self.tower.from_base_coords(&c)
    }
}

/// Deterministic fan-out enumeration of nonzero integer vectors: all vectors
/// with entries in [-k, k] for k = 1, 2, …, each listed once, the first
/// generator weighted most.
pub fn integer_combinations(len: usize) -> impl Iterator<Item = Vec<i64>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    if len == 0 {
        return out.into_iter();
    }
    // start with the last generator alone (usually primitive), then fan out
    let mut e = vec![0i64; len];
    e[len - 1] = 1;
    seen.insert(e.clone());
    out.push(e);
    for k in 1..=6i64 {
        let mut cur = vec![-k; len];
        loop {
            if cur.iter().any(|&x| x != 0) && cur.iter().map(|x| x.abs()).max() == Some(k) {
                let mut c = cur.clone();
                c.reverse();
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                if cur[i] < k {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -k;
                i += 1;
            }
            if i == len {
                break;
            }
        }
        if out.len() > 2000 {
            break;
        }
    }
    out.into_iter()
}

fn rational_norm(simple: &Field, a: &Value) -> Result<BigRational> {
    let q = simple.base();
    let n = simple.degree_over_base();
    let cols: Vec<Vec<Value>> = (0..n)
        .map(|i| simple.to_base_coords(&simple.mul(a, &simple.basis_element(i))))
        .collect();
    match Matrix::from_columns(&q, n, &cols).det()? {
        Value::Q(x) => Ok(x),
        _ => unreachable!(),
    }
}

fn interpolate_q(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    // Newton divided differences
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = vec![BigRational::zero()];
    for i in (0..n).rev() {
        // poly = poly·(x − xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    while poly.last().map(|x| x.is_zero()).unwrap_or(false) {
        poly.pop();
    }
    poly
}

fn factor_number_field(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let tower = f.field().clone();
    let model = SimpleModel::new(&tower)?;
    let k = model.simple.clone();
    let q = k.base();
    let theta = k.generator().unwrap();
    let n = k.degree_over_base();
    let mut out = Vec::new();
    for (sf, mult) in squarefree_char0(f)? {
        let g = sf.map(&k, |c| model.to_simple(c));
        let dg = g.degree().unwrap();
        if dg == 1 {
            out.push((sf, mult));
            continue;
        }
        let mut done = false;
        for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7] {
            // g_s(x) = g(x − sθ)
            let shift = Poly::new(&k, vec![k.neg(&k.mul(&k.from_i64(s), &theta)), k.one()]);
            let gs = g.compose(&shift);
            let deg_n = n * dg;
            let xs: Vec<BigRational> =
                (0..=deg_n as i64).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
            let mut ys = Vec::with_capacity(xs.len());
            for x in &xs {
                ys.push(rational_norm(&k, &gs.eval(&k.from_rational(x).unwrap()))?);
            }
            let norm = Poly::new(&q, interpolate_q(&xs, &ys).into_iter().map(Value::Q).collect());
            if !norm.is_squarefree()? {
                continue;
            }
            let back = Poly::new(&k, vec![k.mul(&k.from_i64(s), &theta), k.one()]);
            for (ni, _) in factor_q_poly(&norm)? {
                let nik = ni.map(&k, |c| k.embed_from(&q, c));
                let h = gs.gcd(&nik)?;
                if h.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let h = h.compose(&back).monic()?;
                out.push((h.map(&tower, |c| model.to_tower(c)), mult));
            }
            done = true;
            break;
        }
        if !done {
            return Err(Error::Invalid("no square-free norm shift found".into()));
        }
    }
    Ok(out)
}
