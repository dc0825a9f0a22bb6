//! Field handles and element values.
//!
//! A [`Field`] is a cheap, shareable handle describing one layer of a tower:
//! the rationals, a prime field, a simple algebraic extension of a parent
//! layer, or a rational-function field over a constant field. Elements are
//! plain [`Value`]s interpreted relative to a handle; every value is kept in
//! canonical form so that structural equality is field equality.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::upoly;
use crate::error::{Error, Result};

/// Canonical element representation. The owning [`Field`] decides the variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    /// Element of the rationals.
    Q(BigRational),
    /// Residue in `[0, p)`.
    P(u64),
    /// Coordinates over the parent layer, full length.
    Ext(Vec<Value>),
    /// Rational function with coprime parts and monic denominator.
    Rat(Box<RatFn>),
}

/// Numerator and denominator coefficient lists over the constant field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    pub num: Vec<Value>,
    pub den: Vec<Value>,
}

#[derive(Debug)]
pub enum Kind {
    Rationals,
    Prime(u64),
    Extension {
        parent: Field,
        var: String,
        modulus: Vec<Value>,
    },
    Function {
        constants: Field,
        var: String,
    },
}

#[derive(Debug)]
struct FieldData {
    kind: Kind,
    characteristic: u64,
    depth: usize,
    base_degree: usize,
}

/// Shared handle to one layer of an explicitly presented field.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.depth != other.0.depth || self.0.characteristic != other.0.characteristic {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Rationals, Kind::Rationals) => true,
            (Kind::Prime(p), Kind::Prime(q)) => p == q,
            (
                Kind::Extension { parent: a, var: x, modulus: m },
                Kind::Extension { parent: b, var: y, modulus: n },
            ) => x == y && m == n && a == b,
            (
                Kind::Function { constants: a, var: x },
                Kind::Function { constants: b, var: y },
            ) => x == y && a == b,
            _ => false,
        }
    }
}
impl Eq for Field {}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if t < 0 {
        t += p as i128;
    }
    Some(t as u64)
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldData {
            kind: Kind::Rationals,
            characteristic: 0,
            depth: 0,
            base_degree: 1,
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) || p >= (1 << 31) {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(Field(Arc::new(FieldData {
            kind: Kind::Prime(p),
            characteristic: p,
            depth: 0,
            base_degree: 1,
        })))
    }

    /// Rational functions in `var` over a constant field without transcendentals.
    pub fn function_field(constants: &Field, var: &str) -> Result<Field> {
        if constants.has_transcendental() {
            return Err(Error::UnsupportedBase(
                "nested rational-function layers are not supported".into(),
            ));
        }
        Ok(Field(Arc::new(FieldData {
            kind: Kind::Function {
                constants: constants.clone(),
                var: var.to_string(),
            },
            characteristic: constants.characteristic(),
            depth: constants.depth() + 1,
            base_degree: 1,
        })))
    }

    /// Adjoins a root of a monic polynomial without testing irreducibility.
    pub fn extension_unchecked(parent: &Field, var: &str, modulus: Vec<Value>) -> Result<Field> {
        let mut m = modulus;
        upoly::trim(parent, &mut m);
        if m.len() < 3 {
            return Err(Error::Invalid("extension polynomial must have degree at least 2".into()));
        }
        if !parent.is_one(m.last().unwrap()) {
            return Err(Error::Invalid("extension polynomial must be monic".into()));
        }
        let n = m.len() - 1;
        Ok(Field(Arc::new(FieldData {
            characteristic: parent.characteristic(),
            depth: parent.depth() + 1,
            base_degree: parent.degree_over_base() * n,
            kind: Kind::Extension {
                parent: parent.clone(),
                var: var.to_string(),
                modulus: m,
            },
        })))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn ptr_eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Number of generators in the tower (algebraic and transcendental).
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// The layer directly below, if any.
    pub fn parent(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::Extension { parent, .. } => Some(parent),
            Kind::Function { constants, .. } => Some(constants),
            _ => None,
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.0.kind, Kind::Extension { .. })
    }

    pub fn var_name(&self) -> Option<&str> {
        match &self.0.kind {
            Kind::Extension { var, .. } | Kind::Function { var, .. } => Some(var),
            _ => None,
        }
    }

    /// Degree of this layer over its parent (1 for non-algebraic layers).
    pub fn layer_degree(&self) -> usize {
        match &self.0.kind {
            Kind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[Value]> {
        match &self.0.kind {
            Kind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn has_transcendental(&self) -> bool {
        match &self.0.kind {
            Kind::Function { .. } => true,
            Kind::Extension { parent, .. } => parent.has_transcendental(),
            _ => false,
        }
    }

    /// The lowest layer reached by descending through algebraic extensions only.
    pub fn base(&self) -> Field {
        let mut f = self.clone();
        while let Kind::Extension { parent, .. } = &f.0.kind {
            let p = parent.clone();
            f = p;
        }
        f
    }

    pub fn degree_over_base(&self) -> usize {
        self.0.base_degree
    }

    /// The prime subfield.
    pub fn prime_field(&self) -> Field {
        let mut f = self.clone();
        while let Some(p) = f.parent() {
            let p = p.clone();
            f = p;
        }
        f
    }

    /// Layers from `self` down to the prime field.
    pub fn layers(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        while let Some(p) = out.last().unwrap().parent() {
            let p = p.clone();
            out.push(p);
        }
        out
    }

    /// Algebraic layers strictly above the base, bottom to top.
    pub fn layers_above_base(&self) -> Vec<Field> {
        let mut out = Vec::new();
        let mut f = self.clone();
        while f.is_extension() {
            out.push(f.clone());
            let p = f.parent().unwrap().clone();
            f = p;
        }
        out.reverse();
        out
    }

    /// True if `sub` is one of the layers of this tower.
    pub fn contains_layer(&self, sub: &Field) -> bool {
        self.layers().iter().any(|l| l == sub)
    }

    // ---- canonical constants ----

    pub fn zero(&self) -> Value {
        match &self.0.kind {
            Kind::Rationals => Value::Q(BigRational::zero()),
            Kind::Prime(_) => Value::P(0),
            Kind::Extension { parent, modulus, .. } => {
                Value::Ext(vec![parent.zero(); modulus.len() - 1])
            }
            Kind::Function { constants, .. } => Value::Rat(Box::new(RatFn {
                num: Vec::new(),
                den: vec![constants.one()],
            })),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &self.0.kind {
            Kind::Rationals => Value::Q(BigRational::from_integer(n.clone())),
            Kind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Value::P(r.to_u64().unwrap())
            }
            Kind::Extension { parent, modulus, .. } => {
                let mut v = vec![parent.zero(); modulus.len() - 1];
                v[0] = parent.from_bigint(n);
                Value::Ext(v)
            }
            Kind::Function { constants, .. } => {
                let c = constants.from_bigint(n);
                let num = if constants.is_zero(&c) { Vec::new() } else { vec![c] };
                Value::Rat(Box::new(RatFn {
                    num,
                    den: vec![constants.one()],
                }))
            }
        }
    }

    /// Image of a rational number; `None` if the denominator vanishes in characteristic p.
    pub fn from_rational(&self, q: &BigRational) -> Option<Value> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.try_div(&n, &d)
    }

    /// Embeds an element of a lower layer of this tower.
    pub fn embed_from(&self, sub: &Field, a: &Value) -> Value {
        if self == sub {
            return a.clone();
        }
        let chain = self.layers();
        let idx = chain
            .iter()
            .position(|l| l == sub)
            .expect("embed_from: not a layer of this tower");
        let mut v = a.clone();
        for k in (0..idx).rev() {
            v = chain[k].lift_from_parent(v);
        }
        v
    }

    fn lift_from_parent(&self, a: Value) -> Value {
        match &self.0.kind {
            Kind::Extension { parent, modulus, .. } => {
                let mut v = vec![parent.zero(); modulus.len() - 1];
                v[0] = a;
                Value::Ext(v)
            }
            Kind::Function { constants, .. } => {
                let num = if constants.is_zero(&a) { Vec::new() } else { vec![a] };
                Value::Rat(Box::new(RatFn {
                    num,
                    den: vec![constants.one()],
                }))
            }
            _ => panic!("lift_from_parent on a prime field"),
        }
    }

    /// The generator of the top layer.
    pub fn generator(&self) -> Option<Value> {
        match &self.0.kind {
            Kind::Extension { parent, modulus, .. } => {
                let mut v = vec![parent.zero(); modulus.len() - 1];
                v[1] = parent.one();
                Some(Value::Ext(v))
            }
            Kind::Function { constants, .. } => Some(Value::Rat(Box::new(RatFn {
                num: vec![constants.zero(), constants.one()],
                den: vec![constants.one()],
            }))),
            _ => None,
        }
    }

    /// All generators of the tower, bottom to top, embedded in this layer.
    pub fn generators(&self) -> Vec<Value> {
        let chain = self.layers();
        let mut out = Vec::new();
        for l in chain.iter().rev() {
            if let Some(g) = l.generator() {
                out.push(self.embed_from(l, &g));
            }
        }
        out
    }

    pub fn generator_names(&self) -> Vec<String> {
        let chain = self.layers();
        chain
            .iter()
            .rev()
            .filter_map(|l| l.var_name().map(|s| s.to_string()))
            .collect()
    }

    /// Generators of the algebraic layers above the base, bottom to top.
    pub fn generators_above_base(&self) -> Vec<Value> {
        self.layers_above_base()
            .iter()
            .map(|l| self.embed_from(l, &l.generator().unwrap()))
            .collect()
    }

    // ---- predicates ----

    pub fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Q(x) => x.is_zero(),
            Value::P(x) => *x == 0,
            Value::Ext(v) => {
                let p = self.parent().unwrap();
                v.iter().all(|c| p.is_zero(c))
            }
            Value::Rat(r) => r.num.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Value) -> bool {
        match a {
            Value::Q(x) => x.is_one(),
            Value::P(x) => *x == 1,
            Value::Ext(v) => {
                let p = self.parent().unwrap();
                p.is_one(&v[0]) && v[1..].iter().all(|c| p.is_zero(c))
            }
            Value::Rat(r) => {
                let c = self.parent().unwrap();
                r.num.len() == 1 && r.den.len() == 1 && c.is_one(&r.num[0])
            }
        }
    }

    /// True if the value lies in the prime field image.
    pub fn is_rational_constant(&self, a: &Value) -> bool {
        match a {
            Value::Q(_) | Value::P(_) => true,
            Value::Ext(v) => {
                let p = self.parent().unwrap();
                p.is_rational_constant(&v[0]) && v[1..].iter().all(|c| p.is_zero(c))
            }
            Value::Rat(r) => {
                let c = self.parent().unwrap();
                r.den.len() == 1 && r.num.len() <= 1 && r.num.iter().all(|x| c.is_rational_constant(x))
            }
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x + y),
            (Value::P(x), Value::P(y)) => {
                let p = self.characteristic();
                Value::P((x + y) % p)
            }
            (Value::Ext(x), Value::Ext(y)) => {
                let p = self.parent().unwrap();
                Value::Ext(x.iter().zip(y).map(|(u, v)| p.add(u, v)).collect())
            }
            (Value::Rat(x), Value::Rat(y)) => {
                let k = self.parent().unwrap();
                if x.num.is_empty() {
                    return b.clone();
                }
                if y.num.is_empty() {
                    return a.clone();
                }
                if x.den == y.den {
                    let num = upoly::add(k, &x.num, &y.num);
                    return rat_normalize(k, num, x.den.clone());
                }
                let num = upoly::add(k, &upoly::mul(k, &x.num, &y.den), &upoly::mul(k, &y.num, &x.den));
                let den = upoly::mul(k, &x.den, &y.den);
                rat_normalize(k, num, den)
            }
            _ => panic!("add: value kinds disagree"),
        }
    }

    pub fn add_assign(&self, a: &mut Value, b: &Value) {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => *x += y,
            (Value::P(x), Value::P(y)) => *x = (*x + y) % self.characteristic(),
            (Value::Ext(x), Value::Ext(y)) => {
                let p = self.parent().unwrap();
                for (u, v) in x.iter_mut().zip(y) {
                    p.add_assign(u, v);
                }
            }
            (a, b) => *a = self.add(a, b),
        }
    }

    pub fn sub_assign(&self, a: &mut Value, b: &Value) {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => *x -= y,
            (Value::P(x), Value::P(y)) => {
                let p = self.characteristic();
                *x = (*x + p - y) % p
            }
            (Value::Ext(x), Value::Ext(y)) => {
                let p = self.parent().unwrap();
                for (u, v) in x.iter_mut().zip(y) {
                    p.sub_assign(u, v);
                }
            }
            (a, b) => *a = self.sub(a, b),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Q(x) => Value::Q(-x),
            Value::P(x) => {
                let p = self.characteristic();
                Value::P((p - x) % p)
            }
            Value::Ext(v) => {
                let p = self.parent().unwrap();
                Value::Ext(v.iter().map(|c| p.neg(c)).collect())
            }
            Value::Rat(r) => {
                let k = self.parent().unwrap();
                Value::Rat(Box::new(RatFn {
                    num: upoly::neg(k, &r.num),
                    den: r.den.clone(),
                }))
            }
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x - y),
            (Value::P(x), Value::P(y)) => {
                let p = self.characteristic();
                Value::P((x + p - y) % p)
            }
            (Value::Ext(x), Value::Ext(y)) => {
                let p = self.parent().unwrap();
                Value::Ext(x.iter().zip(y).map(|(u, v)| p.sub(u, v)).collect())
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x * y),
            (Value::P(x), Value::P(y)) => {
                let p = self.characteristic() as u128;
                Value::P(((*x as u128 * *y as u128) % p) as u64)
            }
            (Value::Ext(x), Value::Ext(y)) => {
                let p = self.parent().unwrap();
                let n = x.len();
                let xc = x[1..].iter().all(|c| p.is_zero(c));
                if xc {
                    return Value::Ext(y.iter().map(|c| p.mul(&x[0], c)).collect());
                }
                let yc = y[1..].iter().all(|c| p.is_zero(c));
                if yc {
                    return Value::Ext(x.iter().map(|c| p.mul(c, &y[0])).collect());
                }
                let m = self.modulus().unwrap();
                let prod = upoly::mul(p, x, y);
                let mut r = upoly::rem_monic(p, &prod, m);
                r.resize(n, p.zero());
                Value::Ext(r)
            }
            (Value::Rat(x), Value::Rat(y)) => {
                let k = self.parent().unwrap();
                if x.num.is_empty() || y.num.is_empty() {
                    return self.zero();
                }
                let one_den = |r: &RatFn| r.den.len() == 1;
                if one_den(x) && one_den(y) {
                    return Value::Rat(Box::new(RatFn {
                        num: upoly::mul(k, &x.num, &y.num),
                        den: x.den.clone(),
                    }));
                }
                let g1 = upoly::gcd(k, &x.num, &y.den).expect("constant field arithmetic");
                let g2 = upoly::gcd(k, &y.num, &x.den).expect("constant field arithmetic");
                let n1 = exact_div(k, &x.num, &g1);
                let d2 = exact_div(k, &y.den, &g1);
                let n2 = exact_div(k, &y.num, &g2);
                let d1 = exact_div(k, &x.den, &g2);
                Value::Rat(Box::new(RatFn {
                    num: upoly::mul(k, &n1, &n2),
                    den: upoly::mul(k, &d1, &d2),
                }))
            }
            _ => panic!("mul: value kinds disagree"),
        }
    }

    pub fn square(&self, a: &Value) -> Value {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero or for a zero divisor in an
    /// extension whose defining polynomial turned out reducible.
    pub fn try_inv(&self, a: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Value::Q(x) => Some(Value::Q(x.recip())),
            Value::P(x) => inv_mod(*x, self.characteristic()).map(Value::P),
            Value::Ext(x) => {
                let p = self.parent().unwrap();
                let n = x.len();
                if x[1..].iter().all(|c| p.is_zero(c)) {
                    let c = p.try_inv(&x[0])?;
                    let mut v = vec![p.zero(); n];
                    v[0] = c;
                    return Some(Value::Ext(v));
                }
                let m = self.modulus().unwrap();
                let mut xp = x.clone();
                upoly::trim(p, &mut xp);
                let (g, s, _) = upoly::xgcd(p, &xp, m).ok()?;
                if g.len() != 1 {
                    return None;
                }
                let mut s = upoly::rem_monic(p, &s, m);
                s.resize(n, p.zero());
                Some(Value::Ext(s))
            }
            Value::Rat(r) => {
                let k = self.parent().unwrap();
                let lc = k.try_inv(r.num.last().unwrap())?;
                Some(Value::Rat(Box::new(RatFn {
                    num: upoly::scale(k, &lc, &r.den),
                    den: upoly::scale(k, &lc, &r.num),
                })))
            }
        }
    }

    /// Inverse of a nonzero element; fails on a zero divisor.
    pub fn inv(&self, a: &Value) -> Result<Value> {
        if self.is_zero(a) {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        self.try_inv(a).ok_or(Error::ZeroDivisor)
    }

    pub fn try_div(&self, a: &Value, b: &Value) -> Option<Value> {
        self.try_inv(b).map(|i| self.mul(a, &i))
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // ---- coordinates over the base ----

    /// Coordinates over [`Field::base`], flattened with the top generator slowest.
    pub fn to_base_coords(&self, a: &Value) -> Vec<Value> {
        match (&self.0.kind, a) {
            (Kind::Extension { parent, .. }, Value::Ext(v)) => {
                let mut out = Vec::with_capacity(self.degree_over_base());
                for c in v {
                    out.extend(parent.to_base_coords(c));
                }
                out
            }
            _ => vec![a.clone()],
        }
    }

    pub fn from_base_coords(&self, c: &[Value]) -> Value {
        match &self.0.kind {
            Kind::Extension { parent, modulus, .. } => {
                let m = parent.degree_over_base();
                let n = modulus.len() - 1;
                assert_eq!(c.len(), m * n, "coordinate length mismatch");
                Value::Ext((0..n).map(|k| parent.from_base_coords(&c[k * m..(k + 1) * m])).collect())
            }
            _ => {
                assert_eq!(c.len(), 1, "coordinate length mismatch");
                c[0].clone()
            }
        }
    }

    /// The base-basis element with a single unit coordinate.
    pub fn basis_element(&self, idx: usize) -> Value {
        let b = self.base();
        let mut c = vec![b.zero(); self.degree_over_base()];
        c[idx] = b.one();
        self.from_base_coords(&c)
    }

    pub fn base_basis(&self) -> Vec<Value> {
        (0..self.degree_over_base()).map(|i| self.basis_element(i)).collect()
    }

    // ---- rational-function helpers ----

    /// Builds `num/den` in a rational-function layer.
    pub fn rat(&self, num: Vec<Value>, den: Vec<Value>) -> Result<Value> {
        match &self.0.kind {
            Kind::Function { constants, .. } => {
                let mut d = den;
                upoly::trim(constants, &mut d);
                if d.is_empty() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                Ok(rat_normalize(constants, num, d))
            }
            _ => Err(Error::Invalid("not a rational-function layer".into())),
        }
    }

    /// Element of an extension layer from coordinates over its parent.
    pub fn ext(&self, coords: Vec<Value>) -> Result<Value> {
        match &self.0.kind {
            Kind::Extension { parent, modulus, .. } => {
                let mut c = coords;
                upoly::trim(parent, &mut c);
                let mut r = upoly::rem_monic(parent, &c, modulus);
                r.resize(modulus.len() - 1, parent.zero());
                Ok(Value::Ext(r))
            }
            _ => Err(Error::Invalid("not an extension layer".into())),
        }
    }

    // ---- printing ----

    pub fn fmt_value(&self, a: &Value) -> String {
        match (&self.0.kind, a) {
            (Kind::Rationals, Value::Q(x)) => x.to_string(),
            (Kind::Prime(_), Value::P(x)) => x.to_string(),
            (Kind::Extension { parent, var, .. }, Value::Ext(v)) => {
                fmt_poly(parent, v, var)
            }
            (Kind::Function { constants, var }, Value::Rat(r)) => {
                let n = fmt_poly(constants, &r.num, var);
                if r.den.len() == 1 {
                    n
                } else {
                    format!("({})/({})", n, fmt_poly(constants, &r.den, var))
                }
            }
            _ => format!("{a:?}"),
        }
    }

    /// A short description of the tower, bottom to top.
    pub fn describe(&self) -> String {
        match &self.0.kind {
            Kind::Rationals => "Q".into(),
            Kind::Prime(p) => format!("F_{p}"),
            Kind::Extension { parent, var, modulus } => format!(
                "{}[{}]/({})",
                parent.describe(),
                var,
                fmt_poly(parent, modulus, "x")
            ),
            Kind::Function { constants, var } => format!("{}({})", constants.describe(), var),
        }
    }
}

fn exact_div(k: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if b.len() == 1 && k.is_one(&b[0]) {
        return a.to_vec();
    }
    upoly::divrem(k, a, b).expect("constant field arithmetic").0
}

fn rat_normalize(k: &Field, num: Vec<Value>, den: Vec<Value>) -> Value {
    let mut num = num;
    upoly::trim(k, &mut num);
    if num.is_empty() {
        return Value::Rat(Box::new(RatFn {
            num,
            den: vec![k.one()],
        }));
    }
    let (mut num, mut den) = if den.len() == 1 {
        (num, den)
    } else {
        let g = upoly::gcd(k, &num, &den).expect("constant field arithmetic");
        if g.len() == 1 {
            (num, den)
        } else {
            (exact_div(k, &num, &g), exact_div(k, &den, &g))
        }
    };
    let lc = den.last().unwrap().clone();
    if !k.is_one(&lc) {
        let inv = k.try_inv(&lc).expect("constant field arithmetic");
        num = upoly::scale(k, &inv, &num);
        den = upoly::scale(k, &inv, &den);
    }
    Value::Rat(Box::new(RatFn { num, den }))
}

/// Human-readable polynomial with coefficients over `f`.
pub fn fmt_poly(f: &Field, coeffs: &[Value], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let cs = f.fmt_value(c);
        let simple = !cs.contains(['+', ' ']) && !cs[1..].contains('-');
        let cs = if simple { cs } else { format!("({cs})") };
        let t = match i {
            0 => cs,
            _ => {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if f.is_one(c) {
                    mono
                } else if cs == "-1" {
                    format!("-{mono}")
                } else {
                    format!("{cs}*{mono}")
                }
            }
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Field element bundled with its field handle; convenient for tests and fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub field: Field,
    pub value: Value,
}

impl Elem {
    pub fn new(field: &Field, value: Value) -> Elem {
        Elem {
            field: field.clone(),
            value,
        }
    }
    pub fn int(field: &Field, n: i64) -> Elem {
        Elem::new(field, field.from_i64(n))
    }
    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
    pub fn pow(&self, e: u64) -> Elem {
        Elem::new(&self.field, self.field.pow(&self.value, e))
    }
    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem::new(&self.field, self.field.inv(&self.value)?))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_value(&self.value))
    }
}

macro_rules! elem_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl std::ops::$tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                debug_assert!(self.field == rhs.field);
                Elem::new(&self.field, self.field.$op(&self.value, &rhs.value))
            }
        }
        impl std::ops::$tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                (&self).$m(&rhs)
            }
        }
    };
}
elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::new(&self.field, self.field.neg(&self.value))
    }
}

/// Converts a rational value to a `BigRational` when it lies in the prime field of Q.
pub fn value_as_rational(f: &Field, a: &Value) -> Option<BigRational> {
    if f.characteristic() != 0 || !f.is_rational_constant(a) {
        return None;
    }
    match a {
        Value::Q(x) => Some(x.clone()),
        Value::Ext(v) => value_as_rational(f.parent().unwrap(), &v[0]),
        Value::Rat(r) => {
            let c = f.parent().unwrap();
            match r.num.first() {
                None => Some(BigRational::zero()),
                Some(x) => value_as_rational(c, x),
            }
        }
        Value::P(_) => None,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn q_sqrt2_sqrt3() -> Field {
        let q = q();
        let a = Field::extension_unchecked(&q, "a", vec![q.from_i64(-2), q.zero(), q.one()]).unwrap();
        Field::extension_unchecked(&a, "b", vec![a.from_i64(-3), a.zero(), a.one()]).unwrap()
    }

    #[test]
    fn gaussian_unit() {
        let q = q();
        let qi = Field::extension_unchecked(&q, "i", vec![q.one(), q.zero(), q.one()]).unwrap();
        let i = qi.generator().unwrap();
        assert_eq!(qi.mul(&i, &i), qi.from_i64(-1));
        assert_eq!(qi.inv(&i).unwrap(), qi.neg(&i));
        assert_eq!(qi.fmt_value(&qi.add(&i, &qi.one())), "i + 1");
    }

    #[test]
    fn rational_functions_are_canonical() {
        let qt = Field::function_field(&q(), "t").unwrap();
        let t = qt.generator().unwrap();
        let num = qt.sub(&qt.mul(&t, &t), &qt.one());
        let den = qt.sub(&t, &qt.one());
        assert_eq!(qt.div(&num, &den).unwrap(), qt.add(&t, &qt.one()));
        let half = qt.div(&qt.one(), &qt.from_i64(2)).unwrap();
        assert_eq!(qt.add(&half, &half), qt.one());
    }

    #[test]
    fn extension_over_function_field() {
        let qt = Field::function_field(&q(), "t").unwrap();
        let t = qt.generator().unwrap();
        let l = Field::extension_unchecked(&qt, "z", vec![qt.neg(&t), qt.zero(), qt.one()]).unwrap();
        let z = l.generator().unwrap();
        assert_eq!(l.mul(&z, &z), l.embed_from(&qt, &t));
        let zi = l.inv(&z).unwrap();
        assert!(l.is_one(&l.mul(&z, &zi)));
        assert_eq!(l.degree_over_base(), 2);
        assert_eq!(l.generators().len(), 2);
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(Field::prime(9).is_err());
        let f = Field::prime(11).unwrap();
        for a in 1..11 {
            let x = f.from_i64(a);
            assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
        }
    }

    fn tower_elem() -> impl Strategy<Value = [i64; 4]> {
        [-5i64..6, -5i64..6, -5i64..6, -5i64..6]
    }

    fn build(f: &Field, c: [i64; 4]) -> Value {
        let q = q();
        f.from_base_coords(&c.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>())
    }

    proptest! {
        #[test]
        fn tower_field_axioms(x in tower_elem(), y in tower_elem(), z in tower_elem()) {
            let f = q_sqrt2_sqrt3();
            let (a, b, c) = (build(&f, x), build(&f, y), build(&f, z));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            prop_assert_eq!(build(&f, x), f.from_base_coords(&f.to_base_coords(&a)));
        }

        #[test]
        fn rational_function_inverse(n in proptest::collection::vec(-3i64..4, 1..4), d in proptest::collection::vec(-3i64..4, 1..4)) {
            let q = q();
            let qt = Field::function_field(&q, "t").unwrap();
            let num: Vec<Value> = n.iter().map(|&x| q.from_i64(x)).collect();
            let den: Vec<Value> = d.iter().map(|&x| q.from_i64(x)).collect();
            if let Ok(a) = qt.rat(num, den) {
                if !qt.is_zero(&a) {
                    prop_assert!(qt.is_one(&qt.mul(&a, &qt.inv(&a).unwrap())));
                    prop_assert_eq!(qt.sub(&qt.add(&a, &a), &a), a);
                }
            }
        }
    }
}
