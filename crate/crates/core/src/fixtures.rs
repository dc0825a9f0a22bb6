//! Explicit towers used by tests, the acceptance suite and the command line.
//!
//! Each constructor returns the fields together with a root pool large enough
//! to split every polynomial the analyses meet on that tower.

use crate::error::Result;
use crate::fields::{extend, SplitContext};
use crate::hopf::{HopfAlgebra, Representation};
use crate::kernel::{Field, Matrix, Poly, Value};

fn poly(f: &Field, c: Vec<Value>) -> Poly {
    Poly::new(f, c)
}

/// `Q(i)` for `m = 2`, `Q(ζ₃)` for `m = 3`, with a primitive `m`-th root.
pub fn cyclotomic(m: usize) -> Result<(Field, Value)> {
    let q = Field::rationals();
    match m {
        2 => {
            let k = extend(&q, "i", &Poly::from_i64s(&q, &[1, 0, 1]))?;
            let minus_one = k.from_i64(-1);
            Ok((k, minus_one))
        }
        3 => {
            let k = extend(&q, "w3", &Poly::from_i64s(&q, &[1, 1, 1]))?;
            let z = k.generator().unwrap();
            Ok((k, z))
        }
        _ => Err(crate::Error::Invalid(format!("no cyclotomic constants for m = {m}"))),
    }
}

/// The tower attached to the generalized Taft algebra with `n = 2`:
/// `B = k(u)`, `L = B[z]/((z^m + 1)² − u)`, and the closure
/// `E = L[w]/(w^m + z^m + 2)`, so that `(w^m + 1)² = u` as well.
#[derive(Clone, Debug)]
pub struct TaftTower {
    pub m: usize,
    /// The constants `k` carrying the primitive root `q`.
    pub constants: Field,
    pub q: Value,
    pub base: Field,
    pub l: Field,
    pub e: Field,
    /// The `2m` roots of `(x^m + 1)² − u` in `E`.
    pub pool: Vec<Value>,
}

impl TaftTower {
    pub fn new(m: usize) -> Result<TaftTower> {
        let (k, q) = cyclotomic(m)?;
        let b = Field::function_field(&k, "u")?;
        let u = b.generator().unwrap();
        // (x^m + 1)^2 - u = x^{2m} + 2x^m + 1 - u
        let mut c = vec![b.zero(); 2 * m + 1];
        c[0] = b.sub(&b.one(), &u);
        c[m] = b.from_i64(2);
        c[2 * m] = b.one();
        let l = extend(&b, "z", &poly(&b, c))?;
        let z = l.generator().unwrap();
        let mut c = vec![l.zero(); m + 1];
        c[0] = l.add(&l.pow(&z, m as u64), &l.from_i64(2));
        c[m] = l.one();
        let e = extend(&l, "w", &poly(&l, c))?;
        let ze = e.embed_from(&l, &z);
        let w = e.generator().unwrap();
        let qe = e.embed_from(&k, &q);
        let mut pool = Vec::new();
        for j in 0..m as u64 {
            let c = e.pow(&qe, j);
            pool.push(e.mul(&c, &ze));
            pool.push(e.mul(&c, &w));
        }
        Ok(TaftTower {
            m,
            constants: k,
            q,
            base: b,
            l,
            e,
            pool,
        })
    }

    pub fn z(&self) -> Value {
        self.l.generator().unwrap()
    }

    /// `u` embedded in `L`.
    pub fn u(&self) -> Value {
        self.l.embed_from(&self.base, &self.base.generator().unwrap())
    }

    pub fn context(&self) -> SplitContext {
        SplitContext::with_pool(&self.e, self.pool.clone())
    }
}

/// `L = Q(s)[t]/(t² − s)`, the quadratic layer shared by the base-change
/// examples.
pub fn quadratic_over_qs() -> Result<Field> {
    let q = Field::rationals();
    let k = Field::function_field(&q, "s")?;
    let s = k.generator().unwrap();
    extend(&k, "t", &poly(&k, vec![k.neg(&s), k.zero(), k.one()]))
}

/// A degree four non-normal extension and its closure:
/// `E₁ = L[u]/(u² − 1 − t)` over `L = Q(s)[t]/(t² − s)`, and
/// `E' = E₁[w]/(w² − 1 + t)`. The regular bimodule of `E₁` over `Q(s)` is
/// weakly Galois but not split.
#[derive(Clone, Debug)]
pub struct NonSplitTower {
    pub l: Field,
    pub e1: Field,
    pub closure: Field,
    /// `±t, ±u, ±w` in the closure.
    pub pool: Vec<Value>,
}

impl NonSplitTower {
    pub fn new() -> Result<NonSplitTower> {
        let l = quadratic_over_qs()?;
        let t = l.generator().unwrap();
        let e1 = extend(&l, "u", &poly(&l, vec![l.sub(&l.from_i64(-1), &t), l.zero(), l.one()]))?;
        let te = e1.embed_from(&l, &t);
        let closure = extend(&e1, "w", &poly(&e1, vec![e1.sub(&te, &e1.one()), e1.zero(), e1.one()]))?;
        let u = closure.embed_from(&e1, &e1.generator().unwrap());
        let w = closure.generator().unwrap();
        let tc = closure.embed_from(&l, &t);
        let pool = vec![
            tc.clone(),
            closure.neg(&tc),
            u.clone(),
            closure.neg(&u),
            w.clone(),
            closure.neg(&w),
        ];
        Ok(NonSplitTower { l, e1, closure, pool })
    }

    pub fn context(&self) -> SplitContext {
        SplitContext::with_pool(&self.closure, self.pool.clone())
    }
}

/// `E = L[v]/(v² − 1 − s)` over `L = Q(s)[t]/(t² − s)`: normal over `Q(s)`
/// with group `(Z/2)²`. Returns `L`, `E` and split contexts for both.
pub fn separable_base_change() -> Result<(Field, Field, SplitContext, SplitContext)> {
    let l = quadratic_over_qs()?;
    let t = l.generator().unwrap();
    let s = l.embed_from(&l.base(), &l.base().generator().unwrap());
    let e = extend(&l, "v", &poly(&l, vec![l.sub(&l.from_i64(-1), &s), l.zero(), l.one()]))?;
    let te = e.embed_from(&l, &t);
    let v = e.generator().unwrap();
    let ctx_l = SplitContext::with_pool(&l, vec![t.clone(), l.neg(&t)]);
    let ctx_e = SplitContext::with_pool(&e, vec![te.clone(), e.neg(&te), v.clone(), e.neg(&v)]);
    Ok((l, e, ctx_l, ctx_e))
}

/// `F_p(t)[u]/(u^p − t)`, purely inseparable of degree `p`.
pub fn nonsem(p: u64) -> Result<Field> {
    let fp = Field::prime(p)?;
    let k = Field::function_field(&fp, "t")?;
    let t = k.generator().unwrap();
    let mut c = vec![k.zero(); p as usize + 1];
    c[0] = k.neg(&t);
    c[p as usize] = k.one();
    extend(&k, "u", &poly(&k, c))
}

/// `F_p(t)[u, w]` with `u^p = t` and `w^p = u`.
pub fn jacobson_tower(p: u64) -> Result<Field> {
    let l1 = nonsem(p)?;
    let u = l1.generator().unwrap();
    let mut c = vec![l1.zero(); p as usize + 1];
    c[0] = l1.neg(&u);
    c[p as usize] = l1.one();
    extend(&l1, "w", &poly(&l1, c))
}

/// `Q(ω)(c)` with `ω² + ω + 1 = 0` and `c³ = 2`: normal over `Q` with group `S₃`.
pub fn cube_root_closure() -> Result<Field> {
    let q = Field::rationals();
    let k = extend(&q, "om", &Poly::from_i64s(&q, &[1, 1, 1]))?;
    extend(&k, "c", &Poly::from_i64s(&k, &[-2, 0, 0, 1]))
}

/// `Q(c)` with `c³ = 2` and its closure `Q(c)(ω)`, with the roots of `x³ − 2`
/// and of `x² + x + 1` in the closure.
pub fn cube_root_non_normal() -> Result<(Field, Field, Vec<Value>)> {
    let q = Field::rationals();
    let l = extend(&q, "c", &Poly::from_i64s(&q, &[-2, 0, 0, 1]))?;
    let e = extend(&l, "om", &Poly::from_i64s(&l, &[1, 1, 1]))?;
    let c = e.embed_from(&l, &l.generator().unwrap());
    let om = e.generator().unwrap();
    let om2 = e.mul(&om, &om);
    let pool = vec![
        c.clone(),
        e.mul(&om, &c),
        e.mul(&om2, &c),
        om.clone(),
        om2,
    ];
    Ok((l, e, pool))
}

/// `Nichols16` acting on `Mat₄ = End(k² ⊕ k²)`: `g = diag(1, −1)`, and the
/// three odd generators act by off-diagonal blocks `1`, `X`, `Y` for a pair
/// `X, Y` with scalar common centralizer.
pub fn nichols_generic_rep(h: &HopfAlgebra) -> Result<Representation> {
    let q = h.field();
    let n = 2;
    let x = Matrix::from_i64(q, &[vec![0, 1], vec![1, 1]]);
    let y = Matrix::from_i64(q, &[vec![1, 0], vec![0, 0]]);
    let block = |c: &Matrix| {
        let mut m = Matrix::zeros(q, 2 * n, 2 * n);
        for r in 0..n {
            for s in 0..n {
                m.set(r, n + s, c.get(r, s).clone());
            }
        }
        m
    };
    let mut g = Matrix::identity(q, 2 * n);
    for r in n..2 * n {
        g.set(r, r, q.from_i64(-1));
    }
    let gens = vec![g, block(&Matrix::identity(q, n)), block(&x), block(&y)];
    Representation::from_generators(h, 2 * n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::{characters, classify, is_galois, is_weakly_galois, split_analysis, Bimodule};
    use crate::fields::{automorphisms, min_poly_over, Subfield};
    use crate::Error;

    #[test]
    fn taft_tower_degrees() {
        let t = TaftTower::new(2).unwrap();
        assert_eq!(t.l.degree_over_base(), 4);
        assert_eq!(t.e.degree_over_base(), 8);
        assert_eq!(t.pool.len(), 4);
        // every pool element is a root of (x^2 + 1)^2 - u
        let u = t.e.embed_from(&t.base, &t.base.generator().unwrap());
        for r in &t.pool {
            let s = t.e.add(&t.e.mul(r, r), &t.e.one());
            assert_eq!(t.e.mul(&s, &s), u);
        }
        let mu = min_poly_over(&t.z(), &Subfield::base_of(&t.l)).unwrap();
        let b = t.base.clone();
        let ub = b.generator().unwrap();
        assert_eq!(
            mu,
            Poly::new(&b, vec![b.sub(&b.one(), &ub), b.zero(), b.from_i64(2), b.zero(), b.one()])
        );
    }

    #[test]
    fn taft_regular_bimodule_is_not_split() {
        let t = TaftTower::new(2).unwrap();
        let ctx = t.context();
        let p = Bimodule::regular_over(&Subfield::base_of(&t.l)).unwrap();
        assert_eq!(p.center().unwrap().degree_over_base(), 1);
        let sa = split_analysis(&p, &ctx).unwrap();
        assert_eq!(sa.group.order(), 8);
        assert!(!sa.group.group().is_abelian());
        assert!(sa.group.group().splits_over_elementary_abelian(4));
        assert_eq!(sa.gal_over_l.len(), 2);
        assert!(!sa.is_split);
        assert_eq!(classify(&p, &ctx).unwrap().r, 1);
    }

    #[test]
    fn nonsplit_base_change_fixture() {
        let f = NonSplitTower::new().unwrap();
        let p = Bimodule::regular_over(&Subfield::base_of(&f.e1)).unwrap();
        let sa = split_analysis(&p, &f.context()).unwrap();
        assert!(!sa.is_split);
        assert_eq!(sa.group.order(), 8);
        assert_eq!(sa.gal_over_l.len(), 2);
        assert!(!sa.group.group().is_normal(&sa.gal_over_l));
        assert!(is_weakly_galois(&p, &f.context()).unwrap().weakly_galois);
        // without the closure the eigenvalues ±w are missing
        let u = f.e1.generator().unwrap();
        let short = SplitContext::with_pool(&f.e1, vec![u.clone(), f.e1.neg(&u)]);
        assert!(matches!(characters(&p, &short), Err(Error::EigenvalueOutsideField(_))));
    }

    #[test]
    fn separable_base_change_multiplies_the_group() {
        // P(n, L, G) with n = (1, 2), G = Gal(L/Q(s)); after base change to a
        // normal E the factors are the twists by Aut(E/Q(s)) with n(g|_L)
        let (l, e, ctx_l, ctx) = separable_base_change().unwrap();
        let gl = automorphisms(&l, None, &ctx_l).unwrap();
        let p = Bimodule::p_n_l_g(&[1, 2], &gl).unwrap();
        let ge = automorphisms(&e, None, &ctx).unwrap();
        assert_eq!(ge.order(), gl.order() * 2);
        let pe = p.base_change(&e).unwrap();
        let ch = characters(&pe, &ctx).unwrap();
        assert_eq!(ch.entries().len(), ge.order());
        let into_e = crate::fields::Morphism::layer_inclusion(&l, &e);
        for g in ge.elements() {
            let restricted = g.compose(&into_e).unwrap();
            let n = if restricted.images() == into_e.images() { 1 } else { 2 };
            assert_eq!(ch.multiplicity(g), n);
        }
        let sa = split_analysis(&pe, &ctx).unwrap();
        assert!(sa.is_split);
        assert_eq!(sa.group.order(), 4);
        assert!(!is_galois(&pe, &ctx).unwrap().galois);
    }

    #[test]
    fn nonsem_minimal_polynomial() {
        for p in [2u64, 3] {
            let l = nonsem(p).unwrap();
            let reg = Bimodule::regular_over(&Subfield::base_of(&l)).unwrap();
            let u = l.generator().unwrap();
            let t = l.embed_from(&l.base(), &l.base().generator().unwrap());
            let mut c = vec![l.zero(); p as usize + 1];
            c[0] = l.neg(&t);
            c[p as usize] = l.one();
            assert_eq!(reg.min_poly_right(&u).unwrap(), Poly::new(&l, c));
            assert!(!reg.phi(&u).is_semisimple().unwrap());
        }
    }

    #[test]
    fn cube_root_groups() {
        let l = cube_root_closure().unwrap();
        assert_eq!(automorphisms(&l, None, &SplitContext::new(&l)).unwrap().order(), 6);
        let (l, e, pool) = cube_root_non_normal().unwrap();
        let ctx = SplitContext::with_pool(&e, pool);
        let p = Bimodule::regular_over(&Subfield::base_of(&l)).unwrap();
        let sa = split_analysis(&p, &ctx).unwrap();
        assert_eq!(sa.group.order(), 6);
        assert_eq!(sa.gal_over_l.len(), 2);
        assert!(!sa.is_split);
    }
}
