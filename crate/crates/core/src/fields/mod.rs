//! Field towers, morphisms given on generators, subfields, automorphism groups
//! and splitting fields.

pub mod autgroup;
pub mod morphism;
pub mod primitive;
pub mod splitting;
pub mod subfield;

pub use autgroup::{automorphisms, closure, embeddings, closure_with_bound, fixed_field, AutomorphismGroup, DEFAULT_GROUP_BOUND};
pub use morphism::{is_transcendental, min_poly_over_base, Morphism};
pub use primitive::{Primitive, RelativeBasis};
pub use splitting::{splitting_field, splitting_field_with_cap, verify_splitting_field, SplitContext, SplittingField};
pub use subfield::{min_poly_over, Subfield, PRIMITIVE_BUDGET};

use crate::error::{Error, Result};
use crate::kernel::factor::factor_base_with_bound;
use crate::kernel::{Field, Kind, Poly};

/// Cap on the degree of a tower over its base.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Adjoins a root of the monic polynomial `f` over the top layer.
pub fn extend(tower: &Field, name: &str, f: &Poly) -> Result<Field> {
    extend_with_cap(tower, name, f, DEFAULT_DEGREE_CAP)
}

pub fn extend_with_cap(tower: &Field, name: &str, f: &Poly, cap: usize) -> Result<Field> {
    if f.field() != tower {
        return Err(Error::FieldMismatch);
    }
    let deg = f.degree().unwrap_or(0);
    if deg < 2 || !f.is_monic() {
        return Err(Error::Invalid("extension polynomial must be monic of degree at least 2".into()));
    }
    let total = tower.degree_over_base() * deg;
    if total > cap {
        return Err(Error::DegreeBound(format!("tower degree {total} exceeds cap {cap}")));
    }
    // irreducibility is decided where factorization is available, otherwise
    // it stays an obligation that surfaces as ZeroDivisor on use
    let decidable = !tower.has_transcendental()
        && (tower.characteristic() == 0 || matches!(tower.kind(), Kind::Prime(_)));
    if decidable {
        let factors = factor_base_with_bound(f, cap)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Reducible(f.to_string_var("x")));
        }
    }
    Field::extension_unchecked(tower, name, f.coeffs().to_vec())
}

/// `(separable degree, inseparable degree)` of a tower over its base, read off
/// from the moduli: a modulus `h(x^{p^e})` with `e` maximal contributes
/// `(deg h, p^e)`.
pub fn inseparable_degree(l: &Field) -> (usize, usize) {
    let p = l.characteristic() as usize;
    let mut sep = 1;
    let mut insep = 1;
    for layer in l.layers_above_base() {
        let modulus = layer.modulus().unwrap();
        let parent = layer.parent().unwrap();
        let deg = modulus.len() - 1;
        let mut q = 1;
        if p > 0 {
            while deg % (q * p) == 0
                && modulus
                    .iter()
                    .enumerate()
                    .all(|(i, c)| parent.is_zero(c) || i % (q * p) == 0)
            {
                q *= p;
            }
        }
        sep *= deg / q;
        insep *= q;
    }
    (sep, insep)
}

/// Separable and inseparable degree of `sub.ambient()` over a subfield.
pub fn inseparable_degree_over(sub: &Subfield) -> (usize, usize) {
    let (s1, i1) = inseparable_degree(sub.ambient());
    let (s2, i2) = inseparable_degree(sub.field());
    (s1 / s2, i1 / i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Value;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn qsqrt2() -> Field {
        extend(&q(), "a", &Poly::from_i64s(&q(), &[-2, 0, 1])).unwrap()
    }

    #[test]
    fn extend_basics() {
        let l = qsqrt2();
        assert_eq!(l.degree_over_base(), 2);
        assert!(matches!(
            extend(&q(), "a", &Poly::from_i64s(&q(), &[-4, 0, 1])),
            Err(Error::Reducible(_))
        ));
        // x^2 - 2 over Q(√2) is reducible
        let f = Poly::from_i64s(&l, &[-2, 0, 1]);
        assert!(matches!(extend(&l, "b", &f), Err(Error::Reducible(_))));
        let big = Poly::from_i64s(&q(), &[-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(extend(&q(), "a", &big), Err(Error::DegreeBound(_))));
    }

    #[test]
    fn purely_inseparable_layer_over_function_field() {
        let fp = Field::prime(3).unwrap();
        let k = Field::function_field(&fp, "t").unwrap();
        let t = k.generator().unwrap();
        let f = Poly::new(&k, vec![k.neg(&t), k.zero(), k.zero(), k.one()]);
        let l = extend(&k, "u", &f).unwrap();
        assert_eq!(l.degree_over_base(), 3);
        assert_eq!(inseparable_degree(&l), (1, 3));
        assert_eq!(inseparable_degree(&qsqrt2()), (2, 1));
    }

    #[test]
    fn conjugation_of_sqrt2() {
        let l = qsqrt2();
        let a = l.generator().unwrap();
        let s = Morphism::new(&l, &l, vec![l.neg(&a)]).unwrap();
        let x = l.add(&l.from_i64(3), &a);
        assert_eq!(s.apply(&x), l.sub(&l.from_i64(3), &a));
        assert!(s.compose(&s).unwrap().is_identity());
        assert!(matches!(Morphism::new(&l, &l, vec![l.one()]), Err(Error::NotAHomomorphism(_))));
        let g = closure(&l, &[s]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(fixed_field(&g).unwrap().degree_over_base(), 1);
    }

    #[test]
    fn sign_change_on_rational_functions() {
        let k = Field::function_field(&q(), "t").unwrap();
        let t = k.generator().unwrap();
        let s = Morphism::new(&k, &k, vec![k.neg(&t)]).unwrap();
        assert_eq!(closure(&k, &[s.clone()]).unwrap().order(), 2);
        // constants are not transcendental
        assert!(matches!(Morphism::new(&k, &k, vec![k.from_i64(2)]), Err(Error::NotAHomomorphism(_))));
        // Q(t) as a quadratic extension of Q(s), s = t²: the fixed field is the base
        let ks = Field::function_field(&q(), "s").unwrap();
        let s_gen = ks.generator().unwrap();
        let l = extend(&ks, "t", &Poly::new(&ks, vec![ks.neg(&s_gen), ks.zero(), ks.one()])).unwrap();
        let tt = l.generators()[1].clone();
        let neg = Morphism::new(&l, &l, vec![l.generators()[0].clone(), l.neg(&tt)]).unwrap();
        let g = closure(&l, &[neg]).unwrap();
        let fixed = fixed_field(&g).unwrap();
        assert_eq!(fixed.degree_over_base(), 1);
        assert!(fixed.contains(&l.square(&tt)).unwrap());
        assert!(!fixed.contains(&tt).unwrap());
        // on Q(t) itself the base is moved, so there is no finite fixed-field system
        let g0 = closure(&k, &[s]).unwrap();
        assert!(matches!(fixed_field(&g0), Err(Error::UnsupportedBase(_))));
    }

    #[test]
    fn cyclotomic_eight_fixed_field_by_hand() {
        // Oracle: the joint kernel of (σ_k - 1) for σ_k: ζ ↦ ζ^k, k = 3, 5, 7, is
        // spanned by 1, read off the 4x4 systems on the basis 1, ζ, ζ², ζ³.
        let l = extend(&q(), "z", &Poly::from_i64s(&q(), &[1, 0, 0, 0, 1])).unwrap();
        let z = l.generator().unwrap();
        let gens: Vec<Morphism> = [3u64, 5, 7]
            .iter()
            .map(|&k| Morphism::new(&l, &l, vec![l.pow(&z, k)]).unwrap())
            .collect();
        let g = closure(&l, &gens).unwrap();
        assert_eq!(g.order(), 4);
        let f = fixed_field(&g).unwrap();
        assert_eq!(f.field(), &q());
        assert_eq!(f.index() * f.degree_over_base(), 4);
        // the order-2 subgroup generated by ζ ↦ ζ^7 fixes ζ + ζ^7 = √2
        let h = closure(&l, &gens[2..]).unwrap();
        let f = fixed_field(&h).unwrap();
        assert_eq!(f.degree_over_base(), 2);
        let m = f.field().modulus().unwrap();
        assert_eq!(m, Poly::from_i64s(&q(), &[-2, 0, 1]).coeffs());
    }

    #[test]
    fn computed_splitting_fields() {
        let sf = splitting_field(&Poly::from_i64s(&q(), &[-2, 0, 1]), "r").unwrap();
        assert_eq!(sf.field.degree_over_base(), 2);
        assert_eq!(sf.roots.len(), 2);
        assert!(sf.minimality_verified);
        // x³ - 2 needs degree 6
        let f = Poly::from_i64s(&q(), &[-2, 0, 0, 1]);
        let sf = splitting_field(&f, "r").unwrap();
        assert_eq!(sf.field.degree_over_base(), 6);
        let fe = f.map(&sf.field, |c| sf.field.embed_from(&q(), c));
        for (r, m) in &sf.roots {
            assert_eq!(*m, 1);
            assert!(sf.field.is_zero(&fe.eval(r)));
        }
        let ctx = SplitContext::new(&sf.field);
        assert_eq!(automorphisms(&sf.field, None, &ctx).unwrap().order(), 6);
    }

    #[test]
    fn verification_mode_needs_all_roots() {
        let l = qsqrt2();
        let a = l.generator().unwrap();
        let ctx = SplitContext::with_pool(&l, vec![a.clone()]);
        let f = Poly::from_i64s(&q(), &[-2, 0, 1]);
        assert!(matches!(verify_splitting_field(&f, &ctx), Err(Error::EigenvalueOutsideField(_))));
        let ctx = SplitContext::with_pool(&l, vec![a.clone(), l.neg(&a)]);
        let sf = verify_splitting_field(&f, &ctx).unwrap();
        assert_eq!(sf.roots.len(), 2);
        assert!(!sf.minimality_verified);
    }

    fn elem_strategy(l: Field) -> impl Strategy<Value = Value> {
        proptest::collection::vec(-9i64..=9, l.degree_over_base()).prop_map(move |c| {
            let v: Vec<Value> = c.iter().map(|&x| l.base().from_i64(x)).collect();
            l.from_base_coords(&v)
        })
    }

    fn biquadratic() -> Field {
        let l1 = qsqrt2();
        extend(&l1, "b", &Poly::from_i64s(&l1, &[-3, 0, 1])).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn automorphisms_are_ring_maps(a in elem_strategy(biquadratic()), b in elem_strategy(biquadratic())) {
            let l = biquadratic();
            let g = automorphisms(&l, None, &SplitContext::new(&l)).unwrap();
            prop_assert_eq!(g.order(), 4);
            for s in g.elements() {
                prop_assert_eq!(s.apply(&l.mul(&a, &b)), l.mul(&s.apply(&a), &s.apply(&b)));
                prop_assert_eq!(s.apply(&l.add(&a, &b)), l.add(&s.apply(&a), &s.apply(&b)));
            }
        }

        #[test]
        fn closure_ignores_input_order(perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
            let l = extend(&q(), "z", &Poly::from_i64s(&q(), &[1, 0, 0, 0, 1])).unwrap();
            let z = l.generator().unwrap();
            let gens: Vec<Morphism> = [3u64, 5, 7]
                .iter()
                .map(|&k| Morphism::new(&l, &l, vec![l.pow(&z, k)]).unwrap())
                .collect();
            let shuffled: Vec<Morphism> = perm.iter().map(|&i| gens[i].clone()).collect();
            let a = closure(&l, &gens).unwrap();
            let b = closure(&l, &shuffled[..2]).unwrap();
            prop_assert_eq!(a.elements(), b.elements());
            prop_assert_eq!(a.group(), b.group());
        }

        #[test]
        fn fixed_field_degrees_multiply(k in 0usize..4) {
            let l = biquadratic();
            let g = automorphisms(&l, None, &SplitContext::new(&l)).unwrap();
            let h = closure(&l, &[g.element(k).clone()]).unwrap();
            let f = fixed_field(&h).unwrap();
            prop_assert_eq!(f.index() * f.degree_over_base(), 4);
            prop_assert_eq!(f.index(), h.order());
        }

        #[test]
        fn min_poly_over_subfield_vanishes(a in elem_strategy(biquadratic())) {
            let l = biquadratic();
            for sub in [Subfield::base_of(&l), Subfield::whole(&l)] {
                let mp = min_poly_over(&a, &sub).unwrap();
                prop_assert!(l.is_zero(&sub.inclusion().apply_poly(&mp).eval(&a)));
                prop_assert_eq!(sub.index() % mp.degree().unwrap(), 0);
            }
        }
    }
}
