use proptest::prelude::*;

use super::*;
use crate::coact::FieldCoaction;
use crate::fields::{automorphisms, extend, Subfield};
use crate::fixtures::{cube_root_non_normal, TaftTower};
use crate::hopf::taft;
use crate::kernel::Poly;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

/// `(1_A ∗ 1_B)(g) = #{(a, b) ∈ A × B : ab = g}`, by pair enumeration.
fn pair_count(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<i64> {
    let mut out = vec![0; g.order()];
    for &x in a {
        for &y in b {
            out[g.mul(x, y)] += 1;
        }
    }
    out
}

fn s3_with_transposition() -> (FiniteGroup, BTreeSet<usize>) {
    let g = FiniteGroup::symmetric(3);
    let t = (0..6).find(|&x| x != g.identity() && g.element_order(x) == 2).unwrap();
    let h = g.generated(&[t]);
    (g, h)
}

struct CubeRoot {
    ctx: SplitContext,
    ambient: AutomorphismGroup,
    /// `L ⊗_Q L` for `L = Q(∛2)`.
    x: Bimodule,
}

fn cube_root() -> CubeRoot {
    let (l, e, pool) = cube_root_non_normal().unwrap();
    let ctx = SplitContext::with_pool(&e, pool);
    let ambient = automorphisms(&e, None, &ctx).unwrap();
    assert_eq!(ambient.order(), 6);
    let x = Bimodule::regular_over(&Subfield::base_of(&l)).unwrap();
    CubeRoot { ctx, ambient, x }
}

#[test]
fn double_cosets_in_s3() {
    let (g, h) = s3_with_transposition();
    let dc = double_cosets(&g, &h).unwrap();
    assert_eq!(dc.len(), 2);
    let mut sizes: Vec<usize> = dc.iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 4]);
    assert_eq!(double_cosets(&g, &(0..6).collect()).unwrap().len(), 1);
    assert_eq!(double_cosets(&g, &set(&[g.identity()])).unwrap().len(), 6);
    let a3 = g.generated(&[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]);
    assert_eq!(double_cosets(&g, &a3).unwrap().len(), 2);
}

#[test]
fn double_cosets_reject_non_subgroups() {
    let g = FiniteGroup::cyclic(4);
    assert!(matches!(double_cosets(&g, &set(&[0, 1])), Err(Error::NotASubgroup(_))));
    assert!(matches!(double_cosets(&g, &set(&[0, 9])), Err(Error::NotASubgroup(_))));
}

#[test]
fn unit_is_two_sided() {
    let (g, h) = s3_with_transposition();
    let a = HeckeAlgebra::new(&g, &h).unwrap();
    let u = HeckeElement::unit(&a);
    for k in 0..a.dim() {
        let x = HeckeElement::indicator(&a, k);
        assert_eq!(u.convolve(&x).unwrap(), x);
        assert_eq!(x.convolve(&u).unwrap(), x);
    }
    assert_eq!(u.convolve(&u).unwrap(), u);
}

#[test]
fn indicator_products_match_pair_counts() {
    let (g, h) = s3_with_transposition();
    let a = HeckeAlgebra::new(&g, &h).unwrap();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = HeckeElement::indicator(&a, i).convolve(&HeckeElement::indicator(&a, j)).unwrap();
            let oracle = pair_count(&g, &a.cosets()[i], &a.cosets()[j]);
            let expect: Vec<BigRational> = oracle.iter().map(|&n| q(n, 1)).collect();
            assert_eq!(lhs.to_function(), expect);
        }
    }
}

#[test]
fn from_function_checks_biinvariance() {
    let (g, h) = s3_with_transposition();
    let a = HeckeAlgebra::new(&g, &h).unwrap();
    let mut f = vec![q(0, 1); 6];
    f[g.identity()] = q(1, 1);
    assert!(HeckeElement::from_function(&a, &f).is_err());
    for &x in &h {
        f[x] = q(1, 1);
    }
    assert_eq!(HeckeElement::from_function(&a, &f).unwrap().support(), h);
}

#[test]
fn cube_root_grothendieck_ring() {
    let cr = cube_root();
    let sa = split_analysis(&cr.x, &cr.ctx).unwrap();
    assert!(!sa.is_split);
    assert_eq!(class_of_bimodule(&sa).unwrap().to_function(), vec![q(1, 2); 6]);
    let x = class_in(&cr.ambient, &cr.x, &cr.ctx).unwrap();
    let a = x.algebra().clone();
    assert_eq!(a.subgroup().len(), 2);
    // every embedding of Q(∛2) occurs once: [X] = 1/2 everywhere
    assert!(x.to_function().iter().all(|v| *v == q(1, 2)));
    let unit = HeckeElement::unit(&a);
    let l = class_in(&cr.ambient, &Bimodule::trivial(cr.x.field(), 1), &cr.ctx).unwrap();
    assert_eq!(l, unit);
    // X = L ⊕ X₁ with [X₁] = (1/2)·1_C on the big double coset
    let x1 = x.sub(&unit).unwrap();
    let big = a.coset_of((0..6).find(|&g| !a.subgroup().contains(&g)).unwrap());
    assert_eq!(a.cosets()[big].len(), 4);
    assert_eq!(x1, HeckeElement::indicator(&a, big).scale(&q(1, 2)));
    // X₁ ⊗ X₁ = 2L + X₁
    let sq = x1.convolve(&x1).unwrap();
    assert_eq!(sq, unit.scale(&q(2, 1)).add(&x1).unwrap());
    // the fusion rules read off above give Λ = 3 with P = L + X₁ = X
    let n = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![2, 1]]];
    let fp = fp_eigenvector(&n, &[1, 2]).unwrap();
    assert_eq!(fp, FpEigenvector { lambda: 3, r: vec![1, 1], dim: 3 });
    assert_eq!(x.convolve(&x).unwrap(), x.scale(&q(3, 1)));
}

#[test]
fn tensor_compatibility_on_the_cube_root() {
    let cr = cube_root();
    let x = class_in(&cr.ambient, &cr.x, &cr.ctx).unwrap();
    let xx = class_in(&cr.ambient, &cr.x.tensor(&cr.x).unwrap(), &cr.ctx).unwrap();
    assert_eq!(x.convolve(&x).unwrap().coset_values(), xx.coset_values());
}

#[test]
fn tensor_compatibility_on_a_split_biquadratic() {
    let qq = Field::rationals();
    let a = extend(&qq, "a", &Poly::from_i64s(&qq, &[-2, 0, 1])).unwrap();
    let l = extend(&a, "b", &Poly::from_i64s(&a, &[-3, 0, 1])).unwrap();
    let ctx = SplitContext::new(&l);
    let g = automorphisms(&l, None, &ctx).unwrap();
    let p = Bimodule::p_n_l_g(&[1, 2, 1, 3], &g).unwrap();
    let r = Bimodule::p_n_l_g(&[2, 1, 1, 1], &g).unwrap();
    let cp = class_in(&g, &p, &ctx).unwrap();
    let cr = class_in(&g, &r, &ctx).unwrap();
    let cpr = class_in(&g, &p.tensor(&r).unwrap(), &ctx).unwrap();
    assert_eq!(cp.convolve(&cr).unwrap().coset_values(), cpr.coset_values());
    // with H trivial the class is the multiplicity function itself
    let mut vals: Vec<BigRational> = cp.to_function();
    vals.sort();
    assert_eq!(vals, vec![q(1, 1), q(1, 1), q(2, 1), q(3, 1)]);
}

#[test]
fn galois_idempotent_of_p_e_g() {
    let qq = Field::rationals();
    let l = extend(&qq, "a", &Poly::from_i64s(&qq, &[-2, 0, 1])).unwrap();
    let ctx = SplitContext::new(&l);
    let g = automorphisms(&l, None, &ctx).unwrap();
    let p = Bimodule::p_n_l_g(&[1, 1], &g).unwrap();
    let gi = galois_idempotent(&p, &ctx).unwrap();
    assert_eq!(gi.group_order, 2);
    assert_eq!(gi.h_order, 1);
    assert_eq!(gi.r, 1);
    assert!(gi.support_is_subgroup);
    assert!(gi.e.to_function().iter().all(|v| *v == q(1, 2)));
    let unbalanced = Bimodule::p_n_l_g(&[1, 2], &g).unwrap();
    assert!(matches!(galois_idempotent(&unbalanced, &ctx), Err(Error::NotIdempotent(_))));
}

#[test]
fn galois_idempotent_of_the_trivial_bimodule_is_the_unit() {
    let cr = cube_root();
    let p = Bimodule::trivial(cr.x.field(), 3);
    let gi = galois_idempotent(&p, &cr.ctx).unwrap();
    assert_eq!(gi.group_order, 2);
    assert_eq!(gi.r, 3);
    assert_eq!(gi.e, HeckeElement::unit(gi.e.algebra()));
}

#[test]
fn galois_idempotent_on_the_taft_tower() {
    let t = TaftTower::new(2).unwrap();
    let k = taft(&t.constants, t.m, 2, &t.q).unwrap();
    let mut img = vec![t.l.zero(); k.dim()];
    img[t.m] = t.z();
    img[1] = t.l.one();
    let c = FieldCoaction::new(&t.l, &k, vec![img]).unwrap();
    let p = c.bimodule().unwrap();
    let gi = galois_idempotent(&p, &t.context()).unwrap();
    assert_eq!(gi.d, 8);
    assert_eq!(gi.group_order, 8);
    assert_eq!(gi.h_order, 2);
    assert_eq!(gi.r, 2);
    assert!(gi.e.to_function().iter().all(|v| *v == q(1, 8)));
}

#[test]
fn fp_dimension_examples() {
    let one = |n: &[u64], d| fp_dimensions(n, d).unwrap();
    assert_eq!(one(&[1], 1), FpDimensions { squares: vec![q(1, 1)], integral: true });
    assert_eq!(one(&[1, 1], 2).squares, vec![q(1, 1), q(1, 1)]);
    assert_eq!(one(&[1, 2], 5).squares, vec![q(1, 1), q(4, 1)]);
    assert!(!one(&[1, 1], 3).integral);
    assert!(fp_dimensions(&[1, 0], 2).is_err());
}

#[test]
fn fp_eigenvector_of_a_group_ring() {
    // Z/3 with X_i X_j = X_{i+j}: Λ = 3, r = (1, 1, 1)
    let n: Vec<Vec<Vec<i64>>> = (0..3)
        .map(|i| (0..3).map(|j| (0..3).map(|k| ((i + j) % 3 == k) as i64).collect()).collect())
        .collect();
    let fp = fp_eigenvector(&n, &[1, 1, 1]).unwrap();
    assert_eq!(fp.r, vec![1, 1, 1]);
    assert_eq!(fp.dim, 3);
}

fn random_element(a: &Arc<HeckeAlgebra>, seed: &[i64]) -> HeckeElement {
    let v = (0..a.dim()).map(|k| q(seed[k % seed.len()] - 3, 1 + (k as i64 % 3))).collect();
    HeckeElement::from_coset_values(a, v).unwrap()
}

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::symmetric(4),
        FiniteGroup::cyclic(48),
        FiniteGroup::symmetric(3).product(&FiniteGroup::cyclic(8)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn convolution_is_associative(
        which in 0usize..3,
        gens in proptest::collection::vec(0usize..48, 0..3),
        s in proptest::collection::vec(0i64..7, 3..8),
    ) {
        let g = groups().swap_remove(which);
        let gens: Vec<usize> = gens.into_iter().map(|x| x % g.order()).collect();
        let h = g.generated(&gens);
        let a = HeckeAlgebra::new(&g, &h).unwrap();
        let x = random_element(&a, &s);
        let y = random_element(&a, &s[1..]);
        let z = random_element(&a, &s[2..]);
        let lhs = x.convolve(&y).unwrap().convolve(&z).unwrap();
        let rhs = x.convolve(&y.convolve(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let u = HeckeElement::unit(&a);
        prop_assert_eq!(u.convolve(&x).unwrap(), x.clone());
        // values of a product agree with brute force over G × G
        let fx = x.to_function();
        let fy = y.to_function();
        let mut brute = vec![BigRational::zero(); g.order()];
        for (s1, v1) in fx.iter().enumerate() {
            for (s2, v2) in fy.iter().enumerate() {
                brute[g.mul(s1, s2)] += v1 * v2;
            }
        }
        prop_assert_eq!(x.convolve(&y).unwrap().to_function(), brute);
    }
}
