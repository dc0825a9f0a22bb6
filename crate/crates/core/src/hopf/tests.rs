use proptest::prelude::*;

use super::*;
use crate::fixtures::cyclotomic;
use crate::group::FiniteGroup;
use crate::kernel::Field;

fn taft22() -> HopfAlgebra {
    let (k, q) = cyclotomic(2).unwrap();
    taft(&k, 2, 2, &q).unwrap()
}

/// Tensor `u ⊗ v` in `H ⊗ H`.
fn pure(h: &HopfAlgebra, u: &[Value], v: &[Value]) -> Vec<Value> {
    let f = h.field();
    let mut t = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            t.push(f.mul(a, b));
        }
    }
    t
}

fn add(h: &HopfAlgebra, u: &[Value], v: &[Value]) -> Vec<Value> {
    u.iter().zip(v).map(|(a, b)| h.field().add(a, b)).collect()
}

fn scale(h: &HopfAlgebra, c: &Value, u: &[Value]) -> Vec<Value> {
    u.iter().map(|a| h.field().mul(c, a)).collect()
}

#[test]
fn group_algebras_small() {
    let q = Field::rationals();
    let triv = group_algebra(&q, &FiniteGroup::cyclic(1)).unwrap();
    assert_eq!(triv.dim(), 1);
    let z2 = group_algebra(&q, &FiniteGroup::cyclic(2)).unwrap();
    assert!(z2.antipode().is_identity());
    let s3 = group_algebra(&q, &FiniteGroup::symmetric(3)).unwrap();
    assert_eq!(s3.dim(), 6);
    s3.verify().unwrap();
}

#[test]
fn derived_antipode_of_group_algebra_is_inversion() {
    let q = Field::rationals();
    let g = FiniteGroup::symmetric(3);
    let h = group_algebra(&q, &g).unwrap();
    let s = derive_antipode(h.algebra(), h.comult_table(), h.counit_vector()).unwrap();
    assert_eq!(&s, h.antipode());
    for a in 0..6 {
        let img = s.mul_vec(&h.algebra().basis(a));
        assert_eq!(img, h.algebra().basis(g.inv(a)));
    }
}

#[test]
fn dual_of_group_algebra_is_pointwise() {
    let q = Field::rationals();
    let g = FiniteGroup::symmetric(3);
    let fun = group_algebra(&q, &g).unwrap().dual().unwrap();
    for a in 0..6 {
        for b in 0..6 {
            let p = fun.algebra().mul_basis(a, b);
            let expect = if a == b { fun.algebra().basis(a) } else { fun.algebra().zero() };
            assert_eq!(p, expect);
        }
    }
    assert_eq!(fun.one(), vec![q.one(); 6]);
    assert!(fun.is_semisimple().unwrap());
}

#[test]
fn double_dual_of_taft_is_the_original() {
    let h = taft22();
    let dd = h.dual().unwrap().dual().unwrap();
    assert_eq!(dd.algebra().table(), h.algebra().table());
    assert_eq!(dd.comult_table(), h.comult_table());
    assert_eq!(dd.antipode(), h.antipode());
    assert_eq!(dd.algebra().names(), h.algebra().names());
    let p = h.pairing_matrix(&h.dual().unwrap()).unwrap();
    assert!(p.is_identity());
}

#[test]
fn taft_dimensions_and_independence() {
    let h = taft22();
    assert_eq!(h.dim(), 8);
    let (k3, w) = cyclotomic(3).unwrap();
    let h3 = taft(&k3, 3, 2, &w).unwrap();
    assert_eq!(h3.dim(), 18);
    for hh in [&h, &h3] {
        // regular representation matrices of the basis are independent
        let f = hh.field();
        let d = hh.dim();
        let cols: Vec<Vec<Value>> = (0..d)
            .map(|i| hh.algebra().left_mult_matrix(&hh.algebra().basis(i)).data().to_vec())
            .collect();
        assert_eq!(Matrix::from_columns(f, d * d, &cols).rank().unwrap(), d);
    }
}

#[test]
fn taft_rejects_non_primitive_roots() {
    let (k, _) = cyclotomic(2).unwrap();
    assert!(matches!(taft(&k, 2, 2, &k.one()), Err(Error::NotPrimitiveRoot(_))));
    let i = k.generator().unwrap();
    assert!(matches!(taft(&k, 2, 2, &i), Err(Error::NotPrimitiveRoot(_))));
}

#[test]
fn taft_coproduct_of_x_squared() {
    let h = taft22();
    let f = h.field();
    let g = h.element("g").unwrap();
    let x = h.element("x").unwrap();
    let x2 = h.mul(&x, &x);
    let g2 = h.mul(&g, &g);
    // x² ⊗ g² + (1 + q⁻¹) x ⊗ gx + 1 ⊗ x², and q = −1 kills the middle term
    let expect = add(&h, &pure(&h, &x2, &g2), &pure(&h, &h.one(), &x2));
    assert_eq!(h.comul(&x2), expect);
    // x² = g² − 1
    let g2m1 = add(&h, &g2, &scale(&h, &f.from_i64(-1), &h.one()));
    assert_eq!(x2, g2m1);
}

#[test]
fn taft_coproduct_middle_term_at_cube_root() {
    let (k, w) = cyclotomic(3).unwrap();
    let h = taft(&k, 3, 2, &w).unwrap();
    let f = h.field();
    let g = h.element("g").unwrap();
    let x = h.element("x").unwrap();
    let x2 = h.mul(&x, &x);
    let g2 = h.mul(&g, &g);
    let gx = h.mul(&g, &x);
    let c = f.add(&f.one(), &f.inv(&w).unwrap());
    let mut expect = add(&h, &pure(&h, &x2, &g2), &pure(&h, &h.one(), &x2));
    expect = add(&h, &expect, &scale(&h, &c, &pure(&h, &x, &gx)));
    assert_eq!(h.comul(&x2), expect);
    assert!(!f.is_zero(&c));
}

/// Δ extended from `Δ(g) = g ⊗ g`, `Δ(x) = x ⊗ g + 1 ⊗ x` along basis words.
fn coproduct_by_words(h: &HopfAlgebra) -> Vec<Vec<Value>> {
    let g = h.element("g").unwrap();
    let x = h.element("x").unwrap();
    let dg = pure(h, &g, &g);
    let dx = add(h, &pure(h, &x, &g), &pure(h, &h.one(), &x));
    h.words()
        .iter()
        .map(|w| {
            w.iter().fold(pure(h, &h.one(), &h.one()), |acc, &l| {
                h.algebra().tensor_mul(&acc, if l == 0 { &dg } else { &dx })
            })
        })
        .collect()
}

#[test]
fn taft_qbinomial_coproduct_matches_algebra_map() {
    let h = taft22();
    let (k3, w) = cyclotomic(3).unwrap();
    let h3 = taft(&k3, 3, 2, &w).unwrap();
    for hh in [&h, &h3] {
        let by_words = coproduct_by_words(hh);
        for (i, t) in by_words.iter().enumerate() {
            assert_eq!(&hh.comul(&hh.algebra().basis(i)), t, "basis {}", hh.algebra().names()[i]);
        }
    }
}

#[test]
fn taft_antipode_on_generators() {
    let h = taft22();
    let f = h.field();
    let g = h.element("g").unwrap();
    let x = h.element("x").unwrap();
    let g_inv = h.mul(&h.mul(&g, &g), &g);
    assert_eq!(h.apply_antipode(&g), g_inv);
    // S(x) g + x = 0
    let expect = scale(&h, &f.from_i64(-1), &h.mul(&x, &g_inv));
    assert_eq!(h.apply_antipode(&x), expect);
    assert!(!h.is_semisimple().unwrap());
}

#[test]
fn nichols_basics() {
    let q = Field::rationals();
    let h = nichols16(&q).unwrap();
    assert_eq!(h.dim(), 16);
    let g = h.element("g").unwrap();
    assert!(q.is_one(&h.counit(&g)));
    for i in 0..3 {
        let x = h.element(&format!("x{i}")).unwrap();
        assert!(q.is_zero(&h.counit(&x)));
        let expect = scale(&h, &q.from_i64(-1), &h.mul(&x, &g));
        assert_eq!(h.apply_antipode(&x), expect);
        assert_eq!(h.mul(&x, &x), h.algebra().zero());
    }
    assert_eq!(h.apply_antipode(&g), g);
    assert!(!h.is_semisimple().unwrap());
    let k = h.dual().unwrap();
    assert_eq!(k.dim(), 16);
}

#[test]
fn semisimplicity_of_group_algebras_depends_on_characteristic() {
    let q = Field::rationals();
    assert!(group_algebra(&q, &FiniteGroup::symmetric(3)).unwrap().is_semisimple().unwrap());
    let f2 = Field::prime(2).unwrap();
    assert!(!group_algebra(&f2, &FiniteGroup::cyclic(2)).unwrap().is_semisimple().unwrap());
}

#[test]
fn swap_action_invariants_are_the_diagonal() {
    let q = Field::rationals();
    let h = group_algebra(&q, &FiniteGroup::cyclic(2)).unwrap();
    let a = FinAlgebra::diagonal(&q, 2);
    let swap = Matrix::from_i64(&q, &[vec![0, 1], vec![1, 0]]);
    let act = ModuleAction::new(&h, &a, vec![Matrix::identity(&q, 2), swap]).unwrap();
    let inv = act.invariants().unwrap();
    assert_eq!(inv.len(), 1);
    assert_eq!(inv[0][0], inv[0][1]);
    let co = act.to_coaction().unwrap();
    assert_eq!(co.invariants().unwrap().len(), 1);
}

#[test]
fn trivial_action_gives_trivial_coaction() {
    let q = Field::rationals();
    let h = group_algebra(&q, &FiniteGroup::symmetric(3)).unwrap();
    let a = FinAlgebra::matrix_algebra(&q, 2);
    let co = ModuleAction::trivial(&h, &a).unwrap().to_coaction().unwrap();
    let triv = crate::coact::FinCoaction::trivial(&a, &h.dual().unwrap()).unwrap();
    assert_eq!(co.matrix(), triv.matrix());
}

#[test]
fn transpose_is_not_a_module_algebra_action() {
    let q = Field::rationals();
    let h = group_algebra(&q, &FiniteGroup::cyclic(2)).unwrap();
    let a = FinAlgebra::matrix_algebra(&q, 2);
    let mut t = Matrix::zeros(&q, 4, 4);
    for r in 0..2 {
        for c in 0..2 {
            t.set(c * 2 + r, r * 2 + c, q.one());
        }
    }
    assert!(matches!(
        ModuleAction::new(&h, &a, vec![Matrix::identity(&q, 4), t]),
        Err(Error::NotModuleAlgebra(_))
    ));
}

/// `π(g) = diag(1, −1)` in `N × N` blocks and `π(x_i) = E₁₂ ⊗ c_i` with
/// `c = (1, x, y)`.
#[test]
fn generic_pair_has_scalar_centralizer() {
    let q = Field::rationals();
    let x = Matrix::from_i64(&q, &[vec![0, 1], vec![1, 1]]);
    let y = Matrix::from_i64(&q, &[vec![1, 0], vec![0, 0]]);
    let a = FinAlgebra::matrix_algebra(&q, 2);
    let mut rows = Vec::new();
    for c in [&x, &y] {
        let v = c.data().to_vec();
        let m = a.right_mult_matrix(&v).sub(&a.left_mult_matrix(&v));
        for r in 0..4 {
            rows.push(m.row(r));
        }
    }
    let ker = Matrix::from_rows(&q, rows).kernel().unwrap();
    assert_eq!(ker.len(), 1);
}

#[test]
fn nichols_adjoint_invariants_are_scalars() {
    let q = Field::rationals();
    let h = nichols16(&q).unwrap();
    let rep = crate::fixtures::nichols_generic_rep(&h).unwrap();
    let act = adjoint_action(&rep).unwrap();
    let inv = act.invariants().unwrap();
    assert_eq!(inv.len(), 1);
    let v = &inv[0];
    let id = act.algebra().one();
    let c = v[0].clone();
    assert_eq!(v, &scale(&h, &c, &id));
    let co = act.to_coaction().unwrap();
    assert_eq!(co.invariants().unwrap().len(), 1);
}

fn elem(h: &HopfAlgebra, coeffs: &[i64]) -> Vec<Value> {
    coeffs.iter().map(|c| h.field().from_i64(*c)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn taft_structure_on_random_elements(
        a in proptest::collection::vec(-3i64..4, 8),
        b in proptest::collection::vec(-3i64..4, 8),
        c in proptest::collection::vec(-3i64..4, 8),
    ) {
        let h = taft22();
        let (u, v, w) = (elem(&h, &a), elem(&h, &b), elem(&h, &c));
        prop_assert_eq!(h.mul(&h.mul(&u, &v), &w), h.mul(&u, &h.mul(&v, &w)));
        prop_assert_eq!(h.comul(&h.mul(&u, &v)), h.algebra().tensor_mul(&h.comul(&u), &h.comul(&v)));
        // S is an anti-homomorphism
        prop_assert_eq!(
            h.apply_antipode(&h.mul(&u, &v)),
            h.mul(&h.apply_antipode(&v), &h.apply_antipode(&u))
        );
    }
}
